//! Model flows: suspensions, geodesic flows of closed hyperbolic surfaces and
//! of (2,3,n) triangle orbifolds, with their model monodromies and
//! Euler-characteristic arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{HyperbolicMatrix, Mat2};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Vertical flow on the mapping torus `M_A`.
    Suspension(HyperbolicMatrix),
    /// Geodesic flow on the unit tangent bundle of a closed genus-`genus` surface.
    GeodesicSurface { genus: u64 },
    /// Geodesic flow on the (2,3,n) orbifold: a sphere with cone points of
    /// orders 2, 3 and n.
    GeodesicOrbifold { n: u64 },
}

impl Model {
    pub fn surface(genus: u64) -> Result<Model> {
        let m = Model::GeodesicSurface { genus };
        m.validate()?;
        Ok(m)
    }

    pub fn orbifold(n: u64) -> Result<Model> {
        let m = Model::GeodesicOrbifold { n };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Model::Suspension(_) => Ok(()),
            Model::GeodesicSurface { genus } if genus < 2 => Err(Error::InvalidGenus(genus.into())),
            Model::GeodesicOrbifold { n } if n < 7 => Err(Error::InvalidOrbifold(n.into())),
            _ => Ok(()),
        }
    }

    pub fn is_geodesic(&self) -> bool {
        !matches!(self, Model::Suspension(_))
    }

    pub fn monodromy(&self) -> Option<&HyperbolicMatrix> {
        match self {
            Model::Suspension(m) => Some(m),
            _ => None,
        }
    }

    /// Underlying genus and cone orders of a geodesic model's base orbifold.
    pub fn signature(&self) -> Option<(u64, Vec<u64>)> {
        match *self {
            Model::Suspension(_) => None,
            Model::GeodesicSurface { genus } => Some((genus, Vec::new())),
            Model::GeodesicOrbifold { n } => Some((0, vec![2, 3, n])),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Suspension(m) => write!(f, "suspension:{m}"),
            Model::GeodesicSurface { genus } => write!(f, "surface:g={genus}"),
            Model::GeodesicOrbifold { n } => write!(f, "orbifold:2,3,{n}"),
        }
    }
}

/// `F_t = [[0,1],[-1,t]]`, the first-return map of the genus-one Birkhoff
/// section for the (2,3,t+4) orbifold.
pub fn orbifold_model_matrix(t: u64) -> Result<HyperbolicMatrix> {
    HyperbolicMatrix::new(Mat2::new(0, 1, -1, BigInt::from(t)))
}

/// `[[g, g+1], [g-1, g]]²`, the monodromy almost-equivalent to the geodesic
/// flow of a genus-`g` surface.
pub fn genus_model_matrix(g: u64) -> Result<HyperbolicMatrix> {
    if g < 2 {
        return Err(Error::InvalidGenus(g.into()));
    }
    let g = BigInt::from(g);
    let base = Mat2::new(g.clone(), &g + 1, &g - 1, g);
    HyperbolicMatrix::new(&base * &base)
}

/// `χ^orb = 2 − 2·genus − Σ (1 − 1/n_i)`.
pub fn orbifold_euler_characteristic(genus: u64, cone_orders: &[u64]) -> Result<BigRational> {
    if let Some(&bad) = cone_orders.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidArgument(format!("cone order {bad} is below 2")));
    }
    let one = BigRational::one();
    let base = BigRational::from(BigInt::from(2) - BigInt::from(2) * BigInt::from(genus));
    Ok(cone_orders.iter().fold(base, |chi, &n| {
        chi - (&one - BigRational::new(BigInt::one(), BigInt::from(n)))
    }))
}

/// Closed surface covering two surfaces, with the covering degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonCover {
    pub genus: u64,
    pub degree_first: u64,
    pub degree_second: u64,
}

/// Smallest common cover genus `lcm(g1−1, g2−1) + 1` of two closed surfaces.
pub fn common_cover_genus(g1: u64, g2: u64) -> Result<CommonCover> {
    for g in [g1, g2] {
        if g < 2 {
            return Err(Error::InvalidGenus(g.into()));
        }
    }
    let l = (g1 - 1).lcm(&(g2 - 1));
    Ok(CommonCover {
        genus: l + 1,
        degree_first: l / (g1 - 1),
        degree_second: l / (g2 - 1),
    })
}

/// Euler-characteristic data of a common surface cover of two geodesic
/// models' base orbifolds.
///
/// Arithmetic facts: `degree_i · χ_i = 2 − 2·cover_genus` and each degree is
/// a multiple of the lcm of that orbifold's cone orders. Existence of a
/// surface cover of such a degree is cited, not constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicCover {
    pub chi_first: BigRational,
    pub chi_second: BigRational,
    pub cover_genus: BigInt,
    pub degree_first: BigInt,
    pub degree_second: BigInt,
}

impl GeodesicCover {
    pub fn cover_chi(&self) -> BigInt {
        BigInt::from(2) - BigInt::from(2) * &self.cover_genus
    }
}

fn cone_lcm(orders: &[u64]) -> BigInt {
    orders
        .iter()
        .fold(BigInt::one(), |acc, &n| acc.lcm(&BigInt::from(n)))
}

/// Smallest-genus common cover data for two geodesic models.
pub fn geodesic_common_cover(first: &Model, second: &Model) -> Result<GeodesicCover> {
    let mut chis = Vec::new();
    let mut m = BigInt::one();
    for model in [first, second] {
        model.validate()?;
        let (genus, orders) = model.signature().ok_or_else(|| {
            Error::InvalidArgument(format!("{model} is not a geodesic model"))
        })?;
        let chi = orbifold_euler_characteristic(genus, &orders)?;
        // χ = −p/q; degree 2m·q/p must be a multiple of the cone lcm.
        let (p, q) = (-chi.numer(), chi.denom().clone());
        debug_assert!(p.is_positive());
        let need = &p * cone_lcm(&orders);
        m = m.lcm(&(&need / need.gcd(&(BigInt::from(2) * &q))));
        chis.push(chi);
    }
    let cover_chi = BigRational::from(BigInt::from(-2) * &m);
    let degree = |chi: &BigRational| (&cover_chi / chi).to_integer();
    Ok(GeodesicCover {
        degree_first: degree(&chis[0]),
        degree_second: degree(&chis[1]),
        chi_second: chis.pop().expect("two"),
        chi_first: chis.pop().expect("two"),
        cover_genus: m + 1,
    })
}

/// Checks the arithmetic recorded in a [`GeodesicCover`] against two models.
pub fn check_geodesic_cover(first: &Model, second: &Model, cover: &GeodesicCover) -> Result<(), String> {
    let mut checks = Vec::new();
    for (model, chi, degree) in [
        (first, &cover.chi_first, &cover.degree_first),
        (second, &cover.chi_second, &cover.degree_second),
    ] {
        let (genus, orders) = model
            .signature()
            .ok_or_else(|| format!("{model} is not a geodesic model"))?;
        let expected = orbifold_euler_characteristic(genus, &orders).map_err(|e| e.to_string())?;
        if *chi != expected {
            return Err(format!("χ of {model} is {expected}, not {chi}"));
        }
        if !degree.is_positive() {
            return Err(format!("degree over {model} must be positive"));
        }
        if !degree.is_multiple_of(&cone_lcm(&orders)) {
            return Err(format!("degree {degree} over {model} is not a multiple of its cone orders"));
        }
        checks.push(BigRational::from(degree.clone()) * chi);
    }
    if cover.cover_genus < BigInt::from(2) {
        return Err("cover genus must be at least 2".into());
    }
    let target = BigRational::from(cover.cover_chi());
    if checks.iter().any(|c| *c != target) {
        return Err(format!("degree·χ does not equal χ of the genus-{} cover", cover.cover_genus));
    }
    Ok(())
}
