//! Finite-index sublattices of Z² in Hermite normal form.
//!
//! A lattice is stored by its canonical column basis `(a, 0)`, `(b, d)` with
//! `a, d ≥ 1` and `0 ≤ b < a`, so two lattices are equal exactly when their
//! triples are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::mat::Mat2;
use crate::arith::divisors;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice2 {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl Lattice2 {
    /// Builds a lattice from an already-canonical triple.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (a, b, d) = (a.into(), b.into(), d.into());
        if !a.is_positive() || !d.is_positive() || b.is_negative() || b >= a {
            return Err(Error::InvalidArgument(format!(
                "({a},{b},{d}) is not a canonical lattice triple"
            )));
        }
        Ok(Lattice2 { a, b, d })
    }

    /// The full lattice Z².
    pub fn full() -> Self {
        Lattice2 {
            a: BigInt::from(1),
            b: BigInt::zero(),
            d: BigInt::from(1),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn index(&self) -> BigInt {
        &self.a * &self.d
    }

    pub fn triple(&self) -> (BigInt, BigInt, BigInt) {
        (self.a.clone(), self.b.clone(), self.d.clone())
    }

    /// Canonical basis as the columns of `[[a, b], [0, d]]`.
    pub fn basis(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.b.clone(), 0, self.d.clone())
    }

    pub fn contains(&self, v: &(BigInt, BigInt)) -> bool {
        let (y, r) = v.1.div_rem(&self.d);
        if !r.is_zero() {
            return false;
        }
        (&v.0 - &y * &self.b).is_multiple_of(&self.a)
    }
}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, d={})", self.a, self.b, self.d)
    }
}

/// Hermite normal form of the lattice spanned by the columns of `basis`.
pub fn hnf(basis: &Mat2) -> Result<Lattice2> {
    if basis.det().is_zero() {
        return Err(Error::SingularBasis);
    }
    let (u, w) = (basis.column(0), basis.column(1));
    // Unimodular column operation clearing the second row of one column.
    let eg = u.1.extended_gcd(&w.1);
    let (mut g, mut x, mut y) = (eg.gcd, eg.x, eg.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    let (cu, cw) = (&u.1 / &g, &w.1 / &g);
    let top = &x * &u.0 + &y * &w.0;
    let horizontal = &cu * &w.0 - &cw * &u.0;
    debug_assert!(!horizontal.is_zero());
    let a = horizontal.abs();
    let b = top.mod_floor(&a);
    Ok(Lattice2 { a, b, d: g })
}

/// Canonical form of `u · L` for unimodular `u`.
pub fn lattice_image(u: &Mat2, lattice: &Lattice2) -> Result<Lattice2> {
    if !u.is_unimodular() {
        return Err(Error::NotUnimodular(u.det()));
    }
    hnf(&(u * &lattice.basis()))
}

/// All index-`n` sublattices of Z², sorted by `(a, b, d)`.
///
/// There are σ(n) of them.
pub fn enumerate_sublattices(n: u64) -> Vec<Lattice2> {
    assert!(n >= 1, "sublattice index must be positive");
    let mut out = Vec::new();
    for a in divisors(n) {
        let d = n / a;
        for b in 0..a {
            out.push(Lattice2 {
                a: BigInt::from(a),
                b: BigInt::from(b),
                d: BigInt::from(d),
            });
        }
    }
    out
}
