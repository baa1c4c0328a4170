//! Integer solutions of `A·P = P·B`.
//!
//! `P = [[p, q], [r, s]]` is flattened to `(p, q, r, s)` and the linear map
//! `P ↦ A·P − P·B` becomes a 4×4 integer matrix whose integer kernel is
//! found by unimodular column reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mat::{HyperbolicMatrix, Mat2};
use crate::error::{Error, Result};

/// A basis `(K1, K2)` of the rank-2 lattice of integer intertwiners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerBasis {
    pub k1: Mat2,
    pub k2: Mat2,
}

impl IntertwinerBasis {
    pub fn combine(&self, x: &BigInt, y: &BigInt) -> Mat2 {
        &self.k1.scale(x) + &self.k2.scale(y)
    }

    /// Coefficients `(α, β, γ)` of `det(x·K1 + y·K2) = αx² + βxy + γy²`.
    pub fn det_form(&self) -> (BigInt, BigInt, BigInt) {
        let alpha = self.k1.det();
        let gamma = self.k2.det();
        let beta = (&self.k1 + &self.k2).det() - &alpha - &gamma;
        (alpha, beta, gamma)
    }

    /// Rational coordinates of `p` in this basis, or `None` when `p` is not
    /// in the rational span.
    pub fn coordinates(&self, p: &Mat2) -> Option<(BigRational, BigRational)> {
        let k1 = flatten(&self.k1);
        let k2 = flatten(&self.k2);
        let target = flatten(p);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let minor = &k1[i] * &k2[j] - &k1[j] * &k2[i];
                if minor.is_zero() {
                    continue;
                }
                let x = BigRational::new(&target[i] * &k2[j] - &target[j] * &k2[i], minor.clone());
                let y = BigRational::new(&k1[i] * &target[j] - &k1[j] * &target[i], minor);
                let consistent = (0..4).all(|t| {
                    &x * BigRational::from(k1[t].clone()) + &y * BigRational::from(k2[t].clone())
                        == BigRational::from(target[t].clone())
                });
                return consistent.then_some((x, y));
            }
        }
        None
    }
}

fn flatten(m: &Mat2) -> [BigInt; 4] {
    [m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone()]
}

fn unflatten(v: &[BigInt]) -> Mat2 {
    Mat2::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
}

/// Matrix of `P ↦ A·P − P·B` acting on `(p, q, r, s)`.
fn intertwining_system(a: &Mat2, b: &Mat2) -> Vec<Vec<BigInt>> {
    let z = BigInt::zero;
    vec![
        vec![&a.a - &b.a, -&b.c, a.b.clone(), z()],
        vec![-&b.b, &a.a - &b.d, z(), a.b.clone()],
        vec![a.c.clone(), z(), &a.d - &b.a, -&b.c],
        vec![z(), a.c.clone(), -&b.b, &a.d - &b.d],
    ]
}

/// Basis of the integer kernel of `m` (rows × cols), each vector saturated.
pub(crate) fn integer_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<BigInt>> = m.to_vec();
    // Column j of `unimodular` records how column j of `work` was formed.
    let mut unimodular: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    let mut pivot = 0;
    for row in 0..work.len() {
        if pivot == cols {
            break;
        }
        for j in (pivot + 1)..cols {
            if work[row][j].is_zero() {
                continue;
            }
            let (u, w) = (work[row][pivot].clone(), work[row][j].clone());
            let eg = u.extended_gcd(&w);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (cu, cw) = (&u / &g, &w / &g);
            for mat in [&mut work, &mut unimodular] {
                for r in mat.iter_mut() {
                    let (vp, vj) = (r[pivot].clone(), r[j].clone());
                    r[pivot] = &x * &vp + &y * &vj;
                    r[j] = &cu * &vj - &cw * &vp;
                }
            }
        }
        if !work[row][pivot].is_zero() {
            pivot += 1;
        }
    }
    (pivot..cols)
        .map(|j| {
            let v: Vec<BigInt> = unimodular.iter().map(|r| r[j].clone()).collect();
            saturate(v)
        })
        .collect()
}

fn saturate(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Integer basis of `{P : A·P = P·B}` for hyperbolic `A`, `B` of equal trace.
pub fn intertwiner_lattice(a: &HyperbolicMatrix, b: &HyperbolicMatrix) -> Result<IntertwinerBasis> {
    let (ta, tb) = (a.trace(), b.trace());
    if ta != tb {
        return Err(Error::TraceMismatch(ta, tb));
    }
    let kernel = integer_kernel(&intertwining_system(a.as_mat(), b.as_mat()));
    // Hyperbolic matrices are not scalar, so equal traces give rank exactly 2.
    assert_eq!(kernel.len(), 2, "intertwiner kernel must have rank 2");
    let mut k1 = unflatten(&kernel[0]);
    let mut k2 = unflatten(&kernel[1]);
    // Sign normalization for stable output.
    if first_nonzero_negative(&k1) {
        k1 = -k1;
    }
    if first_nonzero_negative(&k2) {
        k2 = -k2;
    }
    Ok(IntertwinerBasis { k1, k2 })
}

pub(crate) fn first_nonzero_negative(m: &Mat2) -> bool {
    m.entries()
        .into_iter()
        .find(|e| !e.is_zero())
        .is_some_and(|e| e.is_negative())
}
