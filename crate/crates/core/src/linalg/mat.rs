use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A 2×2 matrix of arbitrary-precision integers, row-major:
/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::new(0, 0, 0, 0)
    }

    /// `R = [[1,1],[0,1]]`.
    pub fn r() -> Self {
        Mat2::new(1, 1, 0, 1)
    }

    /// `L = [[1,0],[1,1]]`.
    pub fn l() -> Self {
        Mat2::new(1, 0, 1, 1)
    }

    /// `S = [[0,-1],[1,0]]`, the order-4 rotation.
    pub fn s() -> Self {
        Mat2::new(0, -1, 1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Sum of the absolute values of the entries.
    pub fn abs_sum(&self) -> BigInt {
        self.entries().iter().map(|e| e.abs()).sum()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries()
            .iter()
            .map(|e| e.abs())
            .max()
            .expect("four entries")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries().iter().all(|e| !e.is_negative())
    }

    /// The adjugate `[[d,-b],[-c,a]]`; equals the inverse when det = 1.
    pub fn adjugate(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_one() {
            Ok(self.adjugate())
        } else if (-&det).is_one() {
            Ok(-self.adjugate())
        } else {
            Err(Error::NotUnimodular(det))
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Mat2 {
        Mat2 {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: &self.d * k,
        }
    }

    /// `self^n` by binary exponentiation; `self^0 = I`.
    pub fn pow(&self, mut n: u64) -> Mat2 {
        let mut result = Mat2::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `q⁻¹ · self · q` for unimodular `q`.
    pub fn conjugate_by(&self, q: &Mat2) -> Result<Mat2> {
        Ok(&(&q.inverse_unimodular()? * self) * q)
    }

    pub fn column(&self, j: usize) -> (BigInt, BigInt) {
        match j {
            0 => (self.a.clone(), self.c.clone()),
            1 => (self.b.clone(), self.d.clone()),
            _ => panic!("column index {j} out of range"),
        }
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (
            &self.a * &v.0 + &self.b * &v.1,
            &self.c * &v.0 + &self.d * &v.1,
        )
    }

    pub fn from_columns(c0: (BigInt, BigInt), c1: (BigInt, BigInt)) -> Mat2 {
        Mat2 {
            a: c0.0,
            b: c1.0,
            c: c0.1,
            d: c1.1,
        }
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn mul(self, y: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &y.a + &self.b * &y.c,
            b: &self.a * &y.b + &self.b * &y.d,
            c: &self.c * &y.a + &self.d * &y.c,
            d: &self.c * &y.b + &self.d * &y.d,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, y: Mat2) -> Mat2 {
        &self * &y
    }
}

impl<'a> Add<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn add(self, y: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a + &y.a,
            b: &self.b + &y.b,
            c: &self.c + &y.c,
            d: &self.d + &y.d,
        }
    }
}

impl<'a> Sub<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn sub(self, y: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a - &y.a,
            b: &self.b - &y.b,
            c: &self.c - &y.c,
            d: &self.d - &y.d,
        }
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2 {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl AsRef<Mat2> for Mat2 {
    fn as_ref(&self) -> &Mat2 {
        self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// An element of SL2(Z) with trace > 2: the monodromy of a suspension flow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperbolicMatrix(Mat2);

impl HyperbolicMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        let det = m.det();
        if !det.is_one() {
            return Err(Error::NotSl2(det));
        }
        let trace = m.trace();
        if trace <= BigInt::from(2) {
            return Err(Error::NotHyperbolic(trace));
        }
        Ok(HyperbolicMatrix(m))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        HyperbolicMatrix::new(Mat2::new(a, b, c, d))
    }

    pub fn as_mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn into_inner(self) -> Mat2 {
        self.0
    }

    pub fn trace(&self) -> BigInt {
        self.0.trace()
    }

    /// `A^n` for `n ≥ 1`; positive powers stay hyperbolic.
    pub fn pow(&self, n: u64) -> HyperbolicMatrix {
        assert!(n >= 1, "hyperbolic power needs n >= 1");
        HyperbolicMatrix(self.0.pow(n))
    }
}

impl AsRef<Mat2> for HyperbolicMatrix {
    fn as_ref(&self) -> &Mat2 {
        &self.0
    }
}

impl fmt::Display for HyperbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
