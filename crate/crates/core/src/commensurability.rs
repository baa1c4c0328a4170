//! Topological commensurability of suspensions.
//!
//! `M_A` and `M_B` are commensurable iff `tr(A^i) = tr(B^j)` for some
//! `i, j ≥ 1`. Positive verdicts carry a [`CommensurabilityCertificate`]
//! describing the common finite cover: the mapping torus of `(A^i)^k`
//! acting on `R²/Λ_P`, where `P` is an integer matrix with
//! `A^i·P = P·B^j` and `Λ_P` is its column lattice. Negative verdicts rest on
//! the squarefree part of `tr² − 4`, which is constant along powers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisor_sum, factorize, odd_part_product, FactorEffort};
use crate::error::{Error, Result};
use crate::linalg::{
    first_nonzero_negative, hnf, intertwiner_lattice, lattice_image, HyperbolicMatrix, Lattice2,
    Mat2,
};

pub const DEFAULT_MAX_STEPS: u64 = 10_000;
pub const DEFAULT_SEARCH_BOUND: u64 = 32;
pub const MAX_SEARCH_BOUND: u64 = 1024;

/// Tunables for [`are_commensurable`] and [`build_certificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Guard on the trace-merge loop.
    pub max_steps: u64,
    /// Initial coordinate box for the intertwiner search; doubled up to
    /// [`MAX_SEARCH_BOUND`] while every candidate is singular.
    pub search_bound: u64,
    pub factor_effort: FactorEffort,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_steps: DEFAULT_MAX_STEPS,
            search_bound: DEFAULT_SEARCH_BOUND,
            factor_effort: FactorEffort::default(),
        }
    }
}

/// `t_i = tr(A^i)`, extended on demand by `t_{i+1} = t·t_i − t_{i−1}`.
#[derive(Clone, Debug)]
pub struct TraceSequence {
    values: Vec<BigInt>,
}

impl TraceSequence {
    pub fn new(base_trace: BigInt) -> Result<Self> {
        if base_trace <= BigInt::from(2) {
            return Err(Error::NotHyperbolic(base_trace));
        }
        Ok(TraceSequence {
            values: vec![BigInt::from(2), base_trace],
        })
    }

    pub fn of(a: &HyperbolicMatrix) -> Self {
        TraceSequence::new(a.trace()).expect("hyperbolic trace exceeds 2")
    }

    pub fn base_trace(&self) -> &BigInt {
        &self.values[1]
    }

    /// `t_i`; `t_0 = 2`.
    pub fn get(&mut self, i: usize) -> &BigInt {
        while self.values.len() <= i {
            let n = self.values.len();
            let next = &self.values[1] * &self.values[n - 1] - &self.values[n - 2];
            self.values.push(next);
        }
        &self.values[i]
    }

    /// `t_1, ..., t_n`.
    pub fn take(&mut self, n: usize) -> Vec<BigInt> {
        self.get(n);
        self.values[1..=n].to_vec()
    }
}

/// `tr(A^i)` via the Cayley–Hamilton recurrence.
pub fn trace_power(a: &HyperbolicMatrix, i: u64) -> BigInt {
    let (mut prev, mut cur) = (BigInt::from(2), a.trace());
    let t = a.trace();
    for _ in 1..i {
        let next = &t * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    if i == 0 {
        prev
    } else {
        cur
    }
}

/// Squarefree part of `t² − 4`, factoring `t − 2` and `t + 2` separately.
pub fn discriminant_squarefree(t: &BigInt, effort: &FactorEffort) -> Result<BigInt> {
    let two = BigInt::from(2);
    if t.abs() <= two {
        return Err(Error::NotHyperbolic(t.clone()));
    }
    let mut merged = factorize(&(t - &two), effort)?;
    for (p, e) in factorize(&(t + &two), effort)? {
        *merged.entry(p).or_insert(0) += e;
    }
    Ok(odd_part_product(&merged))
}

/// Replaces a trace < −2 monodromy by its square, whose suspension double
/// covers the original. Returns the hyperbolic matrix and whether it was
/// squared.
pub fn normalize_monodromy(m: &Mat2) -> Result<(HyperbolicMatrix, bool)> {
    let det = m.det();
    if !det.is_one() {
        return Err(Error::NotSl2(det));
    }
    if m.trace() < BigInt::from(-2) {
        Ok((HyperbolicMatrix::new(m.pow(2))?, true))
    } else {
        Ok((HyperbolicMatrix::new(m.clone())?, false))
    }
}

/// Evidence for a common finite cover of `M_A` and `M_B`.
///
/// Fields are plain integers so that a certificate read back from disk can
/// be checked without trusting any invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommensurabilityCertificate {
    pub a: Mat2,
    pub b: Mat2,
    pub i: u64,
    pub j: u64,
    /// Integer intertwiner, `A^i·P = P·B^j`.
    pub p: Mat2,
    pub det_p: BigInt,
    /// Column lattice of `P`.
    pub lambda_p: Lattice2,
    /// Least `k ≥ 1` with `(A^i)^k·Λ_P = Λ_P`.
    pub k: u64,
    /// Degree of the common cover over `M_A`: `i·k·|det P|`.
    pub index_over_a: BigInt,
    /// Degree of the common cover over `M_B`: `j·k`.
    pub index_over_b: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommensurabilityVerdict {
    pub commensurable: bool,
    pub minimal_exponents: Option<(u64, u64)>,
    pub common_trace: Option<BigInt>,
    pub squarefree_a: BigInt,
    pub squarefree_b: BigInt,
    /// Whether the corresponding input had trace < −2 and was squared.
    pub squared_a: bool,
    pub squared_b: bool,
    pub certificate: Option<CommensurabilityCertificate>,
}

/// Decides commensurability of `M_A` and `M_B` and certifies positive answers.
pub fn are_commensurable(
    a: impl AsRef<Mat2>,
    b: impl AsRef<Mat2>,
    opts: &Options,
) -> Result<CommensurabilityVerdict> {
    let (a, squared_a) = normalize_monodromy(a.as_ref())?;
    let (b, squared_b) = normalize_monodromy(b.as_ref())?;
    let squarefree_a = discriminant_squarefree(&a.trace(), &opts.factor_effort)?;
    let squarefree_b = discriminant_squarefree(&b.trace(), &opts.factor_effort)?;
    let mut verdict = CommensurabilityVerdict {
        commensurable: false,
        minimal_exponents: None,
        common_trace: None,
        squarefree_a,
        squarefree_b,
        squared_a,
        squared_b,
        certificate: None,
    };
    if verdict.squarefree_a != verdict.squarefree_b {
        return Ok(verdict);
    }
    let (i, j, common) = first_common_trace(&a, &b, opts.max_steps)?;
    verdict.commensurable = true;
    verdict.minimal_exponents = Some((i, j));
    verdict.common_trace = Some(common);
    verdict.certificate = Some(build_certificate(&a, &b, i, j, opts)?);
    Ok(verdict)
}

/// Merges the two increasing trace sequences up to their first common value.
fn first_common_trace(
    a: &HyperbolicMatrix,
    b: &HyperbolicMatrix,
    max_steps: u64,
) -> Result<(u64, u64, BigInt)> {
    let mut seq_a = TraceSequence::of(a);
    let mut seq_b = TraceSequence::of(b);
    let (mut i, mut j) = (1usize, 1usize);
    let mut steps = 0;
    loop {
        let (ta, tb) = (seq_a.get(i).clone(), seq_b.get(j).clone());
        match ta.cmp(&tb) {
            std::cmp::Ordering::Equal => return Ok((i as u64, j as u64, ta)),
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::StepLimitExceeded {
                steps: max_steps,
                last_a: ta,
                last_b: tb,
            });
        }
    }
}

/// Nonsingular integer `P` with `A1·P = P·B1` of least `|det P|` among
/// `x·K1 + y·K2` with `max(|x|, |y|) ≤ search_bound`.
///
/// Ties go to positive determinant, then the smaller entry sum, then the
/// lexicographically least entries; the sign is fixed by making the first
/// nonzero entry positive.
pub fn find_intertwiner(
    a1: &HyperbolicMatrix,
    b1: &HyperbolicMatrix,
    search_bound: u64,
) -> Result<Mat2> {
    let basis = intertwiner_lattice(a1, b1)?;
    let (alpha, beta, gamma) = basis.det_form();
    let bound = search_bound as i64;
    let mut best: Option<(BigInt, bool, BigInt, Mat2)> = None;
    for x in -bound..=bound {
        for y in -bound..=bound {
            if (x, y) == (0, 0) {
                continue;
            }
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let signed = &alpha * &bx * &bx + &beta * &bx * &by + &gamma * &by * &by;
            let det = signed.abs();
            if det.is_zero() || best.as_ref().is_some_and(|(d, _, _, _)| det > *d) {
                continue;
            }
            let p = basis.combine(&bx, &by);
            if first_nonzero_negative(&p) {
                continue;
            }
            let key = (det, signed.is_negative(), p.abs_sum(), p);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, _, p)| p)
        .ok_or(Error::NoNonsingularIntertwiner(search_bound))
}

/// Least `k ≥ 1` with `A1^k·L = L`.
///
/// `A1` permutes the finitely many sublattices of index `[Z²:L]`, so the
/// answer is at most σ(index); `k_max` must be at least that.
pub fn stabilization_exponent(a1: &HyperbolicMatrix, lattice: &Lattice2, k_max: u64) -> Result<u64> {
    if let Some(n) = lattice.index().to_u64() {
        let sigma = divisor_sum(n);
        if k_max < sigma {
            return Err(Error::InvalidArgument(format!(
                "k_max = {k_max} is below sigma({n}) = {sigma}"
            )));
        }
    }
    let mut current = lattice.clone();
    for k in 1..=k_max {
        current = lattice_image(a1.as_mat(), &current)?;
        if current == *lattice {
            return Ok(k);
        }
    }
    Err(Error::InvalidArgument(format!(
        "lattice orbit longer than k_max = {k_max}"
    )))
}

/// Assembles the covering certificate for exponents with matching traces.
pub fn build_certificate(
    a: &HyperbolicMatrix,
    b: &HyperbolicMatrix,
    i: u64,
    j: u64,
    opts: &Options,
) -> Result<CommensurabilityCertificate> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument("exponents must be positive".into()));
    }
    let (trace_a, trace_b) = (trace_power(a, i), trace_power(b, j));
    if trace_a != trace_b {
        return Err(Error::ExponentMismatch {
            i,
            j,
            trace_a,
            trace_b,
        });
    }
    let a1 = a.pow(i);
    let b1 = b.pow(j);
    let mut bound = opts.search_bound.max(1);
    let p = loop {
        match find_intertwiner(&a1, &b1, bound) {
            Ok(p) => break p,
            Err(Error::NoNonsingularIntertwiner(_)) if bound < MAX_SEARCH_BOUND => {
                bound = (bound * 2).min(MAX_SEARCH_BOUND)
            }
            Err(e) => return Err(e),
        }
    };
    let det_p = p.det();
    let lambda_p = hnf(&p)?;
    let k_max = lattice_orbit_bound(&lambda_p);
    let k = stabilization_exponent(&a1, &lambda_p, k_max)?;
    Ok(CommensurabilityCertificate {
        a: a.as_mat().clone(),
        b: b.as_mat().clone(),
        i,
        j,
        index_over_a: BigInt::from(i) * BigInt::from(k) * det_p.abs(),
        index_over_b: BigInt::from(j) * BigInt::from(k),
        p,
        det_p,
        lambda_p,
        k,
    })
}

fn lattice_orbit_bound(lattice: &Lattice2) -> u64 {
    lattice
        .index()
        .to_u64()
        .map_or(u64::MAX, divisor_sum)
}

/// The certificate clause a verification failure points at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateViolation {
    MonodromyA(String),
    MonodromyB(String),
    Exponents,
    TraceMatch { trace_a: BigInt, trace_b: BigInt },
    Intertwining,
    Determinant,
    Lattice { expected: Lattice2 },
    Stabilization,
    Minimality { least: u64 },
    IndexOverA { expected: BigInt },
    IndexOverB { expected: BigInt },
}

impl CertificateViolation {
    /// Short stable name of the violated clause.
    pub fn clause(&self) -> &'static str {
        match self {
            CertificateViolation::MonodromyA(_) => "monodromy_a",
            CertificateViolation::MonodromyB(_) => "monodromy_b",
            CertificateViolation::Exponents => "exponents",
            CertificateViolation::TraceMatch { .. } => "trace_match",
            CertificateViolation::Intertwining => "intertwining",
            CertificateViolation::Determinant => "determinant",
            CertificateViolation::Lattice { .. } => "lattice",
            CertificateViolation::Stabilization => "stabilization",
            CertificateViolation::Minimality { .. } => "minimality",
            CertificateViolation::IndexOverA { .. } => "index_over_a",
            CertificateViolation::IndexOverB { .. } => "index_over_b",
        }
    }
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.clause())?;
        match self {
            CertificateViolation::MonodromyA(why) | CertificateViolation::MonodromyB(why) => {
                f.write_str(why)
            }
            CertificateViolation::Exponents => f.write_str("exponents must be positive"),
            CertificateViolation::TraceMatch { trace_a, trace_b } => {
                write!(f, "tr(A^i) = {trace_a} but tr(B^j) = {trace_b}")
            }
            CertificateViolation::Intertwining => f.write_str("A^i·P differs from P·B^j"),
            CertificateViolation::Determinant => {
                f.write_str("det_P is not the (nonzero) determinant of P")
            }
            CertificateViolation::Lattice { expected } => {
                write!(f, "lambda_P is not the column lattice of P, expected {expected}")
            }
            CertificateViolation::Stabilization => f.write_str("(A^i)^k does not fix lambda_P"),
            CertificateViolation::Minimality { least } => {
                write!(f, "k is not minimal, (A^i)^{least} already fixes lambda_P")
            }
            CertificateViolation::IndexOverA { expected } => {
                write!(f, "expected i·k·|det P| = {expected}")
            }
            CertificateViolation::IndexOverB { expected } => write!(f, "expected j·k = {expected}"),
        }
    }
}

/// Upper limit on the lattice orbit walked by the verifier.
const VERIFY_ORBIT_CAP: u64 = 1 << 20;

/// Re-checks every clause of a certificate from its raw fields.
pub fn verify_certificate(c: &CommensurabilityCertificate) -> Result<(), CertificateViolation> {
    let a = HyperbolicMatrix::new(c.a.clone())
        .map_err(|e| CertificateViolation::MonodromyA(e.to_string()))?;
    let b = HyperbolicMatrix::new(c.b.clone())
        .map_err(|e| CertificateViolation::MonodromyB(e.to_string()))?;
    if c.i == 0 || c.j == 0 || c.k == 0 {
        return Err(if c.k == 0 {
            CertificateViolation::Stabilization
        } else {
            CertificateViolation::Exponents
        });
    }
    let a1 = a.as_mat().pow(c.i);
    let b1 = b.as_mat().pow(c.j);
    let (trace_a, trace_b) = (a1.trace(), b1.trace());
    if trace_a != trace_b {
        return Err(CertificateViolation::TraceMatch { trace_a, trace_b });
    }
    if &a1 * &c.p != &c.p * &b1 {
        return Err(CertificateViolation::Intertwining);
    }
    if c.det_p.is_zero() || c.det_p != c.p.det() {
        return Err(CertificateViolation::Determinant);
    }
    let expected = hnf(&c.p).map_err(|_| CertificateViolation::Determinant)?;
    if expected != c.lambda_p {
        return Err(CertificateViolation::Lattice { expected });
    }
    // Walk the orbit of lambda_P under A^i to find the least stabilizing k.
    let mut current = c.lambda_p.clone();
    let mut least = None;
    for step in 1..=VERIFY_ORBIT_CAP {
        current = lattice_image(&a1, &current).map_err(|_| CertificateViolation::Stabilization)?;
        if current == c.lambda_p {
            least = Some(step);
            break;
        }
    }
    let least = least.ok_or(CertificateViolation::Stabilization)?;
    if !c.k.is_multiple_of(least) {
        return Err(CertificateViolation::Stabilization);
    }
    if c.k != least {
        return Err(CertificateViolation::Minimality { least });
    }
    let k = BigInt::from(c.k);
    let expected = BigInt::from(c.i) * &k * c.det_p.abs();
    if c.index_over_a != expected {
        return Err(CertificateViolation::IndexOverA { expected });
    }
    let expected = BigInt::from(c.j) * &k;
    if c.index_over_b != expected {
        return Err(CertificateViolation::IndexOverB { expected });
    }
    Ok(())
}
