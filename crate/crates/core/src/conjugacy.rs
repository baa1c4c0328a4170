//! Topological equivalence of suspensions, decided as SL2(Z) conjugacy.
//!
//! Every hyperbolic `A` (trace > 2) is conjugate to a product of
//! `R = [[1,1],[0,1]]` and `L = [[1,0],[1,1]]` containing both letters, and
//! two such products are conjugate exactly when their words are cyclic
//! rotations of each other. [`rl_word`] computes the least rotation together
//! with a conjugating witness, so equivalence verdicts come with an explicit
//! conjugator.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{HyperbolicMatrix, Mat2};

/// A cyclic word `R^{r_1} L^{l_1} ··· R^{r_n} L^{l_n}` with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RlWord {
    pairs: Vec<(BigUint, BigUint)>,
}

impl RlWord {
    pub fn new(pairs: Vec<(BigUint, BigUint)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("RL word must be nonempty".into()));
        }
        if pairs.iter().any(|(r, l)| r.is_zero() || l.is_zero()) {
            return Err(Error::InvalidArgument("RL word exponents must be positive".into()));
        }
        Ok(RlWord { pairs })
    }

    /// Builds a word from the flat exponent list `r_1, l_1, r_2, l_2, ...`.
    pub fn from_exponents(exps: &[u64]) -> Result<Self> {
        if !exps.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument("RL word needs an even number of exponents".into()));
        }
        RlWord::new(
            exps.chunks(2)
                .map(|c| (BigUint::from(c[0]), BigUint::from(c[1])))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(BigUint, BigUint)] {
        &self.pairs
    }

    /// Flat exponent list `r_1, l_1, ..., r_n, l_n`.
    pub fn exponents(&self) -> Vec<BigUint> {
        self.pairs
            .iter()
            .flat_map(|(r, l)| [r.clone(), l.clone()])
            .collect()
    }

    /// Total number of letters.
    pub fn length(&self) -> BigUint {
        self.pairs.iter().map(|(r, l)| r + l).sum()
    }

    fn rotated(&self, offset: usize) -> RlWord {
        let mut pairs = self.pairs[offset..].to_vec();
        pairs.extend_from_slice(&self.pairs[..offset]);
        RlWord { pairs }
    }

    fn least_rotation_offset(&self) -> usize {
        (0..self.pairs.len())
            .min_by(|&i, &j| {
                let n = self.pairs.len();
                (0..n)
                    .map(|k| self.pairs[(i + k) % n].cmp(&self.pairs[(j + k) % n]))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty word")
    }
}

impl fmt::Display for RlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, l) in &self.pairs {
            for (letter, e) in [("R", r), ("L", l)] {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                if e.is_one() {
                    f.write_str(letter)?;
                } else {
                    write!(f, "{letter}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

fn r_pow(k: &BigInt) -> Mat2 {
    Mat2::new(1, k.clone(), 0, 1)
}

fn l_pow(k: &BigInt) -> Mat2 {
    Mat2::new(1, 0, k.clone(), 1)
}

fn eval_pairs(pairs: &[(BigUint, BigUint)]) -> Mat2 {
    pairs.iter().fold(Mat2::identity(), |acc, (r, l)| {
        let step = &r_pow(&BigInt::from(r.clone())) * &l_pow(&BigInt::from(l.clone()));
        &acc * &step
    })
}

/// Matrix value of a word; always hyperbolic with positive entries.
pub fn evaluate_word(w: &RlWord) -> HyperbolicMatrix {
    HyperbolicMatrix::new(eval_pairs(&w.pairs)).expect("positive RL words are hyperbolic")
}

/// The least rotation of `w` by whole `(r, l)` pairs.
pub fn canonical_form(w: &RlWord) -> RlWord {
    w.rotated(w.least_rotation_offset())
}

/// Conjugates `a` to a matrix with all entries positive.
///
/// Works on the binary quadratic form `f(v) = det[v, A·v]`, which transforms
/// as `f ∘ X` under `A ↦ X⁻¹AX`. Translations shrink the middle coefficient,
/// swaps shrink the leading one, until the outer coefficients have opposite
/// sign, i.e. `b·c > 0`. Returns `(X, X⁻¹AX)`.
fn positive_conjugate(a: &Mat2) -> (Mat2, Mat2) {
    let mut x = Mat2::identity();
    let mut m = a.clone();
    loop {
        let (alpha, gamma) = (m.c.clone(), -&m.b);
        debug_assert!(!alpha.is_zero() && !gamma.is_zero());
        if alpha.is_negative() != gamma.is_negative() {
            break;
        }
        let beta = &m.d - &m.a;
        // Translate so that |β + 2αn| ≤ |α|.
        let two_alpha = &alpha * 2;
        let n = -(&beta + &alpha).div_floor(&two_alpha);
        if !n.is_zero() {
            let t = r_pow(&n);
            m = m.conjugate_by(&t).expect("unimodular");
            x = &x * &t;
        }
        let (alpha, gamma) = (m.c.clone(), -&m.b);
        if alpha.is_negative() != gamma.is_negative() {
            break;
        }
        // Same sign with a short middle coefficient forces |γ| < |α|.
        assert!(gamma.abs() < alpha.abs(), "form reduction must shrink |α|");
        let s = Mat2::s();
        m = m.conjugate_by(&s).expect("unimodular");
        x = &x * &s;
    }
    if m.b.is_negative() {
        let s = Mat2::s();
        m = m.conjugate_by(&s).expect("unimodular");
        x = &x * &s;
    }
    debug_assert!(m.entries().iter().all(|e| e.is_positive()));
    (x, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    R,
    L,
}

/// Factors a nonnegative det-1 matrix into maximal R and L blocks.
fn peel(m: &Mat2) -> Vec<(Letter, BigInt)> {
    let mut m = m.clone();
    let mut blocks: Vec<(Letter, BigInt)> = Vec::new();
    while !m.is_identity() {
        let measure = m.abs_sum();
        let (letter, k) = if m.a >= m.c && m.b >= m.d {
            (Letter::R, block_len(&m.a, &m.c, &m.b, &m.d))
        } else {
            assert!(m.c >= m.a && m.d >= m.b, "rows of a nonnegative SL2 matrix are comparable");
            (Letter::L, block_len(&m.c, &m.a, &m.d, &m.b))
        };
        m = match letter {
            Letter::R => Mat2::new(&m.a - &k * &m.c, &m.b - &k * &m.d, m.c.clone(), m.d.clone()),
            Letter::L => Mat2::new(m.a.clone(), m.b.clone(), &m.c - &k * &m.a, &m.d - &k * &m.b),
        };
        // Loop variant: nonnegative entries with strictly smaller sum.
        assert!(m.is_nonnegative() && m.abs_sum() < measure, "peel must descend");
        blocks.push((letter, k));
    }
    blocks
}

/// Largest `k` with `(top − k·bottom)` nonnegative.
fn block_len(top0: &BigInt, bot0: &BigInt, top1: &BigInt, bot1: &BigInt) -> BigInt {
    let bound = |t: &BigInt, b: &BigInt| (!b.is_zero()).then(|| t / b);
    match (bound(top0, bot0), bound(top1, bot1)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => unreachable!("determinant 1 rules out a zero row"),
    }
}

/// Canonical RL word of `a` and a witness `W` with `W⁻¹·A·W = evaluate_word(word)`.
pub fn rl_word(a: &HyperbolicMatrix) -> Result<(RlWord, Mat2)> {
    let (mut witness, positive) = positive_conjugate(a.as_mat());
    let mut blocks = peel(&positive);

    // Rotate so the word starts with R and ends with L.
    if blocks.first().map(|b| b.0) == Some(Letter::L) {
        let (_, k) = blocks.remove(0);
        witness = &witness * &l_pow(&k);
        push_merge(&mut blocks, (Letter::L, k));
    }
    if blocks.last().map(|b| b.0) == Some(Letter::R) {
        let (_, k) = blocks.pop().expect("nonempty");
        witness = &witness * &r_pow(&-&k);
        match blocks.first_mut() {
            Some((Letter::R, e)) => *e += k,
            _ => blocks.insert(0, (Letter::R, k)),
        }
    }
    let pairs: Vec<(BigUint, BigUint)> = blocks
        .chunks(2)
        .map(|c| {
            debug_assert!(c.len() == 2 && c[0].0 == Letter::R && c[1].0 == Letter::L);
            (
                c[0].1.to_biguint().expect("positive"),
                c[1].1.to_biguint().expect("positive"),
            )
        })
        .collect();
    let word = RlWord::new(pairs)?;
    let offset = word.least_rotation_offset();
    witness = &witness * &eval_pairs(&word.pairs[..offset]);
    Ok((word.rotated(offset), witness))
}

fn push_merge(blocks: &mut Vec<(Letter, BigInt)>, block: (Letter, BigInt)) {
    match blocks.last_mut() {
        Some((letter, e)) if *letter == block.0 => *e += block.1,
        _ => blocks.push(block),
    }
}

/// Outcome of an equivalence query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// `Q` with `det Q = 1` and `Q⁻¹·A·Q = B`, present iff equivalent.
    pub conjugator: Option<Mat2>,
    pub canonical_a: RlWord,
    pub canonical_b: RlWord,
}

/// Decides whether the suspensions of `a` and `b` are topologically
/// equivalent, i.e. whether `a` and `b` are conjugate in SL2(Z).
pub fn are_equivalent(a: &HyperbolicMatrix, b: &HyperbolicMatrix) -> Result<EquivalenceVerdict> {
    let (word_a, wit_a) = rl_word(a)?;
    let (word_b, wit_b) = rl_word(b)?;
    let equivalent = word_a == word_b;
    let conjugator = equivalent.then(|| &wit_a * &wit_b.inverse_unimodular().expect("unimodular"));
    Ok(EquivalenceVerdict {
        equivalent,
        conjugator,
        canonical_a: word_a,
        canonical_b: word_b,
    })
}

/// Exhaustive search for `Q ∈ SL2(Z)` with entries in `[-bound, bound]` and
/// `Q⁻¹·A·Q = B`. Test oracle.
///
/// # Panics
/// If an entry of `a` or `b` does not fit in an `i64`.
pub fn brute_force_conjugator(
    a: &HyperbolicMatrix,
    b: &HyperbolicMatrix,
    bound: u64,
) -> Option<Mat2> {
    let small = |m: &Mat2| -> [i128; 4] {
        m.entries().map(|e| e.to_i64().expect("oracle needs i64 entries") as i128)
    };
    let [a0, a1, a2, a3] = small(a.as_mat());
    let [b0, b1, b2, b3] = small(b.as_mat());
    let bound = bound as i128;
    // 0, 1, -1, 2, -2, ...
    let values: Vec<i128> = std::iter::once(0)
        .chain((1..=bound).flat_map(|v| [v, -v]))
        .collect();
    let works = |p: i128, q: i128, r: i128, s: i128| {
        // A·Q = Q·B
        a0 * p + a1 * r == p * b0 + q * b2
            && a0 * q + a1 * s == p * b1 + q * b3
            && a2 * p + a3 * r == r * b0 + s * b2
            && a2 * q + a3 * s == r * b1 + s * b3
    };
    for &p in &values {
        for &q in &values {
            for &r in &values {
                if p == 0 {
                    if q * r != -1 {
                        continue;
                    }
                    if let Some(&s) = values.iter().find(|&&s| works(p, q, r, s)) {
                        return Some(Mat2::new(p as i64, q as i64, r as i64, s as i64));
                    }
                } else {
                    let num = 1 + q * r;
                    if num % p != 0 {
                        continue;
                    }
                    let s = num / p;
                    if s.abs() <= bound && works(p, q, r, s) {
                        return Some(Mat2::new(p as i64, q as i64, r as i64, s as i64));
                    }
                }
            }
        }
    }
    None
}
