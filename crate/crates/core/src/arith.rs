//! Elementary number theory: divisors, divisor sums and squarefree parts.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_prime::factor::pollard_rho;
use num_prime::nt_funcs::{is_prime, primes};
use num_prime::PrimalityTestConfig;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;
pub const DEFAULT_RHO_ITERATIONS: usize = 1 << 22;

/// How hard [`squarefree_part_with`] may work before giving up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorEffort {
    /// Primes up to this bound are removed by trial division.
    pub trial_limit: u64,
    /// Total Pollard–Brent iterations allowed across all cofactors.
    pub rho_iterations: usize,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort {
            trial_limit: DEFAULT_TRIAL_LIMIT,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
        }
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// σ(n), the sum of the positive divisors of `n`.
pub fn divisor_sum(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

fn prime_table(limit: u64) -> std::borrow::Cow<'static, [u64]> {
    static DEFAULT: OnceLock<Vec<u64>> = OnceLock::new();
    let table = DEFAULT.get_or_init(|| primes(DEFAULT_TRIAL_LIMIT));
    if limit <= DEFAULT_TRIAL_LIMIT {
        let end = table.partition_point(|&p| p <= limit);
        std::borrow::Cow::Borrowed(&table[..end])
    } else {
        std::borrow::Cow::Owned(primes(limit))
    }
}

/// Prime factorization of `|n|` as a map prime → exponent.
///
/// Fails with [`Error::FactorizationLimit`] when a cofactor survives the
/// configured effort; no partial answer is ever returned.
pub fn factorize(n: &BigInt, effort: &FactorEffort) -> Result<BTreeMap<BigUint, u32>> {
    factor_impl(n, effort, false)
}

/// With `odd_only`, cofactors known to occur to an even power are dropped
/// unsplit: they cannot change the squarefree part.
fn factor_impl(n: &BigInt, effort: &FactorEffort, odd_only: bool) -> Result<BTreeMap<BigUint, u32>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut rest = n.magnitude().clone();
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let table = prime_table(effort.trial_limit);
    for &p in table.iter() {
        if rest.is_one() {
            break;
        }
        if rest.bits() < 128 {
            let small = rest.to_u128().expect("fits");
            if (p as u128) * (p as u128) > small {
                break;
            }
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.insert(BigUint::from(p), e);
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let limit = BigUint::from(effort.trial_limit);
    let mut budget = effort.rho_iterations;
    let mut pending = vec![(rest, 1u32)];
    while let Some((m, e)) = pending.pop() {
        if m.is_one() || (odd_only && e % 2 == 0) {
            continue;
        }
        // Every prime factor of m exceeds the trial bound.
        if m <= &limit * &limit || is_prime(&m, Some(PrimalityTestConfig::bpsw())).probably() {
            *out.entry(m).or_insert(0) += e;
            continue;
        }
        if let Some((root, k)) = perfect_power(&m) {
            pending.push((root, e * k));
            continue;
        }
        let factor = split(&m, &mut budget).ok_or_else(|| Error::FactorizationLimit(m.clone().into()))?;
        let cofactor = &m / &factor;
        pending.push((factor, e));
        pending.push((cofactor, e));
    }
    Ok(out)
}

/// Largest `k ≥ 2` with `m = r^k`, if any.
fn perfect_power(m: &BigUint) -> Option<(BigUint, u32)> {
    let max_k = m.bits() as u32;
    let mut best = None;
    for k in 2..=max_k {
        let r = m.nth_root(k);
        if r <= BigUint::one() {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *m {
            best = Some((r, k));
        }
    }
    best
}

fn split(m: &BigUint, budget: &mut usize) -> Option<BigUint> {
    let mut offset = 1u32;
    while *budget > 0 {
        let round = (*budget).min(1 << 16);
        let (found, used) = pollard_rho(m, BigUint::from(2u32), BigUint::from(offset), round);
        *budget = budget.saturating_sub(used.max(1));
        if let Some(f) = found {
            if !f.is_one() && f != *m {
                return Some(f);
            }
            offset += 1;
        } else if used < round {
            offset += 1;
        }
    }
    None
}

/// Product of the primes of `factors` that occur to an odd power.
pub fn odd_part_product<'a>(factors: impl IntoIterator<Item = (&'a BigUint, &'a u32)>) -> BigInt {
    factors
        .into_iter()
        .filter(|(_, e)| *e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
        .into()
}

/// The squarefree `s ≥ 1` with `|n| = s·m²`.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    squarefree_part_with(n, &FactorEffort::default())
}

pub fn squarefree_part_with(n: &BigInt, effort: &FactorEffort) -> Result<BigInt> {
    Ok(odd_part_product(&factor_impl(n, effort, true)?))
}
