use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the decision procedures and constructors of this crate.
///
/// Verification failures are not errors; verifiers return a verdict with a
/// diagnostic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis is singular (determinant 0)")]
    SingularBasis,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("matrix has determinant {0}, expected 1")]
    NotSl2(BigInt),
    #[error("matrix is not hyperbolic (trace {0}, need trace > 2)")]
    NotHyperbolic(BigInt),
    #[error("traces differ ({0} vs {1})")]
    TraceMismatch(BigInt, BigInt),
    #[error("tr(A^{i}) = {trace_a} differs from tr(B^{j}) = {trace_b}")]
    ExponentMismatch {
        i: u64,
        j: u64,
        trace_a: BigInt,
        trace_b: BigInt,
    },
    #[error("genus must be at least 2, got {0}")]
    InvalidGenus(BigInt),
    #[error("orbifold (2,3,{0}) is not hyperbolic, need n >= 7")]
    InvalidOrbifold(BigInt),
    #[error("could not finish factoring {0} within the configured effort")]
    FactorizationLimit(BigInt),
    #[error("no common power trace within {steps} merge steps (last traces {last_a} and {last_b})")]
    StepLimitExceeded {
        steps: u64,
        last_a: BigInt,
        last_b: BigInt,
    },
    #[error("every intertwiner with coordinates up to {0} is singular")]
    NoNonsingularIntertwiner(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
