use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("polynomial {0:?} is not primitive over F_{1}")]
    NotPrimitive(Vec<u32>, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input not allowed")]
    ZeroInput,
    #[error("(0, 0) is not a classifiable pair")]
    ZeroPair,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("Kloosterman lift coefficient t*C(t-i,i)/(t-i) is not integral at t={t}, i={i}")]
    NonIntegerCoefficient { t: u32, i: u32 },
    #[error("direct S = {direct} disagrees with Kloosterman-series S = {series}")]
    InconsistentS { direct: i64, series: i64 },
    #[error("transform size {size} exceeds memory budget {budget}")]
    DimensionTooLarge { size: u64, budget: u64 },
    #[error("distribution totals {total} codewords, expected p^k = {expected}")]
    DimensionMismatch { total: u128, expected: u128 },
    #[error("predicted frequency {0} is not divisible by {1}")]
    NonIntegralFrequency(i128, i128),
    #[error("module T meets F_p in a nonzero element")]
    IntersectionNotTrivial,
    #[error("dual distance outside [2, 4]")]
    BoundViolated,
    #[error("code has p^k = {0} codewords, exceeding the exhaustive-scan guard {1}")]
    TooLarge(u128, u128),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
