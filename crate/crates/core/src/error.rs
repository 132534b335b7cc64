use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("NotSquareFree: radicand {0} has a square factor")]
    NotSquareFree(BigInt),
    #[error("RadicandTooSmall: radicand {0} must be at least 2")]
    RadicandTooSmall(BigInt),
    #[error("ZeroDenominator: denominator must be nonzero")]
    ZeroDenominator,
    #[error("ZeroIrrationalPart: coefficient of the square root must be nonzero")]
    ZeroIrrationalPart,
    /// Holds the offending value as `(a + b*sqrt(d))/c`.
    #[error("NegativeIrrationalPart: {0} cannot be written with a positive root coefficient; pass the conjugate explicitly")]
    NegativeIrrationalPart(String),
    #[error("PerfectSquareRadicand: {0} is a perfect square")]
    PerfectSquareRadicand(BigInt),
    #[error("IndexConventionFailure: no convergent alignment within one period reproduces the complete quotient")]
    IndexConventionFailure,
    #[error("SignUnresolvable: neither sign branch of the linear diophantine form vanishes at the base point")]
    SignUnresolvable,
    #[error("PerfectSquareDiscriminant: b^2 - 4 = {0} is a perfect square")]
    PerfectSquareDiscriminant(BigInt),
    #[error("BadDiscriminant: {0} is not a prime congruent to 3 mod 4")]
    BadDiscriminant(BigInt),
    #[error("InvalidDescriptor: {0}")]
    InvalidDescriptor(String),
    #[error("InvalidGenerators: {0}")]
    InvalidGenerators(String),
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
