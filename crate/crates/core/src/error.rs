use thiserror::Error;

/// Errors produced by the pattern, polynomial and search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("illegal character {0:?} at offset {1}")]
    IllegalCharacter(char, usize),
    #[error("sign pattern must start with '+'")]
    LeadingMinus,
    #[error("degree-zero pattern has no order of moduli")]
    DegreeZero,
    #[error("invalid root set: {0}")]
    InvalidRootSet(String),
    #[error("coefficient of x^{0} vanishes")]
    ZeroCoefficient(usize),
    #[error("leading coefficient must be positive")]
    NonPositiveLeading,
    #[error("ratio must be a rational greater than 1")]
    InvalidRatio,
    #[error("ratio grew past 2^20 without reproducing the pattern")]
    RatioCapExceeded,
    #[error("order has {order_p} P / {order_n} N but pattern has {c} changes / {p} preservations")]
    IncompatibleCounts {
        order_p: usize,
        order_n: usize,
        c: usize,
        p: usize,
    },
    #[error("source pattern of W* must begin with (+,+)")]
    BadNormalization,
    #[error("degree {0} is below the minimum {1}")]
    DegreeTooSmall(usize, usize),
    #[error("degree {0} exceeds the exhaustive ceiling {1}")]
    DegreeTooLarge(usize, usize),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
