use thiserror::Error;

/// Errors raised by the exact-arithmetic and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact: {0}")]
    NonExactDivision(String),

    #[error("operands come from different coefficient contexts")]
    MismatchedContexts,

    #[error("degree cap exceeded: {what} needs degree {degree}, cap is {cap}")]
    DegreeCap {
        what: String,
        degree: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("characteristic {p} divides d = {d}")]
    WildCharacteristic { p: u64, d: u64 },

    #[error("coefficient context does not contain the {0}-th roots of unity")]
    MissingRootsOfUnity(u64),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("no d-th root: {0}")]
    NoRoot(String),

    #[error("series outside the branch disk: T-order {order} is not > -{d}")]
    DiskCondition { order: i64, d: u64 },

    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),

    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
