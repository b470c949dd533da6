use thiserror::Error;

use crate::arith::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow")]
    Overflow,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("negative argument")]
    Negative,
    #[error("divisor {0} is not positive")]
    NonPositiveDivisor(Int),
    #[error("{x} is not invertible modulo {n}")]
    NotInvertible { x: Int, n: Int },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("generators must be positive, got {0}")]
    NonPositive(Int),
    #[error("generator 1 makes every integer representable; pass values >= 2")]
    Unit,
    #[error("generator {0} exceeds the cap 2^31-1")]
    TooLarge(Int),
    #[error("gcd of the generators is {0}, not 1")]
    GcdNotOne(Int),
    #[error("need at least two distinct generators")]
    TooFewDistinct,
    #[error("expected three distinct generators")]
    NotThreeDistinct,
}

/// Which structural assumption about the X-set failed at runtime.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureViolation {
    #[error("x_{index} = {value} lies outside 1..={r}")]
    OutOfRange { index: usize, value: Int, r: Int },
    #[error("x-sequence repeats the value {0}")]
    Repeated(Int),
    #[error("the minimum of X sits at index 0")]
    MinimumAtZero,
    #[error("no index w with x_w + min X in X")]
    NoW,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("X-set structure violation: {0}")]
    Structure(#[from] StructureViolation),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("sieve table of {needed} entries exceeds the cap of {cap}")]
    SieveTooLarge { needed: Int, cap: Int },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Turns a failed check into [`Error::Invariant`].
macro_rules! ensure_invariant {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure_invariant;
