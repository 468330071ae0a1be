use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: bad slope, Hasse-Arf failure, inconsistent concrete data.
    Validation(String),
    PlaceMismatch { expected: &'static str, found: &'static str },
    FieldMismatch,
    /// A concrete field value was needed but the point is purely symbolic.
    SymbolicPointUnsupported(String),
    /// A boundary functor needing totally wild input was handed a tame part.
    NotTotallyWild,
    InsufficientTwistData(String),
    InsufficientInnerData(String),
    /// Swan conductor of an equal-slope product not determined by break data.
    NeedsCancellationData(String),
    HypothesisViolated(String),
    NegativeA0(i64),
    PoleOrderDivisibleByP { order: u64, p: u64 },
    /// Internal consistency check tripped; indicates a bug.
    Inconsistent(String),
}

impl Error {
    /// Errors that mean "the input is fine but under-determined".
    pub fn is_insufficient(&self) -> bool {
        matches!(
            self,
            Error::InsufficientTwistData(_)
                | Error::InsufficientInnerData(_)
                | Error::NeedsCancellationData(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "Validation",
            Error::PlaceMismatch { .. } => "PlaceMismatch",
            Error::FieldMismatch => "FieldMismatch",
            Error::SymbolicPointUnsupported(_) => "SymbolicPointUnsupported",
            Error::NotTotallyWild => "NotTotallyWild",
            Error::InsufficientTwistData(_) => "InsufficientTwistData",
            Error::InsufficientInnerData(_) => "InsufficientInnerData",
            Error::NeedsCancellationData(_) => "NeedsCancellationData",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NegativeA0(_) => "NegativeA0",
            Error::PoleOrderDivisibleByP { .. } => "PoleOrderDivisibleByP",
            Error::Inconsistent(_) => "Inconsistent",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(m) => write!(f, "validation error: {m}"),
            Error::PlaceMismatch { expected, found } => {
                write!(f, "expected a representation at {expected}, found one at {found}")
            }
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::SymbolicPointUnsupported(m) => write!(f, "point has no concrete value: {m}"),
            Error::NotTotallyWild => write!(f, "input has a tame part (slope 0)"),
            Error::InsufficientTwistData(m) => write!(f, "slope-1 twist unknown: {m}"),
            Error::InsufficientInnerData(m) => write!(f, "slope-1 inner representation unknown: {m}"),
            Error::NeedsCancellationData(m) => write!(f, "cancellation term required: {m}"),
            Error::HypothesisViolated(m) => write!(f, "hypothesis violated: {m}"),
            Error::NegativeA0(a) => write!(f, "middle coefficient a_0 = {a} is negative"),
            Error::PoleOrderDivisibleByP { order, p } => {
                write!(f, "pole order {order} is divisible by the characteristic {p}")
            }
            Error::Inconsistent(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
