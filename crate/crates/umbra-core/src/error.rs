//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong during an exact computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero element of Q(L).
    DivisionByZero,
    /// A rational function was evaluated at a root of its denominator.
    PoleAtEvaluation,
    /// `divide_by_x` was asked to divide a polynomial with nonzero constant
    /// term; for transfer this signals that `p_n(0) = 0` failed.
    ConstantTermNonzero,
    /// Two series with different truncation orders were combined, or a
    /// coefficient beyond the truncation order was requested.
    TruncationMismatch,
    /// Multiplicative inverse of a series with zero constant term (or a
    /// quotient whose denominator vanishes up to the truncation order).
    NotInvertible,
    /// An operation that needs a delta series (order exactly 1) got
    /// something else.
    NotDelta,
    /// A constructor or grid was given parameters outside its domain.
    BadParameter(String),
    /// A composition-sum enumeration would exceed the configured cap.
    RangeTooLarge,
    /// Textual input did not match the expected grammar.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero in Q(L)"),
            Error::PoleAtEvaluation => write!(f, "evaluation at a pole of the denominator"),
            Error::ConstantTermNonzero => {
                write!(
                    f,
                    "constant term is nonzero; polynomial is not divisible by x"
                )
            }
            Error::TruncationMismatch => write!(f, "series truncation orders do not match"),
            Error::NotInvertible => write!(f, "series is not invertible (zero constant term)"),
            Error::NotDelta => write!(f, "series is not a delta series (order != 1)"),
            Error::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
            Error::RangeTooLarge => write!(f, "requested range exceeds the configured cap"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
