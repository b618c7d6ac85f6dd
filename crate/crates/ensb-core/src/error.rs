//! Error types shared across the crate.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Error {
    /// An input is outside the mathematical domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// A kinematic configuration makes the expression singular.
    Singular { what: &'static str },
    /// A numerical consistency bound was violated (e.g. a quantity that must
    /// be non-negative came out significantly negative).
    Inconsistent { what: &'static str, value: f64 },
    /// Series or quadrature did not converge; carries the achieved bound and
    /// the requested tolerance.
    Convergence { achieved: f64, requested: f64 },
    /// The requested evaluation exceeds the documented capability of the
    /// implementation (e.g. Bessel order/argument regime).
    Capability { what: &'static str },
    /// The channel or configuration is not supported by the formulas
    /// implemented here.
    Unsupported { what: &'static str },
    /// The channel carries no resonance (combined energy <= 0).
    NonResonant { omega: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "domain error: {what} (value {value:e})")
            }
            Error::Singular { what } => write!(f, "singular configuration: {what}"),
            Error::Inconsistent { what, value } => {
                write!(f, "numerical consistency violation: {what} (value {value:e})")
            }
            Error::Convergence { achieved, requested } => write!(
                f,
                "did not converge: achieved bound {achieved:e}, requested {requested:e}"
            ),
            Error::Capability { what } => write!(f, "beyond documented capability: {what}"),
            Error::Unsupported { what } => write!(f, "unsupported: {what}"),
            Error::NonResonant { omega } => {
                write!(f, "non-resonant channel: combined energy {omega:e} <= 0")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
