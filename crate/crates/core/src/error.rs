use crate::exponent::Rational;

/// Errors raised by kernel operations.
///
/// Every variant has a stable machine-readable code, see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("input is zero")]
    ZeroInput,
    #[error("division by zero")]
    ZeroDivisor,
    #[error("element is zero to within its precision O(t^{0})")]
    ZeroWithinPrecision(Rational),
    #[error("available precision is insufficient: {0}")]
    PrecisionExhausted(&'static str),
    #[error("exponent denominator exceeds p^{0}")]
    CapExceeded(u32),
    #[error("exponent {0} does not have a power-of-p denominator")]
    BadExponent(Rational),
    #[error("invalid field parameters: {0}")]
    BadField(&'static str),
    #[error("invalid interval: {0}")]
    BadInterval(&'static str),
    #[error("element has negative ϖ-exponents but an A^r element is required")]
    NotIntegral,
    #[error("element is not a unit (positive degree over the interval)")]
    NotAUnit,
    #[error("multi-indices have different lengths")]
    LengthMismatch,
    #[error("element is not primitive of degree 1: {0}")]
    NotPrimitive(&'static str),
    #[error("primitive element cannot be brought to the shape ϖ - [u]")]
    NotMonicShape,
    #[error("slopes differ: {0} vs {1}")]
    SlopeMismatch(Rational, Rational),
    #[error("slope {0} lies outside the window")]
    SlopeOutsideWindow(Rational),
    #[error("root requires an extension of the residue field or of the value group")]
    NeedsFieldExtension,
    #[error("element is not a polynomial in ϖ with exact coefficients")]
    NotPolynomial,
    #[error("operands belong to different rings")]
    ContextMismatch,
    #[error("operation was cancelled")]
    Cancelled,
}

impl Error {
    /// Stable identifier used in machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput => "ZeroInput",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::ZeroWithinPrecision(_) => "ZeroWithinPrecision",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::CapExceeded(_) => "CapExceeded",
            Error::BadExponent(_) => "BadExponent",
            Error::BadField(_) => "BadField",
            Error::BadInterval(_) => "BadInterval",
            Error::NotIntegral => "NotIntegral",
            Error::NotAUnit => "NotAUnit",
            Error::LengthMismatch => "LengthMismatch",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::NotMonicShape => "NotMonicShape",
            Error::SlopeMismatch(..) => "SlopeMismatch",
            Error::SlopeOutsideWindow(_) => "SlopeOutsideWindow",
            Error::NeedsFieldExtension => "NeedsFieldExtension",
            Error::NotPolynomial => "NotPolynomial",
            Error::ContextMismatch => "ContextMismatch",
            Error::Cancelled => "Cancelled",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
