use thiserror::Error;

/// Errors raised by the number system and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grid parameters: {0}")]
    InvalidParams(String),
    #[error("mantissa has {got} digits, expected {expected}")]
    WrongMantissaLength { expected: usize, got: usize },
    #[error("digit {digit} is out of range for base {k}")]
    DigitOutOfRange { digit: u32, k: u32 },
    #[error("zero must be written with sign + and exponent 0")]
    NonCanonicalZero,
    #[error("free-exponent significand must have a nonzero leading digit")]
    NotNormalized,
    #[error("operands carry different grid parameters")]
    ParamsMismatch,
    #[error("ordering step is undefined at the origin")]
    UndefinedAtOrigin,
    #[error("region exponent left the representable i64 range")]
    ExponentOverflow,
    #[error("expected {expected} entries, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("window would contain {size} points, cap is {cap}")]
    WindowTooLarge { size: u128, cap: u128 },
    #[error("malformed string {input:?}: {reason}")]
    MalformedString { input: String, reason: String },
    #[error("outcome has {figures} figures, target grid holds at most {max}")]
    PrecisionExceedsTarget { figures: usize, max: usize },
    #[error("outcome value {0} is not a point of the target grid")]
    NotOnGrid(String),
    #[error("measured quantity must be nonnegative, got {0}")]
    NegativeQuantity(String),
    #[error("time coordinate t = 0 is excluded in this context")]
    ExcludedTimeOrigin,
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate basis label {0}")]
    DuplicateLabel(String),
    #[error("amplitude attached to singular position {0}")]
    SingularLabel(String),
}

impl Error {
    /// Stable snake_case name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::WrongMantissaLength { .. } => "wrong_mantissa_length",
            Error::DigitOutOfRange { .. } => "digit_out_of_range",
            Error::NonCanonicalZero => "non_canonical_zero",
            Error::NotNormalized => "not_normalized",
            Error::ParamsMismatch => "params_mismatch",
            Error::UndefinedAtOrigin => "undefined_at_origin",
            Error::ExponentOverflow => "exponent_overflow",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::WindowTooLarge { .. } => "window_too_large",
            Error::MalformedString { .. } => "malformed_string",
            Error::PrecisionExceedsTarget { .. } => "precision_exceeds_target",
            Error::NotOnGrid(_) => "not_on_grid",
            Error::NegativeQuantity(_) => "negative_quantity",
            Error::ExcludedTimeOrigin => "excluded_time_origin",
            Error::DivisionByZero => "division_by_zero",
            Error::DuplicateLabel(_) => "duplicate_label",
            Error::SingularLabel(_) => "singular_label",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
