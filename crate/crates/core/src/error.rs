use thiserror::Error;

/// Errors raised by the arithmetic, formula and analysis layers.
///
/// Variants fall in two groups: input validation (bad parameters, malformed
/// files, size caps) and internal assertions that fire when an identity the
/// formulas guarantee does not hold. [`Error::is_assertion`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable mismatch: `{0}` vs `{1}`")]
    VariableMismatch(String, String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("coefficient domain mismatch")]
    DomainMismatch,
    #[error("constant term is not a unit")]
    NotUnit,
    #[error("constant term precondition violated: {0}")]
    ConstantTerm(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("dimension vector {0:?} is divisible")]
    Divisible(Vec<u32>),
    #[error("the variety is empty for {0}")]
    EmptyVariety(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("result is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("negative coefficient: {0}")]
    NegativeCoefficient(String),
    #[error("truncation insufficient: {0}")]
    Truncation(String),
    #[error("group action is not free: {0}")]
    NonFree(String),
    #[error("identity check failed: {0}")]
    Identity(String),
}

impl Error {
    /// True for failures of internal consistency checks (as opposed to bad input).
    pub fn is_assertion(&self) -> bool {
        matches!(
            self,
            Error::NonPolynomial(_)
                | Error::NegativeCoefficient(_)
                | Error::Truncation(_)
                | Error::Identity(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
