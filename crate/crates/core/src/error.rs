use thiserror::Error;

/// Errors raised by exact computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("the zero series has no valuation")]
    ZeroSeries,
    #[error("truncation budget of {budget} coefficients is insufficient")]
    InsufficientBudget { budget: usize },
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("spectrum is not rational")]
    IrrationalSpectrum,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element does not act nilpotently: {0}")]
    NotNilpotent(String),
    #[error("element is not regular")]
    NotRegular,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    /// An identity that must hold by theory failed on a concrete instance.
    #[error("claim falsified ({claim}): {detail}")]
    Falsified { claim: String, detail: String },
}

impl Error {
    pub fn falsified(claim: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Falsified {
            claim: claim.into(),
            detail: detail.into(),
        }
    }

    /// True for errors that a retry with a larger truncation budget may cure.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::InsufficientBudget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
