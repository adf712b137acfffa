use alloc::string::String;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("{op}: argument outside domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: no convergence after {iterations} iterations")]
    NonConvergence { op: &'static str, iterations: usize },

    #[error("{op}: bracket endpoints do not change sign")]
    NoSignChange { op: &'static str },

    #[error("{op}: derivative vanished near the iterate")]
    DerivativeVanished { op: &'static str },

    #[error("polynomial degree {0} exceeds the supported maximum of 8")]
    DegreeTooHigh(usize),

    #[error("{op}: division by a vanishing denominator")]
    DivisionByZero { op: &'static str },

    #[error("{check}: residual {residual} exceeds tolerance")]
    ResidualTooLarge { check: &'static str, residual: String },

    #[error("{op}: non-finite intermediate value")]
    NonFinite { op: &'static str },

    #[error("invalid numeric context: {0}")]
    InvalidContext(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl NumError {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        NumError::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = core::result::Result<T, NumError>;
