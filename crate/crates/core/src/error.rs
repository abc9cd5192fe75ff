use thiserror::Error;

use crate::poly::Bideg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("composition must be nondecreasing, got {0:?}")]
    Unsorted(Vec<u32>),
    #[error("composition entries must be positive, got {0:?}")]
    NonPositive(Vec<u32>),
    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("element is not bihomogeneous")]
    NotHomogeneous,
    #[error("cache entry rejected: {0}")]
    Cache(String),
    #[error("integrity failure{}: {detail}", fmt_at(.at))]
    Integrity { at: Option<Bideg>, detail: String },
}

fn fmt_at(at: &Option<Bideg>) -> String {
    match at {
        Some((k, w)) => format!(" at bidegree ({k},{w})"),
        None => String::new(),
    }
}

impl FusionError {
    pub fn integrity(detail: impl Into<String>) -> Self {
        FusionError::Integrity {
            at: None,
            detail: detail.into(),
        }
    }

    pub fn integrity_at(at: Bideg, detail: impl Into<String>) -> Self {
        FusionError::Integrity {
            at: Some(at),
            detail: detail.into(),
        }
    }

    pub fn is_integrity(&self) -> bool {
        matches!(self, FusionError::Integrity { .. })
    }
}

pub type Result<T> = std::result::Result<T, FusionError>;
