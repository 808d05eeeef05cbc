use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FbmhError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence in {context}: value {value:e}, error estimate {error_estimate:e} after {evaluations} evaluations")]
    NonConvergence { context: String, value: f64, error_estimate: f64, evaluations: usize },

    #[error("sigma_H^2 has a pole at H = 3/4")]
    PoleAtThreeQuarters,

    #[error("circulant embedding and dense factorization both failed: {0}")]
    EmbeddingFailure(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl FbmhError {
    pub fn domain(msg: impl Into<String>) -> Self {
        FbmhError::Domain(msg.into())
    }

    /// Prefix the context of a non-convergence error, leaving other variants untouched.
    pub fn within(self, outer: &str) -> Self {
        match self {
            FbmhError::NonConvergence { context, value, error_estimate, evaluations } => {
                FbmhError::NonConvergence { context: format!("{outer}/{context}"), value, error_estimate, evaluations }
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, FbmhError>;
