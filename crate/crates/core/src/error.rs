use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("invalid group selector `{input}`: {reason}")]
    InvalidGroup { input: String, reason: String },
    #[error("invalid frame metric: {0}")]
    InvalidMetric(String),
    #[error("sampling for {what} infeasible after {attempts} attempts")]
    Infeasible { what: String, attempts: usize },
}
