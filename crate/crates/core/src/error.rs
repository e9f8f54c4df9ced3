use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GhaError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no physical root: {0}")]
    NoPhysicalRoot(String),
    #[error("phase unavailable: {0}")]
    PhaseUnavailable(String),
    #[error("eigensolver did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("basis budget exceeded: dimension {dimension} > {limit}")]
    BudgetExceeded { dimension: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, GhaError>;
