use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("UnitarityViolation: squared ladder coefficient at n = {n} is {value:e} < 0")]
    UnitarityViolation { n: usize, value: f64 },

    #[error("RootSolveFailure: no convergence after {iterations} iterations (residual {residual:e})")]
    RootSolveFailure { iterations: usize, residual: f64 },

    #[error("ConvergenceFailure: series not converged after {terms} terms")]
    ConvergenceFailure { terms: usize },

    #[error("DivergentSeries: {0}")]
    DivergentSeries(String),

    #[error("ZeroDenominator: lower parameter {index} hits a pole")]
    ZeroDenominator { index: usize },

    #[error("DomainError: {0}")]
    DomainError(String),

    #[error("DegenerateInput: {0}")]
    DegenerateInput(String),

    #[error("QuadratureFailure: estimated error {estimate:e} above tolerance {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },
}

impl Error {
    /// True for failures of an iterative numerical procedure, as opposed to
    /// rejected input.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::RootSolveFailure { .. } | Error::ConvergenceFailure { .. } | Error::QuadratureFailure { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
