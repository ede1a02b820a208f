use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge after {evaluations} evaluations (estimate {estimate:e}, error {error:e})")]
    QuadratureNotConverged { estimate: f64, error: f64, evaluations: usize },

    #[error(
        "minimizer did not converge after {iterations} iterations (best point {best_point:?}, value {best_value:e})"
    )]
    NotConverged { iterations: usize, best_point: Vec<f64>, best_value: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
