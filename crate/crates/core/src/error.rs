use thiserror::Error;

/// Errors raised by the linear algebra, simulation and HHL layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("impossible outcome: probability {probability:e} is below the postselection tolerance")]
    ImpossibleOutcome { probability: f64 },

    #[error("not a product state: {mass:e} of the amplitude mass violates the fixed bits")]
    NotProductState { mass: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
