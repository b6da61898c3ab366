//! Error type shared across the crate.

/// Errors produced by model construction and analysis routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an input value was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to produce a usable result.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Adaptive quadrature hit its subdivision limit. The best estimate
    /// obtained so far is attached together with its error estimate.
    #[error(
        "quadrature did not converge: requested tol {tol:e}, achieved {achieved:e} \
         (best estimate {estimate:e})"
    )]
    QuadratureConvergence {
        estimate: f64,
        achieved: f64,
        tol: f64,
    },

    /// Configuration file, schema, or input-data problem.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
