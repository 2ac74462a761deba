use thiserror::Error;

/// Errors raised by model construction, quadrature and the eigenvalue oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("model validation failed: {check} (witness x = {witness})")]
    Validation { check: &'static str, witness: f64 },

    #[error("quadrature did not converge within the panel budget ({detail})")]
    QuadratureBudget { detail: String },

    #[error("degenerate test function: variance {variance:e} below threshold")]
    DegenerateTestFunction { variance: f64 },

    #[error("grid construction failed: {0}")]
    Grid(String),

    #[error("assembly error: {0}")]
    Assembly(String),

    #[error("assembly kernel violated: smallest eigenvalue {kernel:e} exceeds {tol:e}")]
    KernelViolated { kernel: f64, tol: f64 },

    #[error("{op} evaluated at a singular point x = {x}")]
    SingularPoint { op: &'static str, x: f64 },

    #[error("empty grid passed to {0}")]
    EmptyGrid(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
