use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigenvalue {mu} outside the open interval (-1, 1)")]
    EigenvalueOutOfRange { mu: String },

    #[error("spectrum has no entries")]
    EmptySpec,

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("Reeb parameter a = {a} must satisfy a > -1/2")]
    ReebParameterOutOfRange { a: String },

    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("root search failed: {0}")]
    SolverFailure(String),

    #[error("x = {x} outside the moment interval ({lower}, 1)")]
    DomainError { x: f64, lower: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e}) within {budget} panels")]
    QuadratureFailure { tol: f64, estimate: f64, budget: usize },

    #[error("rho = {rho} is beyond the range of B (reached {reached})")]
    RhoOutOfRange { rho: f64, reached: f64 },

    #[error("positivity margin {margin:e} <= 0 at rho = {rho}")]
    PositivityViolation { rho: f64, margin: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
