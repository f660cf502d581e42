use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Channel parameters violate the positivity constraint |M|^2 <= N(N+1).
    #[error("infeasible channel: |M|^2 = {m_sq} exceeds N(N+1) = {bound} (constraint |M|^2 <= N(N+1))")]
    InfeasibleChannel { m_sq: f64, bound: f64 },

    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported convention: {0}")]
    UnsupportedConvention(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Two exact computations that must agree did not.
    #[error("numerical consistency failure: {0}")]
    Numerical(String),

    /// The analytic optimal-orientation rule does not cover this configuration.
    #[error("no analytic rule: {0}")]
    UnsupportedAnalytic(String),

    /// The quadrature grid cannot resolve the integrand.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
}
