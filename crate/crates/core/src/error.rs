use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular metric")]
    SingularMetric,
    #[error("metric must be symmetric")]
    AsymmetricMetric,
    #[error("signature must be (+,+,−)")]
    BadSignature,
    #[error("not a Lie algebra (Jacobi defect {0})")]
    NotLieAlgebra(String),
    #[error("structure axiom {label} violated (residual {residual})")]
    AxiomViolation { label: String, residual: String },
    #[error("null section")]
    NullSection,
    #[error("direction is not orthogonal to ξ")]
    NotOrthogonal,
    #[error("restricted curvature form requires Qφ = φQ")]
    RequiresCommuting,
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
