use thiserror::Error;

use crate::basis::BasisKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial degree {p} outside supported range 1..={max}")]
    InvalidDegree { p: usize, max: usize },

    #[error("Newton iteration for {what} did not converge after {iterations} iterations")]
    NewtonDiverged { what: &'static str, iterations: usize },

    #[error("singular matrix: {0}")]
    SingularMatrix(&'static str),

    #[error("SBP residual {residual:e} exceeds tolerance {tol:e} for {kind} at p = {p}")]
    SbpViolation {
        kind: BasisKind,
        p: usize,
        residual: f64,
        tol: f64,
    },

    #[error("{0} has no nodes; a nodal basis is required")]
    NotNodal(BasisKind),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("flux {0} is not applicable here")]
    FluxMismatch(crate::fluxes::FluxKind),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite coefficient in solution state")]
    NonFinite,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
