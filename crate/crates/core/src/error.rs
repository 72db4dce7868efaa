use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("hermite degree {degree} exceeds supported maximum {max}")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("invalid basis specification: {0}")]
    InvalidBasis(String),

    #[error("ill-conditioned basis: condition number {condition:.3e} exceeds {limit:.0e}")]
    IllConditioned { condition: f64, limit: f64 },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("quadrature order {0} out of range")]
    QuadratureOrder(usize),

    #[error("quadrature failed to converge: resolutions differ by {difference:.3e} (> {tolerance:.0e})")]
    QuadratureFailure { difference: f64, tolerance: f64 },

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    EigenNoConvergence(usize),

    #[error("position {position} outside grid [{min}, {max}]")]
    OutOfRange { position: f64, min: f64, max: f64 },

    #[error("outside trust region at r = {r}: crest value {crest:.3e} below threshold")]
    OutsideTrustRegion { r: f64, crest: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("resolvent pole: energy {energy} lies within {distance:.3e} of a Q-block eigenvalue")]
    ResolventPole { energy: f64, distance: f64 },

    #[error("self-consistent iteration did not converge in {iterations} steps (last change {last_change:.3e})")]
    NoConvergence { iterations: usize, last_change: f64 },

    #[error("insufficient resolution: Richardson error {error:.3e} exceeds tolerance {tolerance:.1e}")]
    ResolutionInsufficient { error: f64, tolerance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
