use thiserror::Error;

/// Errors raised by the core numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector cannot represent a point of CP2")]
    ZeroVector,
    #[error("matrix is not special unitary (deviation {deviation:e})")]
    NotSpecialUnitary { deviation: f64 },
    #[error("matrix is not an element of su(3) (deviation {deviation:e})")]
    NotAlgebra { deviation: f64 },
    #[error("matrix is not a traceless Hermitian element of su(3)* (deviation {deviation:e})")]
    NotCoalgebra { deviation: f64 },
    #[error("eigenvalues ({0}, {1}, {2}) do not form a Weyl chamber point")]
    NotWeylPoint(f64, f64, f64),
    #[error("vortex strength {index} is zero")]
    ZeroStrength { index: usize },
    #[error("{points} points but {gammas} strengths")]
    LengthMismatch { points: usize, gammas: usize },
    #[error("configuration has no points")]
    EmptyConfig,
    #[error("operation supports N in {supported}, got N = {got}")]
    UnsupportedSize { got: usize, supported: &'static str },
    #[error("tangent vector {index} is not based at the configuration point")]
    BaseMismatch { index: usize },
    #[error("vector is not horizontal (|<Z, v>| = {overlap:e})")]
    NotHorizontal { overlap: f64 },
    #[error("points {i} and {j} collide (distance {distance:e})")]
    Collision { i: usize, j: usize, distance: f64 },
    #[error("invalid interaction table: {0}")]
    InvalidTable(&'static str),
    #[error("unknown preset name")]
    UnknownPreset,
    #[error("invalid integrator settings: {0}")]
    InvalidIntegrator(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
