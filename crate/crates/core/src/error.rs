use thiserror::Error;

/// Errors raised by the spectral, geometric and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size must be even and at least 16, got {0}")]
    InvalidGridSize(usize),
    #[error("dealias fraction must lie in (0, 1], got {0}")]
    InvalidDealiasFraction(f64),
    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("operands live on different grids (n = {left} vs n = {right})")]
    GridMismatch { left: usize, right: usize },
    #[error("map is not orientation preserving: min phi_x = {min_phi_x:e}")]
    NotMonotone { min_phi_x: f64 },
    #[error("min phi_x = {min_phi_x:e} is below the floor {floor:e}")]
    BelowFloor { min_phi_x: f64, floor: f64 },
    #[error("diffeomorphism inversion failed to converge for target {target}")]
    InversionFailed { target: f64 },
    #[error("integration halted at t = {t}: {reason}")]
    Halted { t: f64, reason: String },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
