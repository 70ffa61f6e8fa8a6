//! Error type shared by the spectral core.

use thiserror::Error;

/// Errors raised by field construction, transforms and the solver.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A frequency index falls outside the grid's retained band.
    #[error("frequency index ({m}, {n}) outside grid band [-{half_x}, {half_x}) x [-{half_y}, {half_y})")]
    IndexOutOfRange {
        m: i64,
        n: i64,
        half_x: i64,
        half_y: i64,
    },

    /// Conflicting coefficients were supplied for a Hermitian pair of a real field.
    #[error("Hermitian symmetry violated at ({m}, {n}): coefficient does not match the conjugate of its (-m, -n) partner")]
    HermitianViolation { m: i64, n: i64 },

    /// Two fields on different grids were combined.
    #[error("grid mismatch: {left_x}x{left_y} vs {right_x}x{right_y}")]
    GridMismatch {
        left_x: u32,
        left_y: u32,
        right_x: u32,
        right_y: u32,
    },

    /// Grid parameters violate the power-of-two / positivity contract.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A time interval with `t1 <= t0` was passed where forward integration is required.
    #[error("invalid time interval: t1 = {t1} must exceed t0 = {t0}")]
    InvalidInterval { t0: f64, t1: f64 },

    /// Solver configuration violates its contract.
    #[error("invalid solve configuration: {0}")]
    InvalidConfig(String),

    /// The time step violates the advective stability bound.
    #[error("time step {dt} violates the stability bound {bound} (c_cfl / (max|m| * |u|_inf))")]
    StabilityBound { dt: f64, bound: f64 },

    /// The solution left the configured ceiling or produced non-finite values.
    #[error("solution blow-up detected at t = {time}: {reason}")]
    BlowUp { time: f64, reason: String },

    /// A dyadic shell index exceeds the grid band.
    #[error("dyadic shell N = {n} exceeds the grid half-band {band}")]
    ShellOutOfRange { n: u64, band: u32 },

    /// Malformed SPF2 data.
    #[error("SPF2 format error: {0}")]
    Format(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
