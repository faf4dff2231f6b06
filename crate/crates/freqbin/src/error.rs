//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bin spacing must be positive, got {0} rad/s")]
    InvalidSpacing(f64),
    #[error("empty mode window: lo {0} must be below hi {1}")]
    EmptyWindow(i32, i32),
    #[error("window [{lo}, {hi}] does not contain bins {min}..={max}")]
    WindowTooSmall { lo: i32, hi: i32, min: i32, max: i32 },
    #[error("harmonic index must be >= 1")]
    ZeroHarmonic,
    #[error("duplicate harmonic {0} in RF drive")]
    DuplicateHarmonic(u32),
    #[error("tone amplitude must be nonnegative, got {0} rad")]
    NegativeAmplitude(f64),
    #[error("shaper amplitude {amp} at bin {bin} is outside [0, 1]")]
    ShaperAmplitudeOutOfRange { bin: i32, amp: f64 },
    #[error("{n_samples} FFT samples cannot resolve a window of dimension {dim} (need a power of two above 2*dim)")]
    InsufficientSamples { n_samples: usize, dim: usize },
    #[error("bin {bin} lies outside the window [{lo}, {hi}]")]
    BinOutsideWindow { bin: i32, lo: i32, hi: i32 },
    #[error("matrix shape {rows}x{cols} does not match window dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },
    #[error("column {col} has norm {norm}, above the sub-unitarity bound")]
    ColumnNormExceeded { col: usize, norm: f64 },
    #[error("transforms are defined on different grids")]
    GridMismatch,
    #[error("computational bins {found:?} do not match the target assignment {expected:?}")]
    MisalignedBins { found: Vec<i32>, expected: Vec<i32> },
    #[error("success probability {0} is too small; fidelity is undefined")]
    DegenerateMetrics(f64),
    #[error("two-photon amplitude on pair ({0}, {1}) lies outside the window")]
    StateOutsideWindow(i32, i32),
    #[error("two-photon amplitudes have squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("window dimension {0} exceeds the Fock-basis oracle limit of {1}")]
    WindowTooLargeForOracle(usize, usize),
    #[error("no events recorded: N_C + N_I = 0")]
    NoEvents,
    #[error("invalid synthesis problem: {0}")]
    InvalidProblem(String),
    #[error("invalid PSO parameters: {0}")]
    InvalidPsoParams(String),
    #[error("field `{field}`: {message}")]
    InvalidField { field: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
