//! Quantum frequency processor: EOM → pulse shaper → EOM cascades.
//!
//! The processor applies a first phase modulator, a line-by-line shaper
//! mask, and a second phase modulator. Both EOMs are Toeplitz in the bin
//! basis, so the cascade never needs their full matrices: every output
//! column is assembled directly from the two coefficient spectra and the
//! shaper diagonal. The full compose path and the four-column fast path
//! used inside optimization loops share that single kernel, so their
//! results agree bit for bit — not merely to rounding.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::drive::RfDrive;
use crate::eom::{scattering_coefficients, FFT_SAMPLES};
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::shaper::ShaperMask;
use crate::target::Encoding;
use crate::transform::ModeTransform;

/// Complete description of one analyzer configuration: the grid, the two
/// RF drives, the shaper mask, and which logical encoding the four
/// computational bins carry. This is the unit that solution files store.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QfpConfig {
    pub grid: FrequencyGrid,
    pub eom1: RfDrive,
    pub shaper: ShaperMask,
    pub eom2: RfDrive,
    pub encoding: Encoding,
}

impl QfpConfig {
    /// Validates the parts against each other: the window must contain the
    /// computational bins and every shaper entry.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.grid.window();
        for bin in self.encoding.logical_bins() {
            if !self.grid.contains(bin) {
                return Err(Error::BinOutsideWindow { bin, lo, hi });
            }
        }
        for e in &self.shaper.entries {
            if !self.grid.contains(e.bin) {
                return Err(Error::BinOutsideWindow { bin: e.bin, lo, hi });
            }
        }
        // Re-run the constructor checks so hand-built or deserialized
        // configs get the same scrutiny as ones built through the API.
        RfDrive::new(self.eom1.tones.clone())?;
        RfDrive::new(self.eom2.tones.clone())?;
        ShaperMask::new(self.shaper.entries.clone())?;
        Ok(())
    }

    /// Computational bins in logical order [A₀, A₁, B₀, B₁].
    pub fn computational_bins(&self) -> [i32; 4] {
        self.encoding.logical_bins()
    }
}

/// Builds the diagonal mode transform of a shaper mask on `grid`.
/// Every mask entry must address a bin inside the window.
pub fn build_shaper_operator(grid: &FrequencyGrid, mask: &ShaperMask) -> Result<ModeTransform> {
    let (lo, hi) = grid.window();
    for e in &mask.entries {
        if !grid.contains(e.bin) {
            return Err(Error::BinOutsideWindow { bin: e.bin, lo, hi });
        }
    }
    let dim = grid.dim();
    let mut matrix = Array2::zeros((dim, dim));
    for (i, bin) in grid.bins().enumerate() {
        matrix[(i, i)] = mask.coefficient(bin);
    }
    ModeTransform::new(*grid, matrix)
}

/// Spectra and diagonal needed to evaluate the cascade on any column.
struct CascadeParts {
    spec1: Vec<Complex64>,
    spec2: Vec<Complex64>,
    diag: Vec<Complex64>,
    dim: usize,
}

fn cascade_parts(cfg: &QfpConfig) -> Result<CascadeParts> {
    cfg.validate()?;
    let dim = cfg.grid.dim();
    // Toeplitz offsets span ±(dim − 1); scattering_coefficients validates
    // the FFT length against that.
    let spec1 = scattering_coefficients(&cfg.eom1, dim - 1)?;
    let spec2 = scattering_coefficients(&cfg.eom2, dim - 1)?;
    let diag: Vec<Complex64> = cfg.grid.bins().map(|b| cfg.shaper.coefficient(b)).collect();
    Ok(CascadeParts { spec1, spec2, diag, dim })
}

impl CascadeParts {
    /// Coefficient d_{m−n} from a centered spectrum slice.
    #[inline]
    fn toeplitz(spec: &[Complex64], dim: usize, m: usize, n: usize) -> Complex64 {
        // spec holds orders −(dim−1)..=(dim−1); index 0 is order −(dim−1).
        spec[(m + dim - 1) - n]
    }

    /// One output column of E₂ · S · E₁, accumulated in ascending
    /// intermediate-bin order. Both compose paths call this and nothing
    /// else, which is what makes them bitwise identical.
    fn column(&self, n: usize) -> Vec<Complex64> {
        let dim = self.dim;
        let mut mid = vec![Complex64::new(0.0, 0.0); dim];
        for p in 0..dim {
            mid[p] = self.diag[p] * Self::toeplitz(&self.spec1, dim, p, n);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (m, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (p, v) in mid.iter().enumerate() {
                acc += Self::toeplitz(&self.spec2, dim, m, p) * v;
            }
            *slot = acc;
        }
        out
    }
}

/// Composes the full cascade transform W = E₂ · S · E₁ over the window.
pub fn compose_qfp(cfg: &QfpConfig) -> Result<ModeTransform> {
    let parts = cascade_parts(cfg)?;
    let dim = parts.dim;
    let mut matrix = Array2::zeros((dim, dim));
    for n in 0..dim {
        let col = parts.column(n);
        for m in 0..dim {
            matrix[(m, n)] = col[m];
        }
    }
    ModeTransform::new(cfg.grid, matrix)
}

/// Evaluates only the cascade columns for `bins` (dim × bins.len()),
/// bitwise identical to the same columns of [`compose_qfp`].
pub fn qfp_columns(cfg: &QfpConfig, bins: &[i32]) -> Result<Array2<Complex64>> {
    let parts = cascade_parts(cfg)?;
    let mut out = Array2::zeros((parts.dim, bins.len()));
    for (j, &bin) in bins.iter().enumerate() {
        let n = cfg.grid.index_of(bin)?;
        let col = parts.column(n);
        for m in 0..parts.dim {
            out[(m, j)] = col[m];
        }
    }
    Ok(out)
}

/// The 4×4 computational block of the cascade in ascending-bin order
/// (−1, 0, 1, 2), the object gate metrics are computed from. Uses the
/// column kernel directly, so it matches [`compose_qfp`] bit for bit.
pub fn computational_block(cfg: &QfpConfig) -> Result<Array2<Complex64>> {
    let mut bins = cfg.computational_bins();
    bins.sort_unstable();
    let cols = qfp_columns(cfg, &bins)?;
    let mut block = Array2::zeros((4, 4));
    for (i, &bin) in bins.iter().enumerate() {
        let row = cfg.grid.index_of(bin)?;
        for j in 0..4 {
            block[(i, j)] = cols[(row, j)];
        }
    }
    Ok(block)
}

/// Number of FFT samples backing every EOM in a cascade (re-exported for
/// documentation and capacity checks in callers).
pub const CASCADE_FFT_SAMPLES: usize = FFT_SAMPLES;
