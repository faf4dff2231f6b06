//! Mode transforms: complex matrices acting on the bin window.
//!
//! A [`ModeTransform`] holds the field-mode scattering matrix W of some
//! optical element or cascade, with W[m, n] the amplitude taken from input
//! bin n to output bin m (row/column indices follow the grid window).
//! Because the window truncates an infinite lattice, a physical transform
//! is sub-unitary: every column norm is at most 1. Construction enforces
//! this up to a small numerical slack, which doubles as a sanity check on
//! the operators built elsewhere in the crate.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;

/// Slack allowed above 1 in the column-norm check, covering accumulated
/// rounding in FFTs and matrix products.
const COLUMN_NORM_SLACK: f64 = 1e-9;

/// Scattering matrix of an element (or cascade) on a frequency-bin window.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTransform {
    grid: FrequencyGrid,
    matrix: Array2<Complex64>,
}

impl ModeTransform {
    /// Wraps a matrix after checking its shape against the grid window and
    /// verifying sub-unitarity column by column.
    pub fn new(grid: FrequencyGrid, matrix: Array2<Complex64>) -> Result<Self> {
        let dim = grid.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::ShapeMismatch {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                dim,
            });
        }
        for (col, column) in matrix.columns().into_iter().enumerate() {
            let norm = column.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1.0 + COLUMN_NORM_SLACK {
                return Err(Error::ColumnNormExceeded { col, norm });
            }
        }
        Ok(Self { grid, matrix })
    }

    /// Identity transform on a window.
    pub fn identity(grid: FrequencyGrid) -> Self {
        let mut matrix = Array2::zeros((grid.dim(), grid.dim()));
        for i in 0..grid.dim() {
            matrix[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Self { grid, matrix }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Scattering amplitude from `in_bin` to `out_bin`.
    pub fn element(&self, out_bin: i32, in_bin: i32) -> Result<Complex64> {
        let m = self.grid.index_of(out_bin)?;
        let n = self.grid.index_of(in_bin)?;
        Ok(self.matrix[(m, n)])
    }

    /// Norm of each column (total scattered amplitude per input bin).
    pub fn column_norms(&self) -> Vec<f64> {
        self.matrix
            .columns()
            .into_iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }

    /// Extracts the square submatrix over `bins`, rows and columns in the
    /// order given. This is how the computational-mode block W_c is read out.
    pub fn submatrix(&self, bins: &[i32]) -> Result<Array2<Complex64>> {
        let idx: Vec<usize> = bins.iter().map(|&b| self.grid.index_of(b)).collect::<Result<_>>()?;
        let n = idx.len();
        let mut sub = Array2::zeros((n, n));
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                sub[(i, j)] = self.matrix[(r, c)];
            }
        }
        Ok(sub)
    }
}

/// Intensity spectrum at the output when a single classical line enters at
/// `input_bin`: pairs `(bin, |W[bin, input_bin]|²)` over the whole window.
pub fn classical_spectrum(w: &ModeTransform, input_bin: i32) -> Result<Vec<(i32, f64)>> {
    let n = w.grid().index_of(input_bin)?;
    Ok(w
        .grid()
        .bins()
        .enumerate()
        .map(|(m, bin)| (bin, w.matrix()[(m, n)].norm_sqr()))
        .collect())
}
