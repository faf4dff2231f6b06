//! Target unitaries for Bell-state analysis on four frequency bins.
//!
//! Two qubits are carried by four computational bins: photon A occupies
//! modes A₀/A₁ and photon B occupies B₀/B₁. A Bell-state analyzer wants a
//! 50/50 beamsplitter (a Hadamard, up to phase) between each interfering
//! pair (A₀, B₀) and (A₁, B₁), so which photon produced which detection
//! is erased. Two bin assignments are supported and lead to different
//! mixing distances on the lattice:
//!
//! * **interleaved** — A₀, A₁ = ω₋₁, ω₁ and B₀, B₁ = ω₀, ω₂; each Hadamard
//!   couples bins one step apart.
//! * **adjacent** — A₀, A₁ = ω₋₁, ω₀ and B₀, B₁ = ω₁, ω₂; each Hadamard
//!   couples bins two steps apart.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Assignment of the logical modes A₀, A₁, B₀, B₁ onto bins −1, 0, 1, 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Interleaved,
    Adjacent,
}

impl Encoding {
    /// Computational bins in logical order [A₀, A₁, B₀, B₁].
    pub fn logical_bins(self) -> [i32; 4] {
        match self {
            Encoding::Interleaved => [-1, 1, 0, 2],
            Encoding::Adjacent => [-1, 0, 1, 2],
        }
    }
}

impl std::fmt::Display for Encoding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Encoding::Interleaved => write!(f, "interleaved"),
            Encoding::Adjacent => write!(f, "adjacent"),
        }
    }
}

/// Ideal 4×4 analyzer unitary for one encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetUnitary {
    encoding: Encoding,
    matrix: Array2<Complex64>,
}

/// Builds the ideal analyzer unitary for `encoding`.
///
/// The matrix rows and columns follow the bins in **ascending order**
/// (−1, 0, 1, 2), matching how the block is cut out of a full window
/// transform; [`TargetUnitary::mode_bins`] records that order.
pub fn target_unitary(encoding: Encoding) -> TargetUnitary {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rows: [[f64; 4]; 4] = match encoding {
        // Hadamards on the nearest-neighbor pairs (−1, 0) and (1, 2).
        Encoding::Interleaved => [
            [h, h, 0.0, 0.0],
            [h, -h, 0.0, 0.0],
            [0.0, 0.0, h, h],
            [0.0, 0.0, h, -h],
        ],
        // Hadamards on the next-nearest pairs (−1, 1) and (0, 2).
        Encoding::Adjacent => [
            [h, 0.0, h, 0.0],
            [0.0, h, 0.0, h],
            [h, 0.0, -h, 0.0],
            [0.0, h, 0.0, -h],
        ],
    };
    let matrix = Array2::from_shape_fn((4, 4), |(i, j)| Complex64::new(rows[i][j], 0.0));
    TargetUnitary { encoding, matrix }
}

impl TargetUnitary {
    /// Wraps an arbitrary 4×4 unitary as the synthesis target, keeping the
    /// bin assignment of `encoding`. Useful for sanity targets (identity,
    /// permutations) with a known exact optimum. The matrix must be
    /// unitary to 1e−10 and is interpreted in ascending-bin order.
    pub fn custom(
        encoding: Encoding,
        matrix: Array2<Complex64>,
    ) -> crate::error::Result<Self> {
        use crate::error::Error;
        if matrix.nrows() != 4 || matrix.ncols() != 4 {
            return Err(Error::ShapeMismatch { rows: matrix.nrows(), cols: matrix.ncols(), dim: 4 });
        }
        for i in 0..4 {
            for j in 0..4 {
                let dot: Complex64 = (0..4).map(|k| matrix[(k, i)].conj() * matrix[(k, j)]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot - expect).norm() > 1e-10 {
                    return Err(Error::InvalidField {
                        field: "matrix".into(),
                        message: format!("not unitary: column pair ({i}, {j}) off by {:.2e}", (dot - expect).norm()),
                    });
                }
            }
        }
        Ok(Self { encoding, matrix })
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    /// 4×4 unitary in ascending-bin order.
    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Bins labelling the matrix rows/columns, always ascending.
    pub fn mode_bins(&self) -> [i32; 4] {
        [-1, 0, 1, 2]
    }

    /// The same four bins in logical order [A₀, A₁, B₀, B₁].
    pub fn logical_bins(&self) -> [i32; 4] {
        self.encoding.logical_bins()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary(u: &Array2<Complex64>) -> bool {
        let n = u.nrows();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let dot: Complex64 = (0..n).map(|k| u[(k, i)].conj() * u[(k, j)]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                (dot - expect).norm() < 1e-14
            })
        })
    }

    #[test]
    fn both_targets_are_unitary() {
        assert!(is_unitary(target_unitary(Encoding::Interleaved).matrix()));
        assert!(is_unitary(target_unitary(Encoding::Adjacent).matrix()));
    }

    #[test]
    fn interleaved_mixes_nearest_neighbors() {
        let t = target_unitary(Encoding::Interleaved);
        let m = t.matrix();
        // (−1, 0) block live, no coupling into (1, 2).
        assert!(m[(0, 1)].norm() > 0.5);
        assert_eq!(m[(0, 2)], Complex64::new(0.0, 0.0));
        assert_eq!(t.logical_bins(), [-1, 1, 0, 2]);
    }

    #[test]
    fn adjacent_mixes_across_two_bins() {
        let t = target_unitary(Encoding::Adjacent);
        let m = t.matrix();
        assert!(m[(0, 2)].norm() > 0.5);
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(t.logical_bins(), [-1, 0, 1, 2]);
    }

    #[test]
    fn encoding_serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Encoding::Interleaved).unwrap(), "\"interleaved\"");
        let e: Encoding = serde_json::from_str("\"adjacent\"").unwrap();
        assert_eq!(e, Encoding::Adjacent);
    }
}
