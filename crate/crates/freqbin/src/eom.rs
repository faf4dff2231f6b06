//! Electro-optic modulator scattering operators.
//!
//! An EOM driven with the periodic phase φ(t) multiplies the field by
//! e^{iφ(t)}, which on the bin lattice is a Toeplitz ladder operator:
//! input bin n scatters to output bin m with amplitude d_{m−n}, the
//! (m−n)-th Fourier coefficient of e^{iφ}. The coefficients are taken
//! from a single forward FFT of e^{iφ(t)} sampled over one period. For a
//! pure sinewave they reduce to Bessel functions (d_j = J_j(m)e^{ijθ}),
//! which the test suite uses as an independent cross-check.
//!
//! Since |e^{iφ}| = 1, the full coefficient sequence satisfies
//! Σ_j |d_j|² = 1 exactly (discrete Parseval), so every column of the
//! windowed operator has norm ≤ 1: truncation only ever loses amplitude.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::drive::RfDrive;
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::transform::ModeTransform;

/// Samples per modulation period used for the FFT. A power of two well
/// above twice the window dimension keeps the aliased tail of the
/// coefficient sequence (orders ≥ N − dim) negligible at f64 precision.
pub const FFT_SAMPLES: usize = 1024;

/// Fourier coefficients d_j of e^{iφ(t)} for j = −max_order..=max_order,
/// returned with d_{−max_order} first (index j + max_order).
pub fn scattering_coefficients(drive: &RfDrive, max_order: usize) -> Result<Vec<Complex64>> {
    let spectrum = modulation_spectrum(drive, FFT_SAMPLES, max_order)?;
    Ok(((-(max_order as i64))..=(max_order as i64))
        .map(|j| spectrum[j.rem_euclid(FFT_SAMPLES as i64) as usize])
        .collect())
}

/// Full FFT of e^{iφ} over one period, normalized so that entry q holds
/// d_q for 0 ≤ q < n/2 and d_{q−n} for the upper half.
fn modulation_spectrum(
    drive: &RfDrive,
    n_samples: usize,
    max_order: usize,
) -> Result<Vec<Complex64>> {
    if n_samples < 2 * max_order + 2 {
        return Err(Error::InsufficientSamples { n_samples, dim: max_order + 1 });
    }
    let mut buf: Vec<Complex64> = (0..n_samples)
        .map(|s| {
            let x = std::f64::consts::TAU * s as f64 / n_samples as f64;
            Complex64::from_polar(1.0, drive.phase_at(x))
        })
        .collect();
    // Planners cache twiddle factors per size; reuse one per thread so the
    // optimizer's hot loop doesn't replan 1024-point FFTs on every call.
    thread_local! {
        static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n_samples)).process(&mut buf);
    let scale = 1.0 / n_samples as f64;
    for z in &mut buf {
        *z *= scale;
    }
    Ok(buf)
}

/// Builds the windowed scattering matrix of an EOM under `drive`.
///
/// The result is Toeplitz — element (m, n) is d_{m−n} — and sub-unitary
/// by construction. An inactive drive yields the identity up to FFT
/// round-off (≲ 1e−15 per element).
pub fn build_eom_operator(grid: &FrequencyGrid, drive: &RfDrive) -> Result<ModeTransform> {
    let dim = grid.dim();
    // The largest order appearing in the window is ±(dim − 1).
    let spectrum = modulation_spectrum(drive, FFT_SAMPLES, dim - 1)?;
    let mut matrix = ndarray::Array2::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            let j = m as i64 - n as i64;
            matrix[(m, n)] = spectrum[j.rem_euclid(FFT_SAMPLES as i64) as usize];
        }
    }
    ModeTransform::new(*grid, matrix)
}
