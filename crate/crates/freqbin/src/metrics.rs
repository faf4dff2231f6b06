//! Gate quality metrics on the computational block.
//!
//! A windowed cascade is judged by its 4×4 computational block W_c against
//! the ideal analyzer unitary U. Because truncation makes W_c sub-unitary,
//! fidelity and success probability are scored separately:
//!
//! * success probability P = Tr(W_c†W_c)/4 — the average probability that
//!   a photon launched in a computational bin stays in the block;
//! * fidelity F = |Tr(W_c†U)|² / (16 P) — how well the block matches U in
//!   shape once its overall magnitude is divided out. Cauchy–Schwarz gives
//!   F ≤ 1, with equality exactly when W_c is a scalar multiple of U.
//!
//! Optimization minimizes C = P·log₁₀(max(1 − F, 1e−12)): the log rewards
//! each extra decade of infidelity equally, and the P factor breaks ties
//! toward brighter solutions. The floor keeps the cost finite once F
//! reaches the numerical ceiling.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::target::TargetUnitary;

/// Fidelity floor used inside the cost function.
pub const INFIDELITY_FLOOR: f64 = 1e-12;

/// Success probabilities below this are treated as degenerate (fidelity
/// would be a 0/0 ratio).
pub const MIN_SUCCESS_PROBABILITY: f64 = 1e-15;

/// Quality scores of one computational block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateMetrics {
    /// Shape match F with the target, in [0, 1] up to rounding.
    pub fidelity: f64,
    /// Average photon survival P in the computational block, in [0, 1].
    pub success_probability: f64,
    /// Optimization cost P·log₁₀(max(1 − F, 1e−12)); lower is better.
    pub cost: f64,
}

/// Scores a 4×4 computational block against the target unitary. The block
/// rows/columns must follow the same ascending-bin order as
/// [`TargetUnitary::mode_bins`].
pub fn gate_metrics(w_c: &Array2<Complex64>, target: &TargetUnitary) -> Result<GateMetrics> {
    if w_c.nrows() != 4 || w_c.ncols() != 4 {
        return Err(Error::ShapeMismatch { rows: w_c.nrows(), cols: w_c.ncols(), dim: 4 });
    }
    let u = target.matrix();
    let mut overlap = Complex64::new(0.0, 0.0);
    let mut power = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            overlap += w_c[(i, j)].conj() * u[(i, j)];
            power += w_c[(i, j)].norm_sqr();
        }
    }
    let success_probability = power / 4.0;
    if success_probability < MIN_SUCCESS_PROBABILITY {
        return Err(Error::DegenerateMetrics(success_probability));
    }
    let fidelity = overlap.norm_sqr() / (16.0 * success_probability);
    let cost = success_probability * (1.0 - fidelity).max(INFIDELITY_FLOOR).log10();
    Ok(GateMetrics { fidelity, success_probability, cost })
}

/// Largest element magnitude in a block — the experimental proxy for how
/// strongly any single bin-to-bin path is driven.
pub fn max_element_amplitude(w_c: &Array2<Complex64>) -> f64 {
    w_c.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Phase accumulated across a spectral separation `offset_hz` by a timing
/// offset of `jitter_s` seconds: 2π·f·Δt radians.
pub fn jitter_phase_bound(offset_hz: f64, jitter_s: f64) -> f64 {
    std::f64::consts::TAU * offset_hz * jitter_s
}

/// Timing offset that produces `max_phase_rad` of phase across
/// `offset_hz`: the inverse of [`jitter_phase_bound`].
///
/// Divides by 2π before the frequency so that the π-phase case is exact:
/// π/2π is exactly 0.5 in floating point, and 0.5/10¹⁰ rounds to the same
/// bits as the literal 50 ps.
pub fn required_jitter(offset_hz: f64, max_phase_rad: f64) -> f64 {
    max_phase_rad / std::f64::consts::TAU / offset_hz
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::{target_unitary, Encoding};

    #[test]
    fn scalar_multiple_of_target_has_unit_fidelity() {
        let t = target_unitary(Encoding::Adjacent);
        let gamma = Complex64::from_polar(0.83, 1.2);
        let w_c = t.matrix().mapv(|z| gamma * z);
        let m = gate_metrics(&w_c, &t).unwrap();
        assert!((m.fidelity - 1.0).abs() < 1e-14);
        assert!((m.success_probability - gamma.norm_sqr()).abs() < 1e-14);
        // At the fidelity ceiling the cost bottoms out at −12 P.
        assert!((m.cost + 12.0 * gamma.norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn identity_block_scores_zero_fidelity_against_interleaved() {
        let t = target_unitary(Encoding::Interleaved);
        let mut w_c = Array2::zeros((4, 4));
        for i in 0..4 {
            w_c[(i, i)] = Complex64::new(1.0, 0.0);
        }
        let m = gate_metrics(&w_c, &t).unwrap();
        // Tr(U†) = 0 for this target, so the overlap vanishes outright.
        assert!(m.fidelity < 1e-30);
        assert!((m.success_probability - 1.0).abs() < 1e-15);
        assert!(m.cost.abs() < 1e-15);
    }

    #[test]
    fn zero_block_is_degenerate() {
        let t = target_unitary(Encoding::Adjacent);
        let w_c = Array2::zeros((4, 4));
        assert!(matches!(gate_metrics(&w_c, &t), Err(Error::DegenerateMetrics(_))));
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let t = target_unitary(Encoding::Adjacent);
        let w_c = Array2::zeros((3, 4));
        assert!(gate_metrics(&w_c, &t).is_err());
    }

    #[test]
    fn max_amplitude_of_uniform_hadamard_block() {
        let t = target_unitary(Encoding::Interleaved);
        assert!((max_element_amplitude(t.matrix()) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn pi_phase_at_ten_gigahertz_is_exactly_fifty_picoseconds() {
        let dt = required_jitter(1.0e10, std::f64::consts::PI);
        assert_eq!(dt, 50.0e-12);
    }

    #[test]
    fn jitter_roundtrip() {
        let phase = jitter_phase_bound(1.0e10, required_jitter(1.0e10, std::f64::consts::PI));
        assert!((phase - std::f64::consts::PI).abs() < 1e-12);
    }
}
