//! RF drive waveforms for the electro-optic phase modulators.
//!
//! A modulator driven by a periodic voltage imprints the temporal phase
//! φ(t) = Σ_k m_k sin(kΔω t + θ_k), where each harmonic k of the bin
//! spacing contributes a modulation index m_k (radians) and a phase
//! offset θ_k. The waveform is 2π/Δω-periodic by construction, which is
//! what makes the modulator a ladder operator on the bin lattice.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One harmonic component of an RF drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tone {
    /// Harmonic order k of the bin spacing (k = 1 is the fundamental).
    pub k: u32,
    /// Modulation index m_k in radians.
    pub amp_rad: f64,
    /// Phase offset θ_k in radians.
    pub phase_rad: f64,
}

/// Periodic phase-modulation waveform, a sum of harmonics of Δω.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RfDrive {
    pub tones: Vec<Tone>,
}

impl RfDrive {
    /// Validates and wraps a list of tones. Harmonic orders must be
    /// unique and at least 1; modulation indices must be nonnegative.
    pub fn new(tones: Vec<Tone>) -> Result<Self> {
        let mut seen = Vec::with_capacity(tones.len());
        for t in &tones {
            if t.k == 0 {
                return Err(Error::ZeroHarmonic);
            }
            if !(t.amp_rad >= 0.0) {
                return Err(Error::NegativeAmplitude(t.amp_rad));
            }
            if seen.contains(&t.k) {
                return Err(Error::DuplicateHarmonic(t.k));
            }
            seen.push(t.k);
        }
        Ok(Self { tones })
    }

    /// Drive with no tones; the modulator becomes the identity.
    pub fn off() -> Self {
        Self { tones: Vec::new() }
    }

    /// Convenience constructor for a pure sinewave at harmonic `k`.
    pub fn single(k: u32, amp_rad: f64, phase_rad: f64) -> Result<Self> {
        Self::new(vec![Tone { k, amp_rad, phase_rad }])
    }

    /// Temporal phase φ at normalized time x = Δω·t (radians in, radians out).
    pub fn phase_at(&self, x: f64) -> f64 {
        self.tones
            .iter()
            .map(|t| t.amp_rad * (t.k as f64 * x + t.phase_rad).sin())
            .sum()
    }

    /// Largest absolute phase excursion over one period, sampled densely.
    ///
    /// 8192 samples resolve any drive whose highest harmonic is far below
    /// the Nyquist limit of the sampling, which holds for every drive this
    /// crate produces (harmonics of order a few).
    pub fn peak_deviation(&self) -> f64 {
        const SAMPLES: usize = 8192;
        (0..SAMPLES)
            .map(|s| {
                let x = std::f64::consts::TAU * s as f64 / SAMPLES as f64;
                self.phase_at(x).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Highest harmonic order present, or 0 for an inactive drive.
    pub fn max_harmonic(&self) -> u32 {
        self.tones.iter().map(|t| t.k).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_tones() {
        assert!(RfDrive::single(0, 1.0, 0.0).is_err());
        assert!(RfDrive::single(1, -0.5, 0.0).is_err());
        let dup = vec![
            Tone { k: 2, amp_rad: 1.0, phase_rad: 0.0 },
            Tone { k: 2, amp_rad: 0.5, phase_rad: 1.0 },
        ];
        assert!(RfDrive::new(dup).is_err());
    }

    #[test]
    fn phase_of_single_tone() {
        let d = RfDrive::single(1, 0.8, 0.3).unwrap();
        let x = 1.234;
        assert!((d.phase_at(x) - 0.8 * (x + 0.3).sin()).abs() < 1e-15);
    }

    #[test]
    fn peak_deviation_of_pure_sinewave_is_its_index() {
        let d = RfDrive::single(2, 0.8283, 0.7).unwrap();
        assert!((d.peak_deviation() - 0.8283).abs() < 1e-6);
    }

    #[test]
    fn off_drive_is_flat() {
        let d = RfDrive::off();
        assert_eq!(d.phase_at(0.9), 0.0);
        assert_eq!(d.peak_deviation(), 0.0);
        assert_eq!(d.max_harmonic(), 0);
    }
}
