//! Pulse-shaper line masks.
//!
//! A Fourier-transform pulse shaper addresses each frequency bin
//! individually and multiplies it by amp·e^{iφ}. Bins without an explicit
//! entry pass through unchanged (amp 1, phase 0), so a mask only needs to
//! list the lines it actually touches.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mask value applied to a single bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaskEntry {
    /// Bin label the entry applies to.
    pub bin: i32,
    /// Phase shift in radians.
    pub phase_rad: f64,
    /// Amplitude transmission in [0, 1].
    pub amp: f64,
}

/// Line-by-line phase (and optional amplitude) mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShaperMask {
    pub entries: Vec<MaskEntry>,
}

impl ShaperMask {
    /// Validates and wraps mask entries. Amplitudes must lie in [0, 1];
    /// a bin may appear at most once.
    pub fn new(entries: Vec<MaskEntry>) -> Result<Self> {
        let mut seen = Vec::with_capacity(entries.len());
        for e in &entries {
            if !(0.0..=1.0).contains(&e.amp) {
                return Err(Error::ShaperAmplitudeOutOfRange { bin: e.bin, amp: e.amp });
            }
            if seen.contains(&e.bin) {
                return Err(Error::InvalidField {
                    field: "shaper.entries".into(),
                    message: format!("bin {} listed twice", e.bin),
                });
            }
            seen.push(e.bin);
        }
        Ok(Self { entries })
    }

    /// All-pass mask (identity shaper).
    pub fn flat() -> Self {
        Self { entries: Vec::new() }
    }

    /// Builds a unit-transmission mask from (bin, phase) pairs.
    pub fn phase_only(pairs: &[(i32, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(bin, phase_rad)| MaskEntry { bin, phase_rad, amp: 1.0 })
                .collect(),
        )
    }

    /// Complex transmission applied to `bin` (1 for unlisted bins).
    pub fn coefficient(&self, bin: i32) -> Complex64 {
        self.entries
            .iter()
            .find(|e| e.bin == bin)
            .map(|e| e.amp * Complex64::from_polar(1.0, e.phase_rad))
            .unwrap_or(Complex64::new(1.0, 0.0))
    }
}
