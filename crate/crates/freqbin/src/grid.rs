//! Discrete frequency-bin grid.
//!
//! Every mode transform in this crate acts on a finite window of equally
//! spaced frequency bins ω_n = ω₀ + nΔω. The window is indexed by integer
//! bin labels `lo..=hi`; label 0 sits at the grid center ω₀. Guard bins on
//! both sides of the computational modes absorb scattering that would
//! otherwise alias, so truncation shows up as sub-unitarity instead of
//! fictitious recycling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of guard bins added on each side of the computational modes.
pub const DEFAULT_GUARD: u32 = 14;

const GHZ: f64 = 1.0e9;
const THZ: f64 = 1.0e12;

/// Equally spaced frequency-bin lattice with a finite index window.
///
/// The spacing and center are stored in the units they are specified in
/// (GHz and THz) so that configuration files round-trip exactly; the
/// `spacing_rad_s` / `center_rad_s` accessors convert on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    /// Bin spacing Δω/2π in GHz.
    pub spacing_ghz: f64,
    /// Center frequency ω₀/2π in THz (bin 0).
    pub center_thz: f64,
    /// Inclusive window of bin labels, `[lo, hi]`.
    window: (i32, i32),
}

impl FrequencyGrid {
    /// Builds a grid with an explicit window.
    pub fn new(spacing_ghz: f64, center_thz: f64, lo: i32, hi: i32) -> Result<Self> {
        if !(spacing_ghz > 0.0) {
            return Err(Error::InvalidSpacing(spacing_ghz * GHZ * std::f64::consts::TAU));
        }
        if lo >= hi {
            return Err(Error::EmptyWindow(lo, hi));
        }
        Ok(Self { spacing_ghz, center_thz, window: (lo, hi) })
    }

    /// Builds the window by padding a set of computational bins with `guard`
    /// extra bins on each side.
    pub fn with_guard(
        spacing_ghz: f64,
        center_thz: f64,
        computational_bins: &[i32],
        guard: u32,
    ) -> Result<Self> {
        let min = computational_bins.iter().copied().min().unwrap_or(0);
        let max = computational_bins.iter().copied().max().unwrap_or(0);
        Self::new(spacing_ghz, center_thz, min - guard as i32, max + guard as i32)
    }

    /// Bin spacing Δω in rad/s.
    pub fn spacing_rad_s(&self) -> f64 {
        std::f64::consts::TAU * self.spacing_ghz * GHZ
    }

    /// Center frequency ω₀ in rad/s.
    pub fn center_rad_s(&self) -> f64 {
        std::f64::consts::TAU * self.center_thz * THZ
    }

    /// Inclusive window `(lo, hi)` of bin labels.
    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    /// Number of bins in the window.
    pub fn dim(&self) -> usize {
        (self.window.1 - self.window.0) as usize + 1
    }

    /// Iterates over bin labels from `lo` to `hi`.
    pub fn bins(&self) -> impl Iterator<Item = i32> {
        self.window.0..=self.window.1
    }

    /// True when `bin` lies inside the window.
    pub fn contains(&self, bin: i32) -> bool {
        (self.window.0..=self.window.1).contains(&bin)
    }

    /// Row/column index of a bin label inside the window.
    pub fn index_of(&self, bin: i32) -> Result<usize> {
        if !self.contains(bin) {
            return Err(Error::BinOutsideWindow { bin, lo: self.window.0, hi: self.window.1 });
        }
        Ok((bin - self.window.0) as usize)
    }

    /// Bin label at a row/column index (inverse of [`index_of`](Self::index_of)).
    pub fn bin_at(&self, index: usize) -> i32 {
        self.window.0 + index as i32
    }

    /// Absolute frequency of a bin in rad/s.
    pub fn frequency_rad_s(&self, bin: i32) -> f64 {
        self.center_rad_s() + bin as f64 * self.spacing_rad_s()
    }

    /// Returns a copy of the grid with the window widened by `extra` bins on
    /// each side. Used for truncation-convergence checks.
    pub fn widened(&self, extra: u32) -> Self {
        Self {
            spacing_ghz: self.spacing_ghz,
            center_thz: self.center_thz,
            window: (self.window.0 - extra as i32, self.window.1 + extra as i32),
        }
    }
}
