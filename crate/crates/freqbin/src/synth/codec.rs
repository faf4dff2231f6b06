//! Flat parameter vectors ↔ QFP configurations.
//!
//! The optimizer works on a bounded real vector; this codec gives that
//! vector a fixed meaning:
//!
//! ```text
//! [eom1 amps | eom1 phases | eom2 amps | eom2 phases | shaper phases]
//! ```
//!
//! with one slot per free harmonic (ascending order) in each EOM section
//! and one per free shaper design bin (ascending). The shaper phase of
//! bin A₀ is pinned to 0 and gets no slot: a constant offset on every
//! shaper line is a global phase on the whole transform, so pinning one
//! line removes that flat direction from the search space without
//! excluding any physically distinct solution.

use std::f64::consts::TAU;

use crate::drive::{RfDrive, Tone};
use crate::grid::FrequencyGrid;
use crate::qfp::QfpConfig;
use crate::shaper::{MaskEntry, ShaperMask};
use crate::target::Encoding;

use super::SynthesisProblem;

/// Bidirectional map between bounded parameter vectors and [`QfpConfig`]s.
#[derive(Debug, Clone)]
pub struct ParameterCodec {
    grid: FrequencyGrid,
    encoding: Encoding,
    /// Free harmonic orders per EOM, ascending.
    harmonics: Vec<u32>,
    /// Design bins whose phase is free (pinned bin excluded), ascending.
    free_bins: Vec<i32>,
    /// Bin whose shaper phase is fixed at 0 (A₀'s bin).
    pinned_bin: i32,
    amp_bound: f64,
}

impl ParameterCodec {
    /// Codec for a problem's full search space.
    pub fn for_problem(problem: &SynthesisProblem) -> Self {
        Self::with_harmonics(problem, &problem.free_harmonics)
    }

    /// Codec with the EOM tone set restricted to `harmonics` (used by the
    /// constrained search). The slice must already be sorted and unique.
    pub fn with_harmonics(problem: &SynthesisProblem, harmonics: &[u32]) -> Self {
        let pinned_bin = problem.target.logical_bins()[0];
        let (lo, hi) = problem.shaper_design_bins;
        let free_bins = (lo..=hi).filter(|&b| b != pinned_bin).collect();
        Self {
            grid: problem.grid,
            encoding: problem.target.encoding(),
            harmonics: harmonics.to_vec(),
            free_bins,
            pinned_bin,
            amp_bound: problem.amp_bound_rad,
        }
    }

    /// Number of vector components.
    pub fn dim(&self) -> usize {
        4 * self.harmonics.len() + self.free_bins.len()
    }

    /// Per-component (lo, hi) box bounds, in vector layout order.
    pub fn bounds(&self) -> Vec<(f64, f64)> {
        let mut b = Vec::with_capacity(self.dim());
        for _ in 0..2 {
            for _ in &self.harmonics {
                b.push((0.0, self.amp_bound));
            }
            for _ in &self.harmonics {
                b.push((0.0, TAU));
            }
        }
        for _ in &self.free_bins {
            b.push((0.0, TAU));
        }
        b
    }

    /// Marks which components are phases, i.e. live on a circle rather
    /// than an interval. Same layout order as [`Self::bounds`].
    pub fn periodic_dims(&self) -> Vec<bool> {
        let mut p = Vec::with_capacity(self.dim());
        for _ in 0..2 {
            p.extend(std::iter::repeat(false).take(self.harmonics.len()));
            p.extend(std::iter::repeat(true).take(self.harmonics.len()));
        }
        p.extend(std::iter::repeat(true).take(self.free_bins.len()));
        p
    }

    /// Rebuilds the configuration a vector describes. Components outside
    /// the box are clipped (amplitudes to [0, bound], phases to [0, 2π),
    /// with the 2π endpoint wrapping to 0), so any real vector decodes.
    pub fn decode(&self, v: &[f64]) -> QfpConfig {
        assert_eq!(v.len(), self.dim(), "parameter vector length");
        let h = self.harmonics.len();
        let drive = |amps: &[f64], phases: &[f64]| {
            let tones = self
                .harmonics
                .iter()
                .zip(amps.iter().zip(phases))
                .map(|(&k, (&a, &p))| Tone {
                    k,
                    amp_rad: a.clamp(0.0, self.amp_bound),
                    phase_rad: p.clamp(0.0, TAU).rem_euclid(TAU),
                })
                .collect();
            RfDrive::new(tones).expect("codec emits valid tone lists")
        };
        let eom1 = drive(&v[0..h], &v[h..2 * h]);
        let eom2 = drive(&v[2 * h..3 * h], &v[3 * h..4 * h]);
        let mut entries: Vec<MaskEntry> = self
            .free_bins
            .iter()
            .zip(&v[4 * h..])
            .map(|(&bin, &p)| MaskEntry {
                bin,
                phase_rad: p.clamp(0.0, TAU).rem_euclid(TAU),
                amp: 1.0,
            })
            .collect();
        entries.push(MaskEntry { bin: self.pinned_bin, phase_rad: 0.0, amp: 1.0 });
        entries.sort_by_key(|e| e.bin);
        QfpConfig {
            grid: self.grid,
            eom1,
            eom2,
            shaper: ShaperMask::new(entries).expect("codec emits valid masks"),
            encoding: self.encoding,
        }
    }

    /// Reads a configuration back into vector form. Harmonics or design
    /// bins the config does not mention encode as 0.
    pub fn encode(&self, cfg: &QfpConfig) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.dim());
        for drive in [&cfg.eom1, &cfg.eom2] {
            let tone = |k: u32| drive.tones.iter().find(|t| t.k == k);
            for &k in &self.harmonics {
                v.push(tone(k).map_or(0.0, |t| t.amp_rad));
            }
            for &k in &self.harmonics {
                v.push(tone(k).map_or(0.0, |t| t.phase_rad));
            }
        }
        for &bin in &self.free_bins {
            let phase = cfg
                .shaper
                .entries
                .iter()
                .find(|e| e.bin == bin)
                .map_or(0.0, |e| e.phase_rad);
            v.push(phase);
        }
        v
    }
}
