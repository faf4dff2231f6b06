//! Figure-ready description of a synthesized solution.
//!
//! The report carries exactly the data a drive-pattern figure needs: the
//! temporal phase of each EOM sampled over one RF period, the shaper
//! phase on every window bin, and the computational block in
//! amplitude/phase form, together with the scores. Everything is plain
//! numbers, so the JSON form round-trips losslessly.

use serde::{Deserialize, Serialize};

use crate::drive::{RfDrive, Tone};
use crate::error::Result;
use crate::metrics::GateMetrics;
use crate::qfp::computational_block;
use crate::target::Encoding;

use super::SynthesisResult;

/// Samples of φ(t) over one period for each trace.
pub const REPORT_SAMPLES: usize = 1024;

/// One EOM's drive, both as tone parameters and as a sampled waveform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EomReport {
    pub tones: Vec<Tone>,
    /// max_t |φ(t)| over the period.
    pub peak_deviation_rad: f64,
    /// φ at t = s·T/1024 for s = 0..1024.
    pub phase_trace_rad: Vec<f64>,
}

impl EomReport {
    fn for_drive(drive: &RfDrive) -> Self {
        let phase_trace_rad = (0..REPORT_SAMPLES)
            .map(|s| drive.phase_at(std::f64::consts::TAU * s as f64 / REPORT_SAMPLES as f64))
            .collect();
        Self {
            tones: drive.tones.clone(),
            peak_deviation_rad: drive.peak_deviation(),
            phase_trace_rad,
        }
    }
}

/// Complete plotting payload for one solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub encoding: Encoding,
    pub metrics: GateMetrics,
    pub eom1: EomReport,
    pub eom2: EomReport,
    /// (bin, phase) for every bin in the window; untouched lines read 0.
    pub shaper_phases: Vec<(i32, f64)>,
    /// Bin labels of the computational block rows/columns, ascending.
    pub mode_bins: [i32; 4],
    /// |W_c| entries, row-major.
    pub computational_amplitude: Vec<Vec<f64>>,
    /// arg(W_c) entries in radians, row-major.
    pub computational_phase: Vec<Vec<f64>>,
}

/// Expands a synthesis result into its report document.
pub fn solution_report(result: &SynthesisResult) -> Result<SolutionReport> {
    let cfg = &result.best_config;
    let shaper_phases = cfg
        .grid
        .bins()
        .map(|bin| (bin, cfg.shaper.coefficient(bin).arg()))
        .collect();
    let block = computational_block(cfg)?;
    let computational_amplitude =
        (0..4).map(|i| (0..4).map(|j| block[(i, j)].norm()).collect()).collect();
    let computational_phase =
        (0..4).map(|i| (0..4).map(|j| block[(i, j)].arg()).collect()).collect();
    let mut mode_bins = cfg.computational_bins();
    mode_bins.sort_unstable();
    Ok(SolutionReport {
        encoding: cfg.encoding,
        metrics: result.metrics,
        eom1: EomReport::for_drive(&cfg.eom1),
        eom2: EomReport::for_drive(&cfg.eom2),
        shaper_phases,
        mode_bins,
        computational_amplitude,
        computational_phase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{ParameterCodec, SynthesisProblem};
    use crate::target::target_unitary;

    fn identity_result() -> SynthesisResult {
        let problem = SynthesisProblem::for_encoding(Encoding::Adjacent);
        let codec = ParameterCodec::for_problem(&problem);
        let cfg = codec.decode(&vec![0.0; codec.dim()]);
        let block = computational_block(&cfg).unwrap();
        let metrics = crate::metrics::gate_metrics(
            &block,
            &crate::target::TargetUnitary::custom(
                Encoding::Adjacent,
                target_unitary(Encoding::Adjacent).matrix().clone(),
            )
            .unwrap(),
        )
        .unwrap();
        SynthesisResult {
            best_config: cfg,
            metrics,
            trace: vec![metrics.cost],
            seed_used: 0,
            wall_time_s: 0.0,
            warnings: Vec::new(),
        }
    }

    #[test]
    fn identity_report_is_flat() {
        let report = solution_report(&identity_result()).unwrap();
        assert_eq!(report.eom1.phase_trace_rad.len(), REPORT_SAMPLES);
        assert!(report.eom1.phase_trace_rad.iter().all(|&p| p == 0.0));
        assert_eq!(report.eom1.peak_deviation_rad, 0.0);
        assert!(report.shaper_phases.iter().all(|&(_, p)| p == 0.0));
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((report.computational_amplitude[i][j] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn report_roundtrips_through_json() {
        let report = solution_report(&identity_result()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: SolutionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.mode_bins, report.mode_bins);
        for (a, b) in back.eom2.phase_trace_rad.iter().zip(&report.eom2.phase_trace_rad) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((back.metrics.fidelity - report.metrics.fidelity).abs() < 1e-12);
    }
}
