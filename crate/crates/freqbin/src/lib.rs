//! Design and simulation of frequency-bin Bell-state analyzers.
//!
//! Light lives on a lattice of frequency bins ω_n = ω₀ + nΔω. A quantum
//! frequency processor — electro-optic phase modulator, line-by-line
//! pulse shaper, second modulator — scatters amplitude between bins, and
//! with the right drive waveforms and mask it realizes a Bell-state
//! analyzer on four computational bins. This crate builds those mode
//! transforms, searches for drive parameters that realize a target
//! analyzer unitary, and predicts the resulting two-photon coincidence
//! signatures:
//!
//! * [`grid`], [`drive`], [`shaper`] — the passive vocabulary: bin
//!   windows, RF waveforms, mask entries.
//! * [`eom`], [`qfp`], [`transform`] — scattering operators and the
//!   EOM–shaper–EOM cascade.
//! * [`target`], [`metrics`] — analyzer target unitaries for the two bin
//!   encodings and the fidelity/success-probability scores.
//! * [`synth`] — seeded particle-swarm search over drive parameters.
//! * [`twophoton`] — Bell states, bosonic pair propagation, coincidence
//!   patterns, discrimination accuracy, and Poissonian count sampling.
//! * [`io`] — canonical (byte-reproducible) JSON.

pub mod drive;
pub mod eom;
pub mod error;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod qfp;
pub mod shaper;
pub mod synth;
pub mod target;
pub mod transform;
pub mod twophoton;

pub use drive::{RfDrive, Tone};
pub use eom::{build_eom_operator, scattering_coefficients, FFT_SAMPLES};
pub use error::{Error, Result};
pub use grid::{FrequencyGrid, DEFAULT_GUARD};
pub use metrics::{
    gate_metrics, jitter_phase_bound, max_element_amplitude, required_jitter, GateMetrics,
};
pub use qfp::{build_shaper_operator, compose_qfp, computational_block, qfp_columns, QfpConfig};
pub use shaper::{MaskEntry, ShaperMask};
pub use synth::{
    constrained_synthesize, solution_report, synthesize, ParameterCodec, PsoParams,
    SolutionReport, SynthesisProblem, SynthesisResult,
};
pub use target::{target_unitary, Encoding, TargetUnitary};
pub use transform::{classical_spectrum, ModeTransform};
pub use twophoton::{
    bell_state, coincidence_pattern, discrimination_accuracy,
    discrimination_accuracy_from_counts, fock_oracle, poisson_sample_counts, propagate_two_photon,
    AccuracyReport, BellState, CoincidenceCounts, CoincidencePattern, TwoPhotonState,
};
