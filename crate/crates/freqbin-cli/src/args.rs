//! Command-line surface.
//!
//! Exit codes follow a fixed contract: 0 on success, 1 for usage or
//! input problems (bad flags, unreadable or invalid files), 2 when the
//! run worked but a quality threshold was not met (synthesis below the
//! fidelity floor, failed validation checks).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "freqbin",
    version,
    about = "Design and simulate frequency-bin Bell-state analyzers"
)]
pub struct Cli {
    /// Output directory (or file, for single-file commands).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// RNG seed override for synthesis restarts and count sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Guard bins on each side of the computational modes.
    #[arg(long, global = true)]
    pub window_guard: Option<u32>,
    /// Suppress progress chatter; results and errors still print.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for drive and mask parameters realizing an analyzer target.
    Synth(SynthArgs),
    /// Classical single-line input spectra of a solved cascade.
    Spectra(SpectraArgs),
    /// Bell-state coincidence patterns and discrimination accuracy.
    Bsa(BsaArgs),
    /// Convert between timing jitter and accumulated spectral phase.
    Jitter(JitterArgs),
    /// Recompute and check everything a solution file claims.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Bin assignment of the logical modes.
    #[arg(long, value_enum)]
    pub encoding: Option<EncodingArg>,
    /// Synthesis problem JSON (defaults derived from --encoding).
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// Swarm hyperparameter JSON (defaults otherwise).
    #[arg(long)]
    pub pso: Option<PathBuf>,
    /// Comma-separated harmonic orders both EOMs are restricted to
    /// (e.g. "2"); an empty string frees no tones at all.
    #[arg(long)]
    pub constrain_harmonics: Option<String>,
    /// Fidelity the best restart must reach for exit code 0.
    #[arg(long, default_value_t = 1.0 - 1e-5)]
    pub min_fidelity: f64,
}

#[derive(Args, Debug)]
pub struct SpectraArgs {
    /// Solution JSON produced by `synth`.
    pub solution: PathBuf,
    /// Input bin to excite.
    #[arg(long, conflicts_with = "all", allow_negative_numbers = true)]
    pub input_bin: Option<i32>,
    /// Emit one block per computational input bin.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug)]
pub struct BsaArgs {
    /// Solution JSON produced by `synth`.
    pub solution: PathBuf,
    /// Input Bell state.
    #[arg(long, value_enum)]
    pub state: StateArg,
    /// Also draw Poissonian counts for this many input pairs.
    #[arg(long)]
    pub counts: Option<u64>,
}

#[derive(Args, Debug)]
pub struct JitterArgs {
    /// Spectral separation in GHz.
    #[arg(long)]
    pub spacing_ghz: f64,
    /// Timing offset in picoseconds (compute the phase).
    #[arg(long)]
    pub jitter_ps: Option<f64>,
    /// Phase in radians (compute the timing offset).
    #[arg(long)]
    pub phase_rad: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Solution JSON to check.
    pub solution: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodingArg {
    Interleaved,
    Adjacent,
}

impl From<EncodingArg> for freqbin::Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Interleaved => freqbin::Encoding::Interleaved,
            EncodingArg::Adjacent => freqbin::Encoding::Adjacent,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateArg {
    #[value(name = "psi+", alias = "psi_plus")]
    PsiPlus,
    #[value(name = "psi-", alias = "psi_minus")]
    PsiMinus,
    #[value(name = "phi+", alias = "phi_plus")]
    PhiPlus,
    #[value(name = "phi-", alias = "phi_minus")]
    PhiMinus,
}

impl From<StateArg> for freqbin::BellState {
    fn from(s: StateArg) -> Self {
        match s {
            StateArg::PsiPlus => freqbin::BellState::PsiPlus,
            StateArg::PsiMinus => freqbin::BellState::PsiMinus,
            StateArg::PhiPlus => freqbin::BellState::PhiPlus,
            StateArg::PhiMinus => freqbin::BellState::PhiMinus,
        }
    }
}
