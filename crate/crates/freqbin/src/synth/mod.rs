//! Parameter synthesis: swarm search for drives and masks realizing a
//! target analyzer unitary.
//!
//! The search space is the parameter vector defined by [`ParameterCodec`]
//! — tone amplitudes/phases for both EOMs plus free shaper phases — and
//! the objective is the cost C = P·log₁₀(max(1 − F, 1e−12)) evaluated on
//! the computational block of the decoded cascade. Each restart runs an
//! independently seeded swarm and then a deterministic pattern-search
//! refinement of that swarm's best point (see [`polish`]): the swarm finds
//! a basin, the refinement drives the infidelity down the basin's narrow
//! valley, far past the resolution a swarm achieves on its own. The best
//! refined cost wins across restarts, with ties keeping the earlier run,
//! so the whole procedure is a pure function of (problem, params).

mod codec;
mod polish;
mod pso;
mod report;

pub use codec::ParameterCodec;
pub use report::{solution_report, EomReport, SolutionReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, DEFAULT_GUARD};
use crate::metrics::{gate_metrics, GateMetrics};
use crate::qfp::{computational_block, QfpConfig};
use crate::target::{target_unitary, Encoding, TargetUnitary};

/// Default RF spacing, matching the hardware the defaults model.
pub const DEFAULT_SPACING_GHZ: f64 = 20.0;
/// Default center frequency (C-band).
pub const DEFAULT_CENTER_THZ: f64 = 192.2;

/// What to synthesize and over which knobs.
///
/// Serializes as `{encoding, grid, free_harmonics, shaper_design_bins,
/// amp_bound_rad}`; the target matrix itself is reconstructed from the
/// encoding on load, so custom targets (see [`TargetUnitary::custom`])
/// are an in-process facility only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemFile", into = "ProblemFile")]
pub struct SynthesisProblem {
    pub target: TargetUnitary,
    pub grid: FrequencyGrid,
    /// Harmonic orders each EOM may use, ascending and unique.
    pub free_harmonics: Vec<u32>,
    /// Inclusive bin range whose shaper phases are free; all other lines
    /// stay at phase 0.
    pub shaper_design_bins: (i32, i32),
    /// Upper bound on tone amplitudes, in radians.
    pub amp_bound_rad: f64,
}

impl SynthesisProblem {
    /// Standard search space for an encoding: 20 GHz grid with the default
    /// guard band, tones at the fundamental and second harmonic, free
    /// shaper phases on bins −6..=9, amplitudes up to 5 rad.
    pub fn for_encoding(encoding: Encoding) -> Self {
        let grid = FrequencyGrid::with_guard(
            DEFAULT_SPACING_GHZ,
            DEFAULT_CENTER_THZ,
            &encoding.logical_bins(),
            DEFAULT_GUARD,
        )
        .expect("default grid parameters are valid");
        Self {
            target: target_unitary(encoding),
            grid,
            free_harmonics: vec![1, 2],
            shaper_design_bins: (-6, 9),
            amp_bound_rad: 5.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.grid.window();
        let (dlo, dhi) = self.shaper_design_bins;
        if dlo > dhi || dlo < lo || dhi > hi {
            return Err(Error::InvalidProblem(format!(
                "shaper design bins {dlo}..={dhi} must be a nonempty subrange of the window {lo}..={hi}"
            )));
        }
        for bin in self.target.logical_bins() {
            if !self.grid.contains(bin) {
                return Err(Error::InvalidProblem(format!(
                    "computational bin {bin} lies outside the window {lo}..={hi}"
                )));
            }
        }
        if !(self.amp_bound_rad > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "amplitude bound must be positive, got {}",
                self.amp_bound_rad
            )));
        }
        if self.free_harmonics.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidProblem(
                "free_harmonics must be strictly ascending".into(),
            ));
        }
        if self.free_harmonics.first() == Some(&0) {
            return Err(Error::InvalidProblem("harmonic orders start at 1".into()));
        }
        Ok(())
    }
}

/// On-disk form of a synthesis problem.
#[derive(Serialize, Deserialize, Clone)]
struct ProblemFile {
    encoding: Encoding,
    grid: FrequencyGrid,
    free_harmonics: Vec<u32>,
    shaper_design_bins: (i32, i32),
    amp_bound_rad: f64,
}

impl TryFrom<ProblemFile> for SynthesisProblem {
    type Error = Error;
    fn try_from(f: ProblemFile) -> Result<Self> {
        let problem = SynthesisProblem {
            target: target_unitary(f.encoding),
            grid: f.grid,
            free_harmonics: f.free_harmonics,
            shaper_design_bins: f.shaper_design_bins,
            amp_bound_rad: f.amp_bound_rad,
        };
        problem.validate()?;
        Ok(problem)
    }
}

impl From<SynthesisProblem> for ProblemFile {
    fn from(p: SynthesisProblem) -> Self {
        ProblemFile {
            encoding: p.target.encoding(),
            grid: p.grid,
            free_harmonics: p.free_harmonics,
            shaper_design_bins: p.shaper_design_bins,
            amp_bound_rad: p.amp_bound_rad,
        }
    }
}

/// Swarm hyperparameters. Defaults are the standard constriction-factor
/// values; the restart count trades runtime against the chance of a bad
/// basin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PsoParams {
    pub swarm_size: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub restarts: u32,
    pub rng_seed: u64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            swarm_size: 50,
            iterations: 600,
            inertia: 0.729,
            cognitive: 1.494,
            social: 1.494,
            restarts: 5,
            rng_seed: 1,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::InvalidPsoParams("swarm_size must be at least 2".into()));
        }
        if !(self.inertia > 0.0 && self.inertia < 1.0) {
            return Err(Error::InvalidPsoParams(format!(
                "inertia must lie in (0, 1), got {}",
                self.inertia
            )));
        }
        if !(self.cognitive > 0.0) || !(self.social > 0.0) {
            return Err(Error::InvalidPsoParams(
                "cognitive and social factors must be positive".into(),
            ));
        }
        if self.iterations == 0 || self.restarts == 0 {
            return Err(Error::InvalidPsoParams(
                "iterations and restarts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Evaluation budget of the per-restart refinement stage, as a multiple
/// of the swarm's own evaluation count (swarm_size × iterations). The
/// refinement descends roughly ten decades of infidelity plus a migration
/// along the solution manifold, which empirically needs several times the
/// swarm's budget to run to convergence.
pub const POLISH_BUDGET_FACTOR: u64 = 12;

/// Best configuration found, with its scores and search history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisResult {
    pub best_config: QfpConfig,
    pub metrics: GateMetrics,
    /// Global-best cost after initialization and after each iteration of
    /// the winning restart, plus one final entry for that restart's
    /// refinement stage; non-increasing.
    pub trace: Vec<f64>,
    /// Seed of the winning restart (base seed + restart index).
    pub seed_used: u64,
    /// Wall-clock seconds for the whole search. Excluded from files so
    /// that equal seeds write equal bytes.
    #[serde(skip)]
    pub wall_time_s: f64,
    /// Notes about unusual search setups (for example a shaper-only
    /// search, which generally cannot reach off-diagonal targets).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Runs the full search: `restarts` independent swarms seeded
/// `rng_seed + r`, best final cost wins, earlier restart on ties.
pub fn synthesize(problem: &SynthesisProblem, params: &PsoParams) -> Result<SynthesisResult> {
    problem.validate()?;
    params.validate()?;
    let codec = ParameterCodec::for_problem(problem);
    run_restarts(problem, params, &codec, Vec::new())
}

/// [`synthesize`] with both EOMs restricted to a subset of the problem's
/// free harmonics. An empty subset degenerates to a shaper-only search,
/// which is allowed but flagged in the result's warnings unless the
/// target is diagonal-reachable (identity).
pub fn constrained_synthesize(
    problem: &SynthesisProblem,
    params: &PsoParams,
    constraint: &[u32],
) -> Result<SynthesisResult> {
    problem.validate()?;
    params.validate()?;
    let mut harmonics = constraint.to_vec();
    harmonics.sort_unstable();
    harmonics.dedup();
    for k in &harmonics {
        if !problem.free_harmonics.contains(k) {
            return Err(Error::InvalidProblem(format!(
                "constraint harmonic {k} is not among the problem's free harmonics {:?}",
                problem.free_harmonics
            )));
        }
    }
    let mut warnings = Vec::new();
    if harmonics.is_empty() && !target_is_identity(&problem.target) {
        warnings.push(
            "shaper-only search: no EOM harmonics freed, so bin-mixing targets are unreachable"
                .to_string(),
        );
    }
    let codec = ParameterCodec::with_harmonics(problem, &harmonics);
    run_restarts(problem, params, &codec, warnings)
}

fn target_is_identity(target: &TargetUnitary) -> bool {
    let m = target.matrix();
    (0..4).all(|i| {
        (0..4).all(|j| {
            let expect = if i == j { 1.0 } else { 0.0 };
            (m[(i, j)] - expect).norm() < 1e-12
        })
    })
}

fn run_restarts(
    problem: &SynthesisProblem,
    params: &PsoParams,
    codec: &ParameterCodec,
    warnings: Vec<String>,
) -> Result<SynthesisResult> {
    let start = std::time::Instant::now();
    let bounds = codec.bounds();
    let eval = |v: &[f64]| -> Option<GateMetrics> {
        let cfg = codec.decode(v);
        computational_block(&cfg)
            .and_then(|block| gate_metrics(&block, &problem.target))
            .ok()
    };
    let cost = |v: &[f64]| -> f64 { eval(v).map_or(f64::INFINITY, |m| m.cost) };

    let periodic = codec.periodic_dims();
    let polish_budget = POLISH_BUDGET_FACTOR * (params.swarm_size * params.iterations) as u64;
    let mut best: Option<(Vec<f64>, f64, Vec<f64>, u64)> = None;
    for r in 0..params.restarts {
        let run_seed = params.rng_seed.wrapping_add(r as u64);
        let outcome = pso::run_swarm(&bounds, params, run_seed, cost);
        let refined = polish::polish(
            &bounds,
            &periodic,
            &outcome.best_position,
            outcome.best_cost,
            polish_budget,
            eval,
        );
        let mut trace = outcome.trace;
        trace.push(refined.cost);
        let improves = best.as_ref().map_or(true, |(_, c, _, _)| refined.cost < *c);
        if improves {
            best = Some((refined.position, refined.cost, trace, run_seed));
        }
    }
    let (position, _, trace, seed_used) = best.expect("restarts >= 1");

    let best_config = codec.decode(&position);
    let block = computational_block(&best_config)?;
    let metrics = gate_metrics(&block, &problem.target)?;
    Ok(SynthesisResult {
        best_config,
        metrics,
        trace,
        seed_used,
        wall_time_s: start.elapsed().as_secs_f64(),
        warnings,
    })
}
