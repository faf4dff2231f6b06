//! Implementations of the five subcommands.
//!
//! Each returns the process exit code (0 or 2) on success; `Err` means a
//! usage or input problem and maps to exit code 1 in `main`.

use std::fs;
use std::path::{Path, PathBuf};

use freqbin::io::{format_float, read_json_file, write_json_file};
use freqbin::{
    bell_state, classical_spectrum, coincidence_pattern, compose_qfp, computational_block,
    discrimination_accuracy, discrimination_accuracy_from_counts, gate_metrics,
    jitter_phase_bound, max_element_amplitude, poisson_sample_counts, required_jitter,
    solution_report, synthesize, target_unitary, BellState, Error, FrequencyGrid, PsoParams,
    Result, SynthesisProblem, SynthesisResult,
};
use serde::Serialize;

use crate::args::{BsaArgs, JitterArgs, SpectraArgs, SynthArgs, ValidateArgs};
use crate::manifest::RunManifest;

/// Flags shared by every subcommand.
pub struct Globals {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub window_guard: Option<u32>,
    pub quiet: bool,
}

fn usage(field: &str, message: &str) -> Error {
    Error::InvalidField { field: field.into(), message: message.into() }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

// ---------------------------------------------------------------- synth

pub fn synth(globals: &Globals, args: &SynthArgs) -> Result<u8> {
    let mut problem = match (&args.problem, args.encoding) {
        (Some(path), enc) => {
            let problem: SynthesisProblem = read_json_file(path)?;
            if let Some(enc) = enc {
                if freqbin::Encoding::from(enc) != problem.target.encoding() {
                    return Err(usage(
                        "encoding",
                        &format!(
                            "flag says {:?} but {} encodes {}",
                            enc,
                            path.display(),
                            problem.target.encoding()
                        ),
                    ));
                }
            }
            problem
        }
        (None, Some(enc)) => SynthesisProblem::for_encoding(enc.into()),
        (None, None) => {
            return Err(usage("encoding", "required when no --problem file is given"))
        }
    };
    if let Some(guard) = globals.window_guard {
        problem.grid = FrequencyGrid::with_guard(
            problem.grid.spacing_ghz,
            problem.grid.center_thz,
            &problem.target.logical_bins(),
            guard,
        )?;
    }

    let mut pso = match &args.pso {
        Some(path) => read_json_file::<PsoParams>(path)?,
        None => PsoParams::default(),
    };
    if let Some(seed) = globals.seed {
        pso.rng_seed = seed;
    }

    let constraint = match &args.constrain_harmonics {
        Some(raw) => Some(parse_harmonics(raw)?),
        None => None,
    };

    let dir = globals
        .out
        .as_deref()
        .ok_or_else(|| usage("out", "synth writes several artifacts; pass --out DIR"))?;
    ensure_dir(dir)?;

    if !globals.quiet {
        println!(
            "searching: {} encoding, {} restarts x {} iterations, swarm {}, seed {}",
            problem.target.encoding(),
            pso.restarts,
            pso.iterations,
            pso.swarm_size,
            pso.rng_seed
        );
    }

    let result = match &constraint {
        Some(harmonics) => freqbin::constrained_synthesize(&problem, &pso, harmonics)?,
        None => synthesize(&problem, &pso)?,
    };

    write_json_file(&dir.join("solution.json"), &result)?;
    fs::write(dir.join("trace.csv"), trace_csv(&result.trace))?;
    write_json_file(&dir.join("report.json"), &solution_report(&result)?)?;

    let mut inputs = vec![format!("encoding={}", problem.target.encoding())];
    if let Some(p) = &args.problem {
        inputs.push(format!("problem={}", p.display()));
    }
    if let Some(p) = &args.pso {
        inputs.push(format!("pso={}", p.display()));
    }
    if let Some(h) = &args.constrain_harmonics {
        inputs.push(format!("constrain_harmonics={h}"));
    }
    inputs.push(format!("min_fidelity={}", format_float(args.min_fidelity)));
    RunManifest::new("synth", inputs, dir, pso.rng_seed).write(dir)?;

    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    let block = computational_block(&result.best_config)?;
    if !globals.quiet {
        println!("fidelity            {:.12}", result.metrics.fidelity);
        println!("success probability {:.12}", result.metrics.success_probability);
        println!("cost                {:.6}", result.metrics.cost);
        println!("max |W_c| element   {:.12}", max_element_amplitude(&block));
        println!("winning seed        {}", result.seed_used);
        println!("wall time           {:.1} s", result.wall_time_s);
        println!("wrote solution.json, trace.csv, report.json to {}", dir.display());
    }

    if result.metrics.fidelity < args.min_fidelity {
        println!(
            "fidelity {:.12} is below the required {:.12}",
            result.metrics.fidelity, args.min_fidelity
        );
        return Ok(2);
    }
    Ok(0)
}

fn parse_harmonics(raw: &str) -> Result<Vec<u32>> {
    let mut orders = Vec::new();
    for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let k: u32 = part.parse().map_err(|_| {
            usage("constrain_harmonics", &format!("`{part}` is not a harmonic order"))
        })?;
        orders.push(k);
    }
    orders.sort_unstable();
    orders.dedup();
    Ok(orders)
}

fn trace_csv(trace: &[f64]) -> String {
    let mut csv = String::from("iteration,best_cost\n");
    for (i, cost) in trace.iter().enumerate() {
        csv.push_str(&format!("{i},{}\n", format_float(*cost)));
    }
    csv
}

// -------------------------------------------------------------- spectra

pub fn spectra(globals: &Globals, args: &SpectraArgs) -> Result<u8> {
    let result: SynthesisResult = read_json_file(&args.solution)?;
    let cfg = &result.best_config;
    let w = compose_qfp(cfg)?;

    let input_bins: Vec<i32> = if args.all {
        let mut bins = cfg.computational_bins();
        bins.sort_unstable();
        bins.to_vec()
    } else {
        match args.input_bin {
            Some(bin) => vec![bin],
            None => return Err(usage("input_bin", "pass --input-bin N or --all")),
        }
    };

    let mut csv = String::from("input_bin,bin,offset_ghz,power\n");
    for &input in &input_bins {
        for (bin, power) in classical_spectrum(&w, input)? {
            let offset = bin as f64 * cfg.grid.spacing_ghz;
            csv.push_str(&format!(
                "{input},{bin},{},{}\n",
                format_float(offset),
                format_float(power)
            ));
        }
    }

    match &globals.out {
        Some(dir) => {
            ensure_dir(dir)?;
            fs::write(dir.join("spectra.csv"), &csv)?;
            let inputs = vec![
                format!("solution={}", args.solution.display()),
                if args.all {
                    "input=all".into()
                } else {
                    format!("input_bin={}", input_bins[0])
                },
            ];
            RunManifest::new("spectra", inputs, dir, 0).write(dir)?;
            if !globals.quiet {
                println!("wrote spectra.csv to {}", dir.display());
            }
        }
        None => print!("{csv}"),
    }
    Ok(0)
}

// ------------------------------------------------------------------ bsa

pub fn bsa(globals: &Globals, args: &BsaArgs) -> Result<u8> {
    let result: SynthesisResult = read_json_file(&args.solution)?;
    let cfg = &result.best_config;
    let target = target_unitary(cfg.encoding);
    let w = compose_qfp(cfg)?;

    let kind: BellState = args.state.into();
    let state = bell_state(kind, &target);
    let pattern = coincidence_pattern(&w, &state, &target)?;

    if !globals.quiet {
        println!("input state {kind}");
        for p in &pattern.pairs {
            println!(
                "  {}  bins ({:>2}, {:>2})  {:.6}",
                p.label, p.bins.0, p.bins.1, p.probability
            );
        }
        println!("  residual              {:.6}", pattern.residual);
    }

    let accuracy = match kind {
        BellState::PsiPlus | BellState::PsiMinus => {
            let report = discrimination_accuracy(&pattern, kind)?;
            if !globals.quiet {
                println!(
                    "discrimination accuracy {:.6} (correct {:.6}, incorrect {:.6})",
                    report.accuracy, report.n_correct, report.n_incorrect
                );
            }
            Some(report)
        }
        BellState::PhiPlus | BellState::PhiMinus => {
            println!(
                "note: {kind} is not discriminable by this analyzer; \
                 Φ⁺ and Φ⁻ produce identical coincidence patterns"
            );
            None
        }
    };

    let sampled = args.counts.map(|total_pairs| {
        let seed = globals.seed.unwrap_or(1);
        let counts = poisson_sample_counts(&pattern, total_pairs, seed);
        if !globals.quiet {
            println!("sampled counts over {total_pairs} pairs (seed {seed}):");
            for c in &counts.pairs {
                println!("  {}  {}", c.label, c.count);
            }
        }
        let from_counts = match kind {
            BellState::PsiPlus | BellState::PsiMinus => {
                match discrimination_accuracy_from_counts(&counts, kind) {
                    Ok(report) => {
                        if !globals.quiet {
                            println!(
                                "count accuracy {:.6} ± {:.6} ({:.0}/{:.0})",
                                report.accuracy,
                                report.std_error,
                                report.n_correct,
                                report.n_correct + report.n_incorrect
                            );
                        }
                        Some(report)
                    }
                    Err(Error::NoEvents) => {
                        println!("no signature events sampled; count accuracy undefined");
                        None
                    }
                    Err(e) => return Err(e),
                }
            }
            _ => None,
        };
        Ok((counts, from_counts))
    });
    let sampled = sampled.transpose()?;

    if let Some(dir) = &globals.out {
        ensure_dir(dir)?;
        write_json_file(&dir.join("pattern.json"), &pattern)?;
        fs::write(dir.join("pattern.csv"), pattern_csv(&pattern))?;
        if let Some(report) = &accuracy {
            write_json_file(&dir.join("accuracy.json"), report)?;
        }
        if let Some((counts, from_counts)) = &sampled {
            write_json_file(&dir.join("counts.json"), counts)?;
            if let Some(report) = from_counts {
                write_json_file(&dir.join("accuracy_counts.json"), report)?;
            }
        }
        let mut inputs = vec![
            format!("solution={}", args.solution.display()),
            format!("state={kind}"),
        ];
        if let Some(n) = args.counts {
            inputs.push(format!("counts={n}"));
        }
        let seed = globals.seed.unwrap_or(1);
        RunManifest::new("bsa", inputs, dir, seed).write(dir)?;
        if !globals.quiet {
            println!("wrote pattern and reports to {}", dir.display());
        }
    }
    Ok(0)
}

fn pattern_csv(pattern: &freqbin::CoincidencePattern) -> String {
    let mut csv = String::from("pair,probability\n");
    for p in &pattern.pairs {
        csv.push_str(&format!("{},{}\n", p.label, format_float(p.probability)));
    }
    csv.push_str(&format!("residual,{}\n", format_float(pattern.residual)));
    csv
}

// --------------------------------------------------------------- jitter

#[derive(Serialize)]
struct JitterReport {
    spacing_ghz: f64,
    jitter_s: f64,
    jitter_ps: f64,
    phase_rad: f64,
}

pub fn jitter(globals: &Globals, args: &JitterArgs) -> Result<u8> {
    if !(args.spacing_ghz > 0.0) {
        return Err(usage("spacing_ghz", "spectral separation must be positive"));
    }
    let offset_hz = args.spacing_ghz * 1.0e9;
    let (jitter_s, phase_rad) = match (args.jitter_ps, args.phase_rad) {
        (Some(ps), None) => {
            let s = ps * 1.0e-12;
            (s, jitter_phase_bound(offset_hz, s))
        }
        (None, Some(phase)) => (required_jitter(offset_hz, phase), phase),
        (Some(_), Some(_)) | (None, None) => {
            return Err(usage(
                "jitter_ps/phase_rad",
                "pass exactly one of --jitter-ps and --phase-rad",
            ))
        }
    };
    let report = JitterReport {
        spacing_ghz: args.spacing_ghz,
        jitter_s,
        jitter_ps: jitter_s * 1.0e12,
        phase_rad,
    };

    println!("spacing    {} GHz", report.spacing_ghz);
    println!("jitter     {} ps ({} s)", report.jitter_ps, format_float(report.jitter_s));
    println!(
        "phase      {} rad ({:.6} π)",
        format_float(report.phase_rad),
        report.phase_rad / std::f64::consts::PI
    );

    if let Some(dir) = &globals.out {
        ensure_dir(dir)?;
        write_json_file(&dir.join("jitter.json"), &report)?;
        let inputs = vec![
            format!("spacing_ghz={}", args.spacing_ghz),
            match (args.jitter_ps, args.phase_rad) {
                (Some(ps), _) => format!("jitter_ps={ps}"),
                (_, Some(phase)) => format!("phase_rad={phase}"),
                _ => unreachable!("validated above"),
            },
        ];
        RunManifest::new("jitter", inputs, dir, 0).write(dir)?;
        if !globals.quiet {
            println!("wrote jitter.json to {}", dir.display());
        }
    }
    Ok(0)
}

// ------------------------------------------------------------- validate

/// Tolerance for re-derived scores matching the stored ones.
const RECOMPUTE_TOL: f64 = 1e-12;
/// Elementwise bound on the computational block's drift when the guard
/// band is widened until the window dimension doubles.
const CONVERGENCE_TOL: f64 = 1e-8;

pub fn validate(globals: &Globals, args: &ValidateArgs) -> Result<u8> {
    let result: SynthesisResult = read_json_file(&args.solution)?;
    let cfg = &result.best_config;
    let mut failures = 0u32;
    let mut check = |name: &str, outcome: std::result::Result<(), String>| match outcome {
        Ok(()) => {
            if !globals.quiet {
                println!("PASS {name}");
            }
        }
        Err(why) => {
            failures += 1;
            println!("FAIL {name}: {why}");
        }
    };

    check("config-valid", cfg.validate().map_err(|e| e.to_string()));

    let target = target_unitary(cfg.encoding);
    let block = computational_block(cfg);
    match &block {
        Ok(block) => {
            let recomputed = gate_metrics(block, &target).map_err(|e| e.to_string());
            check(
                "metrics-recompute",
                recomputed.and_then(|m| {
                    let stored = &result.metrics;
                    let diffs = [
                        ("fidelity", m.fidelity - stored.fidelity),
                        ("success_probability", m.success_probability - stored.success_probability),
                        ("cost", m.cost - stored.cost),
                    ];
                    match diffs.iter().find(|(_, d)| d.abs() > RECOMPUTE_TOL) {
                        None => Ok(()),
                        Some((field, d)) => Err(format!(
                            "stored {field} differs from recomputed value by {d:e}"
                        )),
                    }
                }),
            );
        }
        Err(e) => check("metrics-recompute", Err(e.to_string())),
    }

    check(
        "trace-nonincreasing",
        if result.trace.windows(2).all(|w| w[1] <= w[0]) {
            Ok(())
        } else {
            Err("best cost increased during the winning restart".into())
        },
    );

    check(
        "trace-final-cost",
        match result.trace.last() {
            Some(last) if (last - result.metrics.cost).abs() <= RECOMPUTE_TOL => Ok(()),
            Some(last) => Err(format!(
                "trace ends at {} but the stored cost is {}",
                format_float(*last),
                format_float(result.metrics.cost)
            )),
            None => Err("trace is empty".into()),
        },
    );

    check(
        "column-norms",
        compose_qfp(cfg).map(|_| ()).map_err(|e| e.to_string()),
    );

    if let Ok(block) = &block {
        let extra = (cfg.grid.dim() / 2) as u32;
        let mut wide = cfg.clone();
        wide.grid = cfg.grid.widened(extra);
        check(
            "window-convergence",
            computational_block(&wide).map_err(|e| e.to_string()).and_then(|wide_block| {
                let drift = block
                    .iter()
                    .zip(wide_block.iter())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0f64, f64::max);
                if drift <= CONVERGENCE_TOL {
                    Ok(())
                } else {
                    Err(format!("block moves by {drift:e} when the window doubles"))
                }
            }),
        );
    }

    drop(check);
    if failures == 0 {
        if !globals.quiet {
            println!("all checks passed for {}", args.solution.display());
        }
        Ok(0)
    } else {
        println!("{failures} check(s) failed for {}", args.solution.display());
        Ok(2)
    }
}
