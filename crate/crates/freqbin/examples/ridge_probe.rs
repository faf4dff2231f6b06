//! Scratch probe: per-restart synthesis outcomes over a seed range,
//! printing every acceptance-relevant quantity.

use freqbin::{
    computational_block, constrained_synthesize, gate_metrics, max_element_amplitude,
    synthesize, Encoding, FrequencyGrid, PsoParams, SynthesisProblem,
};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args[1].as_str();
    let lo: u64 = args[2].parse().unwrap();
    let hi: u64 = args[3].parse().unwrap();
    let swarm: usize = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(50);
    let iters: usize = args.get(5).map(|s| s.parse().unwrap()).unwrap_or(600);
    let encoding =
        if mode.starts_with("interleaved") { Encoding::Interleaved } else { Encoding::Adjacent };
    let mut problem = SynthesisProblem::for_encoding(encoding);
    if let (Some(blo), Some(bhi)) = (args.get(6), args.get(7)) {
        problem.shaper_design_bins = (blo.parse().unwrap(), bhi.parse().unwrap());
    }
    for seed in lo..=hi {
        let params = PsoParams {
            restarts: 1,
            rng_seed: seed,
            swarm_size: swarm,
            iterations: iters,
            ..PsoParams::default()
        };
        let r = if mode == "constrained" {
            constrained_synthesize(&problem, &params, &[2]).unwrap()
        } else {
            synthesize(&problem, &params).unwrap()
        };
        let m = &r.metrics;
        let block = computational_block(&r.best_config).unwrap();
        let amps = |d: &freqbin::RfDrive| -> String {
            d.tones
                .iter()
                .map(|t| format!("{}:{:.3}@{:.3}", t.k, t.amp_rad, t.phase_rad))
                .collect::<Vec<_>>()
                .join(" ")
        };
        // Re-evaluate the same optics on a much wider window: a solution
        // that exploits edge truncation collapses here.
        let (wlo, whi) = r.best_config.grid.window();
        let wide_grid = FrequencyGrid::new(
            r.best_config.grid.spacing_ghz,
            r.best_config.grid.center_thz,
            wlo - 16,
            whi + 16,
        )
        .unwrap();
        let mut wide_cfg = r.best_config.clone();
        wide_cfg.grid = wide_grid;
        let wide_block = computational_block(&wide_cfg).unwrap();
        let wm = gate_metrics(&wide_block, &problem.target).unwrap();
        println!(
            "restart-seed {seed}: cost {:+.4} F {:.12} P {:.6} maxel {:.4} peaks ({:.4},{:.4}) eom1[{}] eom2[{}] wideF {:.12} wideP {:.6}",
            m.cost,
            m.fidelity,
            m.success_probability,
            max_element_amplitude(&block),
            r.best_config.eom1.peak_deviation(),
            r.best_config.eom2.peak_deviation(),
            amps(&r.best_config.eom1),
            amps(&r.best_config.eom2),
            wm.fidelity,
            wm.success_probability,
        );
    }
}
