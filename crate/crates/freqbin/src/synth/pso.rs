//! Global-best particle swarm engine.
//!
//! Plain constriction-style PSO over a box: velocities mix inertia with
//! cognitive and social pulls, components are clamped to half the box
//! width, positions are clipped to the box. Two choices here are about
//! reproducibility rather than optimization:
//!
//! * every particle owns a ChaCha stream derived from the run seed and
//!   its index, so results do not depend on evaluation order — a parallel
//!   evaluator would produce the same swarm trajectory;
//! * the global best is reduced once per iteration, scanning particles in
//!   index order with strict-improvement updates (ties keep the
//!   incumbent), which makes the best-cost trace a deterministic,
//!   non-increasing sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PsoParams;

/// Outcome of one seeded swarm run.
pub(crate) struct SwarmOutcome {
    pub best_position: Vec<f64>,
    pub best_cost: f64,
    /// Global-best cost after initialization plus after every iteration
    /// (`iterations + 1` entries, non-increasing).
    pub trace: Vec<f64>,
}

struct Particle {
    position: Vec<f64>,
    velocity: Vec<f64>,
    best_position: Vec<f64>,
    best_cost: f64,
    rng: ChaCha8Rng,
}

/// Minimizes `cost` over the box with one swarm. Infinite costs are
/// legal; they simply never win a strict-improvement comparison.
pub(crate) fn run_swarm(
    bounds: &[(f64, f64)],
    params: &PsoParams,
    run_seed: u64,
    mut cost: impl FnMut(&[f64]) -> f64,
) -> SwarmOutcome {
    let dim = bounds.len();
    let half_width: Vec<f64> = bounds.iter().map(|(lo, hi)| 0.5 * (hi - lo)).collect();

    let mut particles: Vec<Particle> = (0..params.swarm_size)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
            rng.set_stream(i as u64);
            let position: Vec<f64> =
                bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
            let velocity: Vec<f64> =
                half_width.iter().map(|&h| rng.gen_range(-h..h)).collect();
            let c = cost(&position);
            Particle { best_position: position.clone(), position, velocity, best_cost: c, rng }
        })
        .collect();

    let mut best_position = particles[0].best_position.clone();
    let mut best_cost = particles[0].best_cost;
    for p in &particles[1..] {
        if p.best_cost < best_cost {
            best_cost = p.best_cost;
            best_position = p.best_position.clone();
        }
    }
    let mut trace = Vec::with_capacity(params.iterations + 1);
    trace.push(best_cost);

    for _ in 0..params.iterations {
        for p in &mut particles {
            for d in 0..dim {
                let r1: f64 = p.rng.gen_range(0.0..1.0);
                let r2: f64 = p.rng.gen_range(0.0..1.0);
                let v = params.inertia * p.velocity[d]
                    + params.cognitive * r1 * (p.best_position[d] - p.position[d])
                    + params.social * r2 * (best_position[d] - p.position[d]);
                p.velocity[d] = v.clamp(-half_width[d], half_width[d]);
                p.position[d] =
                    (p.position[d] + p.velocity[d]).clamp(bounds[d].0, bounds[d].1);
            }
            let c = cost(&p.position);
            if c < p.best_cost {
                p.best_cost = c;
                p.best_position.copy_from_slice(&p.position);
            }
        }
        // Synchronization point: fold personal bests into the global best.
        for p in &particles {
            if p.best_cost < best_cost {
                best_cost = p.best_cost;
                best_position = p.best_position.clone();
            }
        }
        trace.push(best_cost);
    }

    SwarmOutcome { best_position, best_cost, trace }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_params() -> PsoParams {
        PsoParams { swarm_size: 20, iterations: 120, restarts: 1, rng_seed: 5, ..PsoParams::default() }
    }

    #[test]
    fn finds_a_quadratic_minimum() {
        let bounds = vec![(-4.0, 4.0); 5];
        let out = run_swarm(&bounds, &quick_params(), 5, |x| {
            x.iter().map(|&v| (v - 1.3) * (v - 1.3)).sum()
        });
        assert!(out.best_cost < 1e-6, "cost {}", out.best_cost);
        for &v in &out.best_position {
            assert!((v - 1.3).abs() < 1e-3);
        }
    }

    #[test]
    fn trace_is_monotone_nonincreasing() {
        let bounds = vec![(0.0, 1.0); 3];
        let out = run_swarm(&bounds, &quick_params(), 9, |x| {
            (x[0] - 0.2).abs() + (x[1] * x[1]) + (x[2] - 0.9).powi(2)
        });
        assert_eq!(out.trace.len(), quick_params().iterations + 1);
        for w in out.trace.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn identical_seeds_reproduce_runs_exactly() {
        let bounds = vec![(-1.0, 3.0); 4];
        let f = |x: &[f64]| x.iter().map(|&v| v.cos() + v * v * 0.1).sum::<f64>();
        let a = run_swarm(&bounds, &quick_params(), 11, f);
        let b = run_swarm(&bounds, &quick_params(), 11, f);
        assert_eq!(a.best_cost.to_bits(), b.best_cost.to_bits());
        assert_eq!(a.trace.len(), b.trace.len());
        for (x, y) in a.trace.iter().zip(&b.trace) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        let c = run_swarm(&bounds, &quick_params(), 12, f);
        assert_ne!(a.best_cost.to_bits(), c.best_cost.to_bits());
    }

    #[test]
    fn infinite_costs_never_win() {
        let bounds = vec![(0.0, 1.0); 2];
        // Half the box is poisoned; the swarm must still settle in the
        // finite region.
        let out = run_swarm(&bounds, &quick_params(), 3, |x| {
            if x[0] > 0.5 {
                f64::INFINITY
            } else {
                (x[0] - 0.25).powi(2) + (x[1] - 0.5).powi(2)
            }
        });
        assert!(out.best_cost.is_finite());
        assert!(out.best_position[0] <= 0.5);
    }
}
