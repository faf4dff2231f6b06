//! Deterministic local refinement of swarm results.
//!
//! The infidelity term of the cost collapses over ten orders of magnitude
//! inside a solution basin, along narrow curved valleys that a swarm
//! samples far too coarsely to follow — and the set of maximum-fidelity
//! configurations is itself a manifold on which success probability still
//! varies, so a greedy descent that locks fidelity early gets stranded at
//! whatever success probability it first reached. The refinement therefore
//! runs a floor continuation: the cost C(ε) = P·log₁₀(max(1 − F, ε)) is
//! minimized for a ladder of shrinking floors ε = 1e−2 … 1e−12. A fat
//! floor turns the near-solution set into a plateau on which C(ε) ranks
//! points purely by P, so the search can migrate toward brighter solutions
//! while fidelity is "good enough for this stage"; each tightening then
//! re-converges fidelity near the brighter spot. The last stage is the
//! pinned cost itself, so the returned value is comparable across
//! restarts.
//!
//! Each stage is minimized with Hooke–Jeeves pattern search: exploratory
//! probes of ±step along each coordinate, followed by extrapolation
//! ("pattern") moves that keep doubling down along whatever direction the
//! exploration found. The step shrinks only when a full exploration
//! stalls, and a stage ends at a step floor or when its share of the
//! evaluation budget runs out.
//!
//! Everything here is deterministic — no randomness, strict-improvement
//! acceptance, fixed coordinate order — so a polished restart is still a
//! pure function of its swarm seed. Amplitude coordinates are clamped to
//! their box; phase coordinates wrap modulo their period instead, because
//! a phase box is a circle and clamping would fence the search away from
//! optima that sit just across the 0/2π seam.

use crate::metrics::{GateMetrics, INFIDELITY_FLOOR};

/// Outcome of one polish run.
pub(crate) struct PolishOutcome {
    /// Refined position; equals the start if no stage improved on it.
    pub position: Vec<f64>,
    /// Pinned cost of `position`.
    pub cost: f64,
}

/// Initial exploratory step of each stage, as a fraction of the box width.
const STEP_FRACTION: f64 = 0.02;
/// A stage stops once steps shrink below this fraction of the box width.
const STEP_FLOOR: f64 = 1e-10;

/// Floor ladder: wide to pinned, one decade per stage.
fn ladder() -> impl Iterator<Item = f64> {
    (2..=12).map(|k| 10f64.powi(-k))
}

/// Refines `start` (whose pinned cost is `start_cost`) against the
/// metrics landscape. `periodic[d]` marks coordinates that wrap modulo
/// their box width (phases); the rest clamp. Returns the refined point if
/// any ladder stage beat the start on the pinned cost, otherwise the
/// start itself — never anything worse.
pub(crate) fn polish(
    bounds: &[(f64, f64)],
    periodic: &[bool],
    start: &[f64],
    start_cost: f64,
    max_evals: u64,
    mut metrics: impl FnMut(&[f64]) -> Option<GateMetrics>,
) -> PolishOutcome {
    let stages: Vec<f64> = ladder().collect();
    let mut x = start.to_vec();
    let mut evals = 0u64;
    for (i, &eps) in stages.iter().enumerate() {
        // Unused budget rolls forward: divide what remains evenly over
        // the stages still to run.
        let stage_budget = (max_evals - evals) / (stages.len() - i) as u64;
        let stage_cost = |m: &GateMetrics| {
            if eps <= INFIDELITY_FLOOR {
                // Final stage: exactly the pinned cost, so the polished
                // value is comparable with swarm costs bit for bit.
                m.cost
            } else {
                m.success_probability * (1.0 - m.fidelity).max(eps).log10()
            }
        };
        let mut eval = |v: &[f64]| metrics(v).map_or(f64::INFINITY, |m| stage_cost(&m));
        let c0 = eval(&x);
        evals += 1;
        let (bx, _, ev) = hooke_jeeves(bounds, periodic, &x, c0, stage_budget, &mut eval);
        evals += ev;
        x = bx;
    }
    // The ladder may wander: keep the refined point only if it beats the
    // start on the pinned cost (ties keep the start).
    let final_cost = metrics(&x).map_or(f64::INFINITY, |m| m.cost);
    if final_cost < start_cost {
        PolishOutcome { position: x, cost: final_cost }
    } else {
        PolishOutcome { position: start.to_vec(), cost: start_cost }
    }
}

/// Hooke–Jeeves pattern search over the box. Strict-improvement,
/// deterministic; returns (best position, best cost, evaluations used).
fn hooke_jeeves(
    bounds: &[(f64, f64)],
    periodic: &[bool],
    start: &[f64],
    start_cost: f64,
    max_evals: u64,
    cost: &mut impl FnMut(&[f64]) -> f64,
) -> (Vec<f64>, f64, u64) {
    let dim = bounds.len();
    assert_eq!(start.len(), dim);
    assert_eq!(periodic.len(), dim);

    let confine = |d: usize, value: f64| -> f64 {
        let (lo, hi) = bounds[d];
        if periodic[d] {
            lo + (value - lo).rem_euclid(hi - lo)
        } else {
            value.clamp(lo, hi)
        }
    };

    let mut steps: Vec<f64> =
        bounds.iter().map(|(lo, hi)| STEP_FRACTION * (hi - lo)).collect();
    let floors: Vec<f64> = bounds.iter().map(|(lo, hi)| STEP_FLOOR * (hi - lo)).collect();

    // Best point found, the current exploration center, and their costs.
    let mut best = start.to_vec();
    let mut best_cost = start_cost;
    let mut center = best.clone();
    let mut center_cost = best_cost;
    let mut evals = 0u64;

    loop {
        // Exploratory sweep around the center: test +step then −step on
        // each coordinate, keeping strict improvements immediately.
        let mut x = center.clone();
        let mut x_cost = center_cost;
        'sweep: for d in 0..dim {
            for sign in [1.0, -1.0] {
                if evals >= max_evals {
                    break 'sweep;
                }
                let old = x[d];
                let trial = confine(d, old + sign * steps[d]);
                if trial == old {
                    continue; // clamped into a wall; nothing to test
                }
                x[d] = trial;
                let c = cost(&x);
                evals += 1;
                if c < x_cost {
                    x_cost = c;
                    break; // keep the move, next coordinate
                }
                x[d] = old;
            }
        }

        if x_cost < best_cost {
            // Exploration improved on the best point: accept it and place
            // the next center at the extrapolation of the move just made,
            // so a run of successes keeps marching along the valley.
            let pattern: Vec<f64> = (0..dim)
                .map(|d| confine(d, x[d] + (x[d] - best[d])))
                .collect();
            best = x;
            best_cost = x_cost;
            center_cost = if evals < max_evals {
                evals += 1;
                cost(&pattern)
            } else {
                f64::INFINITY
            };
            center = pattern;
        } else if center != best {
            // The pattern jump led nowhere: fall back to exploring around
            // the best point itself before conceding the step size.
            center = best.clone();
            center_cost = best_cost;
        } else {
            // A plain exploration around the best point stalled: shrink.
            for s in steps.iter_mut() {
                *s *= 0.5;
            }
            if steps.iter().zip(&floors).all(|(s, f)| s < f) {
                break;
            }
        }

        if evals >= max_evals {
            break;
        }
    }

    (best, best_cost, evals)
}
