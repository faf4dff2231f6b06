//! Seeded random instances for property and oracle tests.

use freqbin::{FrequencyGrid, ModeTransform, RfDrive, Tone, TwoPhotonState};
use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;

/// Standard-normal draw via Box–Muller (keeps the dependency list short).
fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// Random drive over harmonic orders 1..=max_harmonic (each present with
/// probability ½, at least one kept), amplitudes uniform in [0, amp_cap].
pub fn random_drive(rng: &mut impl Rng, max_harmonic: u32, amp_cap: f64) -> RfDrive {
    let mut tones = Vec::new();
    for k in 1..=max_harmonic {
        if rng.gen_bool(0.5) {
            tones.push(Tone {
                k,
                amp_rad: rng.gen_range(0.0..amp_cap),
                phase_rad: rng.gen_range(0.0..std::f64::consts::TAU),
            });
        }
    }
    if tones.is_empty() {
        tones.push(Tone {
            k: rng.gen_range(1..=max_harmonic),
            amp_rad: rng.gen_range(0.0..amp_cap),
            phase_rad: rng.gen_range(0.0..std::f64::consts::TAU),
        });
    }
    RfDrive::new(tones).expect("generated tones are valid")
}

/// Haar-ish random unitary: complex Gaussian matrix, orthonormalized by
/// modified Gram–Schmidt with one re-orthogonalization pass.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> Array2<Complex64> {
    let mut m = Array2::from_shape_fn((n, n), |_| complex_normal(rng));
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex64 =
                    (0..n).map(|r| m[(r, i)].conj() * m[(r, j)]).sum();
                for r in 0..n {
                    let correction = proj * m[(r, i)];
                    m[(r, j)] -= correction;
                }
            }
        }
        let norm: f64 = (0..n).map(|r| m[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            m[(r, j)] /= norm;
        }
    }
    m
}

/// Random unitary wrapped as a ModeTransform on `grid`.
pub fn random_unitary_transform(rng: &mut impl Rng, grid: FrequencyGrid) -> ModeTransform {
    let u = random_unitary(rng, grid.dim());
    ModeTransform::new(grid, u).expect("unitary columns are unit-norm")
}

/// Random normalized two-photon state supported on `n_terms` distinct
/// pairs drawn from the window of `grid` (doubled bins allowed).
pub fn random_two_photon_state(
    rng: &mut impl Rng,
    grid: &FrequencyGrid,
    n_terms: usize,
) -> TwoPhotonState {
    let (lo, hi) = grid.window();
    let mut entries: Vec<((i32, i32), Complex64)> = Vec::new();
    while entries.len() < n_terms {
        let j = rng.gen_range(lo..=hi);
        let k = rng.gen_range(lo..=hi);
        let key = (j.min(k), j.max(k));
        if entries.iter().any(|(existing, _)| *existing == key) {
            continue;
        }
        entries.push((key, complex_normal(rng)));
    }
    let norm: f64 = entries.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
    for (_, c) in entries.iter_mut() {
        *c /= norm;
    }
    TwoPhotonState::from_pairs(&entries).expect("keys are distinct")
}
