//! Two-photon states, propagation, and Bell-state discrimination.
//!
//! States live on unordered bin pairs {j, k} (j = k allowed) with complex
//! amplitudes; keys are kept canonical (j ≤ k). Creation operators
//! transform with T = conj(W) under a field transform W — the convention
//! is validated end to end against the Fock-basis oracle below, which
//! derives the induced pair-basis matrix from nothing but second-quantized
//! bookkeeping.
//!
//! Propagation uses the closed form for bosonic pairs: the output
//! amplitude on pair (p, q) collects T_pj·T_qk + T_pk·T_qj from every
//! input pair (j, k), with a 1/√2 symmetrization factor on each doubled
//! index so that probability is conserved for unitary transforms.
//!
//! Detection is modeled after threshold detectors on the four
//! computational bins: only the six cross-bin coincidences count, and
//! everything else — bunched pairs, light scattered outside the
//! computational modes, amplitude truncated off the window — lands in a
//! residual bucket.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::target::TargetUnitary;
use crate::transform::ModeTransform;

/// Largest window dimension the Fock-basis oracle accepts.
pub const ORACLE_WINDOW_LIMIT: usize = 12;

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The four Bell states on two frequency-bin qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellState {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellState {
    /// Stable label used in reports and file output.
    pub fn label(self) -> &'static str {
        match self {
            BellState::PsiPlus => "psi_plus",
            BellState::PsiMinus => "psi_minus",
            BellState::PhiPlus => "phi_plus",
            BellState::PhiMinus => "phi_minus",
        }
    }
}

impl std::fmt::Display for BellState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Symmetric two-photon amplitude table over unordered bin pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonState {
    amplitudes: BTreeMap<(i32, i32), Complex64>,
}

impl TwoPhotonState {
    /// Builds a state from (pair, amplitude) entries. Pairs are
    /// canonicalized to j ≤ k; listing the same pair twice (in either
    /// order) is rejected rather than silently summed.
    pub fn from_pairs(entries: &[((i32, i32), Complex64)]) -> Result<Self> {
        let mut amplitudes = BTreeMap::new();
        for &((j, k), amp) in entries {
            let key = (j.min(k), j.max(k));
            if amplitudes.insert(key, amp).is_some() {
                return Err(Error::InvalidField {
                    field: "amplitudes".into(),
                    message: format!("pair ({}, {}) listed twice", key.0, key.1),
                });
            }
        }
        Ok(Self { amplitudes })
    }

    /// Amplitude on pair {j, k} (order-insensitive; 0 when absent).
    pub fn amplitude(&self, j: i32, k: i32) -> Complex64 {
        self.amplitudes
            .get(&(j.min(k), j.max(k)))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Canonical (pair, amplitude) entries in ascending key order.
    pub fn amplitudes(&self) -> impl Iterator<Item = (&(i32, i32), &Complex64)> {
        self.amplitudes.iter()
    }

    /// Total probability Σ|c|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|c| c.norm_sqr()).sum()
    }

    /// Inner product ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(k, c)| c.conj() * other.amplitudes.get(k).copied().unwrap_or_default())
            .sum()
    }
}

/// Prepares a Bell state on the computational bins of `target`.
///
/// Ψ± span {A₀B₁, A₁B₀} and Φ± span {A₀B₀, A₁B₁}; the minus states carry
/// a sign flip on the term involving B₀ (for Ψ) or B₁ (for Φ), i.e. a π
/// phase applied to one bin of the plus state.
pub fn bell_state(kind: BellState, target: &TargetUnitary) -> TwoPhotonState {
    let [a0, a1, b0, b1] = target.logical_bins();
    let h = Complex64::new(SQRT_HALF, 0.0);
    let entries = match kind {
        BellState::PsiPlus => [((a0, b1), h), ((a1, b0), h)],
        BellState::PsiMinus => [((a0, b1), h), ((a1, b0), -h)],
        BellState::PhiPlus => [((a0, b0), h), ((a1, b1), h)],
        BellState::PhiMinus => [((a0, b0), h), ((a1, b1), -h)],
    };
    // Bin assignments never collide, so the constructor cannot fail here.
    TwoPhotonState::from_pairs(&entries).expect("distinct computational bins")
}

/// Propagates a two-photon state through `w`.
///
/// For each input pair (j ≤ k) with amplitude c, every output pair
/// (p ≤ q) gains c·κ_in·κ_out·(T_pj·T_qk + T_pk·T_qj), where κ is 1/√2
/// when its pair has equal indices and 1 otherwise, and T = conj(W). The
/// κ factors are exactly the bosonic √2 bookkeeping for doubly occupied
/// bins, which makes the map norm-preserving for unitary full-window T.
pub fn propagate_two_photon(w: &ModeTransform, state: &TwoPhotonState) -> Result<TwoPhotonState> {
    let grid = w.grid();
    let dim = grid.dim();
    let t = w.matrix().mapv(|z| z.conj());
    let mut out = vec![Complex64::new(0.0, 0.0); dim * (dim + 1) / 2];
    for (&(j, k), &c) in state.amplitudes() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        if !grid.contains(j) || !grid.contains(k) {
            return Err(Error::StateOutsideWindow(j, k));
        }
        let jn = grid.index_of(j)?;
        let kn = grid.index_of(k)?;
        let kappa_in = if j == k { SQRT_HALF } else { 1.0 };
        for p in 0..dim {
            for q in p..dim {
                let kappa_out = if p == q { SQRT_HALF } else { 1.0 };
                let term = t[(p, jn)] * t[(q, kn)] + t[(p, kn)] * t[(q, jn)];
                out[pair_index(p, q, dim)] += c * kappa_in * kappa_out * term;
            }
        }
    }
    let mut amplitudes = BTreeMap::new();
    for p in 0..dim {
        for q in p..dim {
            let amp = out[pair_index(p, q, dim)];
            if amp != Complex64::new(0.0, 0.0) {
                amplitudes.insert((grid.bin_at(p), grid.bin_at(q)), amp);
            }
        }
    }
    Ok(TwoPhotonState { amplitudes })
}

/// Flat index of the canonical pair (p ≤ q) in an upper-triangle layout:
/// rows 0..p contribute dim, dim−1, … entries.
fn pair_index(p: usize, q: usize, dim: usize) -> usize {
    p * (2 * dim - p + 1) / 2 + (q - p)
}

/// Explicit matrix of a transform on the two-photon Fock basis.
///
/// Serves as the convention-free oracle: it is produced by applying the
/// transformed creation operators one at a time to basis vectors, with
/// the √(n+1) ladder factors written out, and shares no code with
/// [`propagate_two_photon`].
#[derive(Debug, Clone)]
pub struct TwoPhotonMatrix {
    pairs: Vec<(i32, i32)>,
    matrix: Array2<Complex64>,
}

impl TwoPhotonMatrix {
    /// Basis pairs labelling the rows/columns, canonically ordered.
    pub fn pairs(&self) -> &[(i32, i32)] {
        &self.pairs
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Applies the pair-basis matrix to a state.
    pub fn apply(&self, state: &TwoPhotonState) -> Result<TwoPhotonState> {
        let mut vec = vec![Complex64::new(0.0, 0.0); self.pairs.len()];
        for (&(j, k), &c) in state.amplitudes() {
            let idx = self
                .pairs
                .iter()
                .position(|&p| p == (j, k))
                .ok_or(Error::StateOutsideWindow(j, k))?;
            vec[idx] = c;
        }
        let mut amplitudes = BTreeMap::new();
        for (row, &pair) in self.pairs.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, &v) in vec.iter().enumerate() {
                acc += self.matrix[(row, col)] * v;
            }
            if acc != Complex64::new(0.0, 0.0) {
                amplitudes.insert(pair, acc);
            }
        }
        Ok(TwoPhotonState { amplitudes })
    }
}

/// Builds the induced two-photon matrix of `w` on the N(N+1)/2 pair basis
/// by second-quantized action on each basis vector. Only windows up to
/// [`ORACLE_WINDOW_LIMIT`] are accepted — this is a validation tool, not
/// the production propagation path.
pub fn fock_oracle(w: &ModeTransform) -> Result<TwoPhotonMatrix> {
    let grid = w.grid();
    let dim = grid.dim();
    if dim > ORACLE_WINDOW_LIMIT {
        return Err(Error::WindowTooLargeForOracle(dim, ORACLE_WINDOW_LIMIT));
    }
    let t = w.matrix().mapv(|z| z.conj());
    let n_pairs = dim * (dim + 1) / 2;
    let mut pairs = Vec::with_capacity(n_pairs);
    for p in 0..dim {
        for q in p..dim {
            pairs.push((grid.bin_at(p), grid.bin_at(q)));
        }
    }
    let mut matrix = Array2::zeros((n_pairs, n_pairs));
    for j in 0..dim {
        for k in j..dim {
            let col = pair_index(j, k, dim);
            // Basis vector |pair (j,k)⟩ = norm_in · a_j† a_k† |0⟩.
            let norm_in = if j == k { SQRT_HALF } else { 1.0 };
            // First creation operator: a_k† |0⟩ → Σ_q T_qk |1_q⟩.
            // Second: a_j† |1_q⟩ → |1_p 1_q⟩ for p ≠ q, √2·|2_p⟩ for p = q.
            for q in 0..dim {
                let single = t[(q, k)];
                for p in 0..dim {
                    let ladder = if p == q { std::f64::consts::SQRT_2 } else { 1.0 };
                    let row = pair_index(p.min(q), p.max(q), dim);
                    matrix[(row, col)] += norm_in * ladder * t[(p, j)] * single;
                }
            }
        }
    }
    Ok(TwoPhotonMatrix { pairs, matrix })
}

/// Probability assigned to one of the six coincidence outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairProbability {
    /// Logical name, e.g. "A0B1".
    pub label: String,
    /// The two bins the detectors sit on, canonical order.
    pub bins: (i32, i32),
    pub probability: f64,
}

/// Predicted coincidence probabilities on the six computational-bin pairs,
/// plus everything that falls outside them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidencePattern {
    /// Six entries in the fixed order A₀A₁, A₀B₀, A₀B₁, A₁B₀, A₁B₁, B₀B₁.
    pub pairs: Vec<PairProbability>,
    /// Probability of any other outcome: both photons in one bin, light in
    /// non-computational bins, or amplitude truncated off the window.
    pub residual: f64,
}

impl CoincidencePattern {
    /// Probability for a labelled pair, if present.
    pub fn probability(&self, label: &str) -> Option<f64> {
        self.pairs.iter().find(|p| p.label == label).map(|p| p.probability)
    }

    /// Sum of the six coincidence probabilities.
    pub fn total_coincidence(&self) -> f64 {
        self.pairs.iter().map(|p| p.probability).sum()
    }
}

/// The six logical detector pairings, in report order.
const PAIR_SLOTS: [(usize, usize, &str); 6] = [
    (0, 1, "A0A1"),
    (0, 2, "A0B0"),
    (0, 3, "A0B1"),
    (1, 2, "A1B0"),
    (1, 3, "A1B1"),
    (2, 3, "B0B1"),
];

/// Propagates `state` through `w` and tallies the six cross-bin
/// coincidence probabilities for the target's bin assignment. The residual
/// is measured against the input norm, so window truncation shows up there
/// rather than vanishing silently.
pub fn coincidence_pattern(
    w: &ModeTransform,
    state: &TwoPhotonState,
    target: &TargetUnitary,
) -> Result<CoincidencePattern> {
    let input_norm = state.norm_sqr();
    let out = propagate_two_photon(w, state)?;
    let logical = target.logical_bins();
    let names = ["A0", "A1", "B0", "B1"];
    let mut pairs = Vec::with_capacity(6);
    let mut covered = 0.0;
    for (i, j, _) in PAIR_SLOTS {
        let (bi, bj) = (logical[i], logical[j]);
        let p = out.amplitude(bi, bj).norm_sqr();
        covered += p;
        pairs.push(PairProbability {
            label: format!("{}{}", names[i], names[j]),
            bins: (bi.min(bj), bi.max(bj)),
            probability: p,
        });
    }
    Ok(CoincidencePattern { pairs, residual: (input_norm - covered).max(0.0) })
}

/// Measurement outcomes that identify each discriminable Bell state.
fn signature_labels(kind: BellState) -> Option<[&'static str; 2]> {
    match kind {
        BellState::PsiPlus => Some(["A0A1", "B0B1"]),
        BellState::PsiMinus => Some(["A0B1", "A1B0"]),
        BellState::PhiPlus | BellState::PhiMinus => None,
    }
}

/// Discrimination quality for one input state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    /// Which Bell state was sent in.
    pub input_label: String,
    /// Weight (probability or counts) on the input's two signature pairs.
    pub n_correct: f64,
    /// Weight on the two pairs that would identify the *other* Ψ state.
    pub n_incorrect: f64,
    /// n_correct / (n_correct + n_incorrect).
    pub accuracy: f64,
    /// Binomial error √(a(1−a)/N) for sampled counts; 0 for probabilities.
    pub std_error: f64,
}

fn accuracy_from_weights(
    input_kind: BellState,
    weight: impl Fn(&str) -> f64,
    sampled: bool,
) -> Result<AccuracyReport> {
    let correct = signature_labels(input_kind).ok_or_else(|| Error::InvalidField {
        field: "input_kind".into(),
        message: "Φ states produce identical patterns and cannot be discriminated".into(),
    })?;
    let other = match input_kind {
        BellState::PsiPlus => BellState::PsiMinus,
        _ => BellState::PsiPlus,
    };
    let incorrect = signature_labels(other).expect("Ψ states have signatures");
    let n_correct: f64 = correct.iter().map(|l| weight(l)).sum();
    let n_incorrect: f64 = incorrect.iter().map(|l| weight(l)).sum();
    let total = n_correct + n_incorrect;
    if total <= 0.0 {
        return Err(Error::NoEvents);
    }
    let accuracy = n_correct / total;
    let std_error =
        if sampled { (accuracy * (1.0 - accuracy) / total).sqrt() } else { 0.0 };
    Ok(AccuracyReport {
        input_label: input_kind.label().to_string(),
        n_correct,
        n_incorrect,
        accuracy,
        std_error,
    })
}

/// Scores how reliably a coincidence pattern identifies `input_kind`.
/// Only Ψ⁺ and Ψ⁻ are discriminable; correct pairs are {A₀A₁, B₀B₁} for
/// Ψ⁺ and {A₀B₁, A₁B₀} for Ψ⁻, and each counts the other's pairs as the
/// incorrect outcomes. Probabilities carry no sampling noise, so
/// `std_error` is 0 here.
pub fn discrimination_accuracy(
    pattern: &CoincidencePattern,
    input_kind: BellState,
) -> Result<AccuracyReport> {
    accuracy_from_weights(input_kind, |l| pattern.probability(l).unwrap_or(0.0), false)
}

/// Same scoring on integer counts, with the binomial standard error.
pub fn discrimination_accuracy_from_counts(
    counts: &CoincidenceCounts,
    input_kind: BellState,
) -> Result<AccuracyReport> {
    accuracy_from_weights(input_kind, |l| counts.count(l).unwrap_or(0) as f64, true)
}

/// Sampled coincidence counts for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCount {
    pub label: String,
    pub bins: (i32, i32),
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceCounts {
    pub pairs: Vec<PairCount>,
    /// Expected total photon pairs sent into the analyzer.
    pub total_pairs: u64,
    pub seed: u64,
}

impl CoincidenceCounts {
    pub fn count(&self, label: &str) -> Option<u64> {
        self.pairs.iter().find(|p| p.label == label).map(|p| p.count)
    }
}

/// Draws independent Poisson counts with mean `total_pairs`·probability
/// for each of the six pairs, in their fixed order, from a ChaCha stream
/// seeded with `rng_seed`. Identical seeds give identical counts;
/// zero-probability pairs never fire.
pub fn poisson_sample_counts(
    pattern: &CoincidencePattern,
    total_pairs: u64,
    rng_seed: u64,
) -> CoincidenceCounts {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let pairs = pattern
        .pairs
        .iter()
        .map(|p| {
            let mean = p.probability * total_pairs as f64;
            let count = if mean > 0.0 {
                Poisson::new(mean).expect("positive finite mean").sample(&mut rng) as u64
            } else {
                0
            };
            PairCount { label: p.label.clone(), bins: p.bins, count }
        })
        .collect();
    CoincidenceCounts { pairs, total_pairs, seed: rng_seed }
}
