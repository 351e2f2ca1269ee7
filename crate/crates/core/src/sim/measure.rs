use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use super::StateVector;
use crate::error::{Error, Result};

/// Kept-pattern masses at or below this are treated as zero.
pub const IMPOSSIBLE_MASS: f64 = 1e-24;

/// Conditional readout `Ω = P(target=1 | kept pattern)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PostSelectionResult {
    pub omega: f64,
    /// `P(kept pattern)`, the denominator of `omega`.
    pub kept_mass: f64,
    /// Probability of the heralding pattern; equals `kept_mass`.
    pub success_probability: f64,
    /// `P(target=1 ∧ kept pattern)`, the numerator of `omega`.
    pub target_mass: f64,
    /// Number of kept shots; `None` in exact mode.
    pub shots_kept: Option<u64>,
}

fn check_qubits(state: &StateVector, qubits: &[usize]) -> Result<()> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= state.n_qubits() {
            return Err(Error::InvalidGate(format!(
                "qubit {q} out of range for {} qubits",
                state.n_qubits()
            )));
        }
        if qubits[..i].contains(&q) {
            return Err(Error::InvalidGate(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

/// Exact post-selection on `kept_qubits` reading `kept_values`.
pub fn post_select(
    state: &StateVector,
    kept_qubits: &[usize],
    kept_values: &[bool],
    target: usize,
) -> Result<PostSelectionResult> {
    if kept_qubits.len() != kept_values.len() {
        return Err(Error::Input(format!(
            "{} kept qubits but {} kept values",
            kept_qubits.len(),
            kept_values.len()
        )));
    }
    if kept_qubits.contains(&target) {
        return Err(Error::Input(format!(
            "target qubit {target} is also post-selected"
        )));
    }
    let mut all = kept_qubits.to_vec();
    all.push(target);
    check_qubits(state, &all)?;

    let mask = kept_qubits.iter().fold(0usize, |m, &q| m | (1 << q));
    let pattern = kept_qubits
        .iter()
        .zip(kept_values)
        .fold(0usize, |p, (&q, &v)| p | ((v as usize) << q));
    let tbit = 1usize << target;

    let (mut kept, mut joint) = (0.0, 0.0);
    for (i, a) in state.amplitudes().iter().enumerate() {
        if i & mask == pattern {
            let p = a.norm_sqr();
            kept += p;
            if i & tbit != 0 {
                joint += p;
            }
        }
    }
    if kept <= IMPOSSIBLE_MASS {
        return Err(Error::PostSelectionImpossible);
    }
    Ok(PostSelectionResult {
        omega: (joint / kept).clamp(0.0, 1.0),
        kept_mass: kept.min(1.0),
        success_probability: kept.min(1.0),
        target_mass: joint,
        shots_kept: None,
    })
}

/// `P(qubit = 1)`.
pub fn marginal_one(state: &StateVector, qubit: usize) -> Result<f64> {
    check_qubits(state, &[qubit])?;
    let bit = 1usize << qubit;
    Ok(state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & bit != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Occurrences of one measured outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShotRecord {
    /// Bit `k` is the value read on `measured_qubits[k]`.
    pub outcome: u64,
    /// Outcome rendered with `measured_qubits[0]` as the rightmost character.
    pub bitstring: String,
    pub count: u64,
}

fn render(outcome: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|k| if (outcome >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Multinomial sampling of the measured-qubit marginal using ChaCha20
/// seeded with `seed` via `seed_from_u64`.
pub fn sample_shots(
    state: &StateVector,
    measured_qubits: &[usize],
    shots: u64,
    seed: u64,
) -> Result<Vec<ShotRecord>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    sample_shots_with(state, measured_qubits, shots, &mut rng)
}

/// [`sample_shots`] with a caller-supplied generator.
pub fn sample_shots_with<R: Rng + ?Sized>(
    state: &StateVector,
    measured_qubits: &[usize],
    shots: u64,
    rng: &mut R,
) -> Result<Vec<ShotRecord>> {
    if shots == 0 {
        return Err(Error::Input("shots must be at least 1".into()));
    }
    check_qubits(state, measured_qubits)?;
    if measured_qubits.len() > 24 {
        return Err(Error::Input(
            "at most 24 measured qubits are supported".into(),
        ));
    }
    let width = measured_qubits.len();
    let mut marginal = vec![0.0f64; 1 << width];
    for (i, a) in state.amplitudes().iter().enumerate() {
        let outcome = measured_qubits
            .iter()
            .enumerate()
            .fold(0usize, |o, (k, &q)| o | (((i >> q) & 1) << k));
        marginal[outcome] += a.norm_sqr();
    }
    let dist = WeightedIndex::new(&marginal)
        .map_err(|e| Error::Input(format!("cannot sample state: {e}")))?;
    let mut counts = vec![0u64; marginal.len()];
    for _ in 0..shots {
        counts[dist.sample(rng)] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(o, count)| ShotRecord {
            outcome: o as u64,
            bitstring: render(o as u64, width),
            count,
        })
        .collect())
}

/// Shot-based estimate of `Ω`. Qubits are given as positions within the
/// `measured_qubits` list that produced `records`.
pub fn post_select_shots(
    records: &[ShotRecord],
    kept_positions: &[usize],
    kept_values: &[bool],
    target_position: usize,
) -> Result<PostSelectionResult> {
    if kept_positions.len() != kept_values.len() {
        return Err(Error::Input(
            "kept positions and values differ in length".into(),
        ));
    }
    if kept_positions.contains(&target_position) {
        return Err(Error::Input("target position is also post-selected".into()));
    }
    let mask = kept_positions.iter().fold(0u64, |m, &k| m | (1 << k));
    let pattern = kept_positions
        .iter()
        .zip(kept_values)
        .fold(0u64, |p, (&k, &v)| p | ((v as u64) << k));
    let total: u64 = records.iter().map(|r| r.count).sum();
    let (mut kept, mut hits) = (0u64, 0u64);
    for r in records {
        if r.outcome & mask == pattern {
            kept += r.count;
            if (r.outcome >> target_position) & 1 == 1 {
                hits += r.count;
            }
        }
    }
    if kept == 0 {
        return Err(Error::PostSelectionImpossible);
    }
    let kept_mass = kept as f64 / total as f64;
    Ok(PostSelectionResult {
        omega: hits as f64 / kept as f64,
        kept_mass,
        success_probability: kept_mass,
        target_mass: hits as f64 / total as f64,
        shots_kept: Some(kept),
    })
}
