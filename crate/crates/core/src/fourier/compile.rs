use serde::{Deserialize, Serialize};

use super::series::{CosSquaredSeries, CosSquaredTerm, SplitSeries};
use crate::arith::AmplitudeLoader;
use crate::circuit::{Circuit, ToffoliVariant};
use crate::error::{Error, Result};
use crate::sim::{marginal_one, run_circuit};

/// Default cap on the number of nonzero terms accepted by [`compile_series`].
pub const MAX_TERMS: usize = 32;

const RANGE_SLACK: f64 = 1e-12;

/// Terms with smaller magnitude (quadrature noise) are not given a selector slot.
pub const NEGLIGIBLE_TERM: f64 = 1e-14;

fn significant_terms(series: &CosSquaredSeries) -> Vec<CosSquaredTerm> {
    series
        .terms()
        .into_iter()
        .filter(|t| t.coefficient.abs() > NEGLIGIBLE_TERM)
        .collect()
}

/// `value = slope · P(readout = 1) + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineReadout {
    pub slope: f64,
    pub offset: f64,
}

impl AffineReadout {
    pub fn apply(&self, probability: f64) -> f64 {
        self.slope * probability + self.offset
    }

    pub fn invert(&self, value: f64) -> f64 {
        (value - self.offset) / self.slope
    }
}

#[derive(Debug, Clone)]
pub struct CompiledSeries {
    pub circuit: Circuit,
    pub readout_qubit: usize,
    pub readout: AffineReadout,
}

impl CompiledSeries {
    /// Exact `P(readout = 1)`.
    pub fn readout_probability(&self) -> Result<f64> {
        let state = run_circuit(&self.circuit, None)?;
        marginal_one(&state, self.readout_qubit)
    }

    /// The encoded value recovered through the affine readout.
    pub fn evaluate(&self) -> Result<f64> {
        Ok(self.readout.apply(self.readout_probability()?))
    }
}

fn selector_width(terms: usize) -> usize {
    terms.next_power_of_two().trailing_zeros() as usize
}

fn loaded_value(term: &CosSquaredTerm, x: f64) -> Result<f64> {
    let v = term.coefficient.abs() * term.shape(x);
    if v > 1.0 + RANGE_SLACK {
        return Err(Error::Normalization(format!(
            "term {}·cos²({}·x + {}) reaches {v} at x = {x}",
            term.coefficient, term.frequency, term.phase
        )));
    }
    Ok(v.min(1.0))
}

fn angle(value: f64) -> Result<f64> {
    Ok(AmplitudeLoader::new(value.clamp(0.0, 1.0))?.angle())
}

/// [`compile_series_with_cap`] with the cap [`MAX_TERMS`].
pub fn compile_series(series: &CosSquaredSeries, x: f64) -> Result<CompiledSeries> {
    compile_series_with_cap(series, x, MAX_TERMS)
}

/// Loads the series value at `x` onto one readout qubit.
///
/// Terms above [`NEGLIGIBLE_TERM`] are indexed by a Hadamard selector register `a` of
/// `k = ⌈log₂ T⌉` qubits; a multiplexed `Ry` writes term `j` into the readout
/// `r`, as `v_j = |c_j|·cos²(ω_j x + φ_j)` for positive coefficients and as
/// `1 − v_j` for negative ones (unused selector patterns load 0). Then
/// `P(r=1) = 2^-k Σ_j u_j` and the value is `2^k·P(r=1) − n_neg`.
pub fn compile_series_with_cap(
    series: &CosSquaredSeries,
    x: f64,
    cap: usize,
) -> Result<CompiledSeries> {
    if !x.is_finite() {
        return Err(Error::Input(format!("input point {x} is not finite")));
    }
    let total = series.eval(x);
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&total) {
        return Err(Error::Normalization(format!(
            "series value {total} at x = {x} outside [0, 1]; apply the normalization constant first"
        )));
    }
    let terms = significant_terms(series);
    if terms.len() > cap {
        return Err(Error::Input(format!(
            "{} nonzero terms exceed the cap of {cap}",
            terms.len()
        )));
    }
    let k = selector_width(terms.len().max(1));
    let mut angles = vec![0.0; 1 << k];
    let mut negatives = 0usize;
    for (slot, term) in angles.iter_mut().zip(&terms) {
        let v = loaded_value(term, x)?;
        *slot = if term.coefficient < 0.0 {
            negatives += 1;
            angle(1.0 - v)?
        } else {
            angle(v)?
        };
    }

    let mut circuit = Circuit::new();
    let selectors: Vec<usize> = if k > 0 {
        circuit.add_register("a", k)?.qubits().collect()
    } else {
        Vec::new()
    };
    let r = circuit.add_register("r", 1)?.at(0);
    for &q in &selectors {
        circuit.h(q)?;
    }
    circuit.uc_ry(&selectors, r, &angles)?;
    circuit.measure(r)?;
    Ok(CompiledSeries {
        circuit,
        readout_qubit: r,
        readout: AffineReadout {
            slope: (1u64 << k) as f64,
            offset: -(negatives as f64),
        },
    })
}

/// `Σ_k z_k · D(x_k)`, evaluated classically.
pub fn weighted_expectation(series: &CosSquaredSeries, points: &[f64], weights: &[f64]) -> f64 {
    points
        .iter()
        .zip(weights)
        .map(|(&x, z)| z * series.eval(x))
        .sum()
}

fn check_grid(points: &[f64], weights: &[f64]) -> Result<usize> {
    if points.is_empty() || !points.len().is_power_of_two() {
        return Err(Error::Input(format!(
            "point count {} must be a nonzero power of two",
            points.len()
        )));
    }
    if points.len() != weights.len() {
        return Err(Error::Input(format!(
            "{} points but {} weights",
            points.len(),
            weights.len()
        )));
    }
    if let Some(x) = points.iter().find(|x| !x.is_finite()) {
        return Err(Error::Input(format!("input point {x} is not finite")));
    }
    for &z in weights {
        AmplitudeLoader::new(z)?;
    }
    Ok(points.len().trailing_zeros() as usize)
}

/// Evaluation circuit for `Σ_k z_k · D(x_k)` with a nonnegative series part.
///
/// Registers: `s` (uniform superposition over the `2^n` points), `w` (weight
/// `z_k` multiplexed on `s`), `a` (term selector), `d` (term value
/// multiplexed on `s` and `a`), `o` (Toffoli of `w` and `d`). The readout is
/// `P(o=1) · 2^(n+k)`.
pub fn build_weighted_series(
    part: &CosSquaredSeries,
    points: &[f64],
    weights: &[f64],
    variant: ToffoliVariant,
) -> Result<CompiledSeries> {
    let n = check_grid(points, weights)?;
    let terms = significant_terms(part);
    if let Some(t) = terms.iter().find(|t| t.coefficient < 0.0) {
        return Err(Error::Input(format!(
            "coefficient {} is negative; split the series by sign first",
            t.coefficient
        )));
    }
    let k = selector_width(terms.len().max(1));

    let mut circuit = Circuit::new();
    circuit.set_magnitude_only(true);
    let s: Vec<usize> = if n > 0 {
        circuit.add_register("s", n)?.qubits().collect()
    } else {
        Vec::new()
    };
    let w = circuit.add_register("w", 1)?.at(0);
    let a: Vec<usize> = if k > 0 {
        circuit.add_register("a", k)?.qubits().collect()
    } else {
        Vec::new()
    };
    let d = circuit.add_register("d", 1)?.at(0);
    let o = circuit.add_register("o", 1)?.at(0);

    for &q in s.iter().chain(&a) {
        circuit.h(q)?;
    }
    let weight_angles = weights
        .iter()
        .map(|&z| angle(z))
        .collect::<Result<Vec<_>>>()?;
    circuit.uc_ry(&s, w, &weight_angles)?;

    let stride = points.len();
    let mut value_angles = vec![0.0; stride << k];
    for (j, term) in terms.iter().enumerate() {
        for (p, &x) in points.iter().enumerate() {
            value_angles[p + stride * j] = angle(loaded_value(term, x)?)?;
        }
    }
    let controls: Vec<usize> = s.iter().chain(&a).copied().collect();
    circuit.uc_ry(&controls, d, &value_angles)?;
    circuit.toffoli(variant, w, d, o)?;
    circuit.measure(o)?;

    Ok(CompiledSeries {
        circuit,
        readout_qubit: o,
        readout: AffineReadout {
            slope: (1u64 << (n + k)) as f64,
            offset: 0.0,
        },
    })
}

/// Readouts of the two sign-split evaluation circuits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitEvaluation {
    pub positive: f64,
    pub negative: f64,
    pub difference: f64,
}

impl SplitSeries {
    /// Runs one evaluation circuit per sign and subtracts their readouts.
    pub fn evaluate_weighted(
        &self,
        points: &[f64],
        weights: &[f64],
        variant: ToffoliVariant,
    ) -> Result<SplitEvaluation> {
        let positive =
            build_weighted_series(&self.positive, points, weights, variant)?.evaluate()?;
        let negative =
            build_weighted_series(&self.negative, points, weights, variant)?.evaluate()?;
        Ok(SplitEvaluation {
            positive,
            negative,
            difference: positive - negative,
        })
    }
}
