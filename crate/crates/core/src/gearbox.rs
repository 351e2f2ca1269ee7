//! Gearbox circuits: post-selected blocks that map an input angle `θ` to the
//! effective angle `arctan(tan^(2^d) θ)` on a target qubit, so that the
//! heralded probability of reading 1 approaches a unit step at `θ = π/4`.
//!
//! Angle mapping: a gearbox driven by `θ` rotates its leaf controls with
//! `Ry(∓2θ)`, so `θ ∈ [0, π/2]` sweeps the full step.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::circuit::{Circuit, QReg, ToffoliVariant};
use crate::error::{Error, Result};
use crate::sim::{post_select, run_circuit, PostSelectionResult};

/// Deepest gearbox the builder emits (`2^4 = 16` qubits).
pub const MAX_DEPTH: u32 = 4;

/// Depth and input angle of a gearbox.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GearboxSpec {
    depth: u32,
    theta: f64,
}

impl GearboxSpec {
    /// `theta` is clamped into `[0, π/2]`; non-finite angles and `depth = 0`
    /// are rejected.
    pub fn new(depth: u32, theta: f64) -> Result<Self> {
        if depth == 0 || depth > 16 {
            return Err(Error::DepthOutOfRange { depth, max: 16 });
        }
        if !theta.is_finite() {
            return Err(Error::Input(format!("gearbox angle {theta} is not finite")));
        }
        Ok(Self {
            depth,
            theta: theta.clamp(0.0, FRAC_PI_2),
        })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `2^d − 1`.
    pub fn control_count(&self) -> usize {
        (1usize << self.depth) - 1
    }

    pub fn n_qubits(&self) -> usize {
        1usize << self.depth
    }

    /// The target is the highest qubit.
    pub fn target_qubit(&self) -> usize {
        self.control_count()
    }

    pub fn control_qubits(&self) -> Vec<usize> {
        (0..self.control_count()).collect()
    }
}

/// Closed-form quantities of a gearbox at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GearboxAnalytics {
    /// `S∘d(θ) = sin^(2^(d+1)) θ / (cos^(2^(d+1)) θ + sin^(2^(d+1)) θ)`.
    pub s_composed: f64,
    /// `ρ²_d(θ) = cos^(2^(d+1)) θ + sin^(2^(d+1)) θ`.
    pub success: f64,
    /// Amplitude of `|0⟩_t|0…0⟩_c`: `cos^(2^d) θ`.
    pub amp0: f64,
    /// Amplitude of `|1⟩_t|0…0⟩_c`: `sin^(2^d) θ`.
    pub amp1: f64,
}

pub fn analytics(spec: &GearboxSpec) -> GearboxAnalytics {
    let p = 1i32 << spec.depth;
    let (s, c) = spec.theta.sin_cos();
    let amp0 = c.powi(p);
    let amp1 = s.powi(p);
    let (w0, w1) = (amp0 * amp0, amp1 * amp1);
    let success = w0 + w1;
    GearboxAnalytics {
        s_composed: w1 / success,
        success,
        amp0,
        amp1,
    }
}

/// `S∘d(θ)` for any real `θ` in `[0, π/2]`.
pub fn step_composed(depth: u32, theta: f64) -> f64 {
    let p = 1i32 << (depth + 1);
    let (s, c) = theta.sin_cos();
    let (a, b) = (c.powi(p), s.powi(p));
    b / (a + b)
}

/// `ρ²_d(θ)`.
pub fn success_probability(depth: u32, theta: f64) -> f64 {
    let p = 1i32 << (depth + 1);
    let (s, c) = theta.sin_cos();
    c.powi(p) + s.powi(p)
}

/// Unit step `u(θ − π/4)` with `u(0) = 1/2`.
pub fn unit_step(theta: f64) -> f64 {
    let x = theta - FRAC_PI_4;
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Max of `|S∘d(θ) − u(θ − π/4)|` over grid points at least `band` away from `π/4`.
pub fn step_approximation_error(depth: u32, theta_grid: &[f64], band: f64) -> f64 {
    theta_grid
        .iter()
        .filter(|&&t| (t - FRAC_PI_4).abs() >= band)
        .map(|&t| (step_composed(depth, t) - unit_step(t)).abs())
        .fold(0.0, f64::max)
}

/// Builds the `d`-step gearbox with leaf rotation `Ry(-2θ)` / `Ry(2θ)`.
pub fn build_gearbox(spec: &GearboxSpec) -> Result<Circuit> {
    build_gearbox_with_angle(spec, 2.0 * spec.theta)
}

/// Gearbox layout with an explicit leaf rotation angle: `Ry(-angle)` before
/// and `Ry(angle)` after the parity network.
///
/// Registers: `c` (`2^d − 1` controls) then `t`. The first `2^(d-1)` controls
/// are rotated leaves; each remaining control holds the parity of two
/// neighbouring leaves, so the all-zero control outcome forces every leaf
/// into the same branch. The target copies the first leaf.
pub fn build_gearbox_with_angle(spec: &GearboxSpec, angle: f64) -> Result<Circuit> {
    if spec.depth > MAX_DEPTH {
        return Err(Error::DepthOutOfRange {
            depth: spec.depth,
            max: MAX_DEPTH,
        });
    }
    let mut circuit = Circuit::new();
    let c = circuit.add_register("c", spec.control_count())?;
    let t = circuit.add_register("t", 1)?;
    append_gearbox(&mut circuit, c, t.at(0), angle)?;
    circuit.measure_all();
    Ok(circuit)
}

fn append_gearbox(circuit: &mut Circuit, controls: QReg, target: usize, angle: f64) -> Result<()> {
    let leaves = controls.len().div_ceil(2);
    let leaf = |i: usize| controls.at(i);
    let parity = |i: usize| controls.at(leaves + i);

    for i in 0..leaves {
        circuit.ry(leaf(i), -angle)?;
    }
    if leaves == 1 {
        circuit.cx(leaf(0), target)?;
    } else {
        circuit.cx(leaf(0), parity(0))?;
        circuit.cx(parity(0), target)?;
        circuit.cx(leaf(1), parity(0))?;
        for i in 1..leaves - 1 {
            circuit.cx(leaf(i), parity(i))?;
            circuit.cx(leaf(i + 1), parity(i))?;
        }
    }
    for i in 0..leaves {
        circuit.ry(leaf(i), angle)?;
    }
    Ok(())
}

/// A circuit together with its heralding pattern (all kept qubits read 0)
/// and the qubit whose conditional `P(1)` is the output.
#[derive(Debug, Clone)]
pub struct PostSelectedCircuit {
    pub circuit: Circuit,
    pub kept: Vec<usize>,
    pub target: usize,
}

impl PostSelectedCircuit {
    pub fn evaluate(&self) -> Result<PostSelectionResult> {
        let state = run_circuit(&self.circuit, None)?;
        post_select(
            &state,
            &self.kept,
            &vec![false; self.kept.len()],
            self.target,
        )
    }

    /// Qubits to sample for a shot-based estimate: kept qubits then target.
    pub fn measured(&self) -> Vec<usize> {
        let mut m = self.kept.clone();
        m.push(self.target);
        m
    }
}

pub fn gearbox_experiment(spec: &GearboxSpec) -> Result<PostSelectedCircuit> {
    Ok(PostSelectedCircuit {
        circuit: build_gearbox(spec)?,
        kept: spec.control_qubits(),
        target: spec.target_qubit(),
    })
}

/// Double-step gearbox with an output qubit `o` that is rotated by `Ry(κ)`
/// only when the target reads 0 (X-conjugated `Ry(κ/2)`/CX ladder).
///
/// Registers `c`(3), `t`, `o`. Heralded on `c = 000`:
/// `P(o=1 | c=000) = (1 − S∘2(θ)) · sin²(κ/2)`.
pub fn build_rescaled_plateau(theta: f64, kappa: f64) -> Result<Circuit> {
    if !(0.0..=FRAC_PI_2).contains(&kappa) {
        return Err(Error::Input(format!("kappa {kappa} outside [0, π/2]")));
    }
    let spec = GearboxSpec::new(2, theta)?;
    let mut circuit = Circuit::new();
    let c = circuit.add_register("c", 3)?;
    let t = circuit.add_register("t", 1)?.at(0);
    let o = circuit.add_register("o", 1)?.at(0);
    append_gearbox(&mut circuit, c, t, 2.0 * spec.theta)?;
    circuit.x(t)?;
    circuit
        .ry(o, kappa / 2.0)?
        .cx(t, o)?
        .ry(o, -kappa / 2.0)?
        .cx(t, o)?;
    circuit.x(t)?;
    for q in c.qubits() {
        circuit.measure(q)?;
    }
    circuit.measure(o)?;
    Ok(circuit)
}

pub fn rescaled_plateau_law(theta: f64, kappa: f64) -> f64 {
    (1.0 - step_composed(2, theta)) * (kappa / 2.0).sin().powi(2)
}

pub fn rescaled_plateau_experiment(theta: f64, kappa: f64) -> Result<PostSelectedCircuit> {
    Ok(PostSelectedCircuit {
        circuit: build_rescaled_plateau(theta, kappa)?,
        kept: vec![0, 1, 2],
        target: 4,
    })
}

/// ReLU-like activation: a value qubit `q` loaded with `Ry(2x)` (so
/// `z(x) = sin² x`) and a double-step gearbox driven by `x`, combined by a
/// Toffoli onto `o`. Heralded on `c = 000`: `P(o=1) = sin²(x) · S∘2(x)`.
///
/// Registers `c`(3), `t`, `q`, `o`. Flagged magnitude-only, so the
/// relative-phase Toffoli may be used.
pub fn build_relu(x: f64) -> Result<Circuit> {
    build_relu_with(x, ToffoliVariant::Native)
}

pub fn build_relu_with(x: f64, variant: ToffoliVariant) -> Result<Circuit> {
    let spec = GearboxSpec::new(2, x)?;
    let mut circuit = Circuit::new();
    circuit.set_magnitude_only(true);
    let c = circuit.add_register("c", 3)?;
    let t = circuit.add_register("t", 1)?.at(0);
    let q = circuit.add_register("q", 1)?.at(0);
    let o = circuit.add_register("o", 1)?.at(0);
    circuit.ry(q, 2.0 * spec.theta)?;
    append_gearbox(&mut circuit, c, t, 2.0 * spec.theta)?;
    circuit.toffoli(variant, q, t, o)?;
    for q in c.qubits() {
        circuit.measure(q)?;
    }
    circuit.measure(o)?;
    Ok(circuit)
}

pub fn relu_law(x: f64) -> f64 {
    let x = x.clamp(0.0, FRAC_PI_2);
    x.sin().powi(2) * step_composed(2, x)
}

pub fn relu_experiment(x: f64, variant: ToffoliVariant) -> Result<PostSelectedCircuit> {
    Ok(PostSelectedCircuit {
        circuit: build_relu_with(x, variant)?,
        kept: vec![0, 1, 2],
        target: 5,
    })
}

/// Effective target angle after `d` steps, `arctan(tan^(2^d) θ)`, obtained by
/// iterating the one-step map `φ ↦ arctan(tan² φ)`.
pub fn effective_angle_nested(depth: u32, theta: f64) -> f64 {
    (0..depth).fold(theta, |phi, _| phi.tan().powi(2).atan())
}
