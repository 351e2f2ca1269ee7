use std::f64::consts::FRAC_PI_4;

use super::Circuit;
use crate::error::Result;

/// How a Toffoli is emitted into a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToffoliVariant {
    /// A single `Toffoli` gate instance.
    #[default]
    Native,
    /// Six-CX decomposition, equal to Toffoli up to a global phase.
    Exact,
    /// Three-CX relative-phase construction. Only allowed in circuits flagged
    /// magnitude-only.
    RelativePhase,
}

const A: usize = 0;
const B: usize = 1;
const T: usize = 2;

fn exact() -> Result<Circuit> {
    let tee = FRAC_PI_4;
    let mut c = Circuit::new();
    c.add_register("q", 3)?;
    c.h(T)?;
    c.cx(B, T)?.rz(T, -tee)?;
    c.cx(A, T)?.rz(T, tee)?;
    c.cx(B, T)?.rz(T, -tee)?;
    c.cx(A, T)?.rz(B, tee)?.rz(T, tee)?;
    c.h(T)?;
    c.cx(A, B)?.rz(A, tee)?.rz(B, -tee)?;
    c.cx(A, B)?;
    Ok(c)
}

fn relative_phase() -> Result<Circuit> {
    let q = FRAC_PI_4;
    let mut c = Circuit::new();
    c.add_register("q", 3)?;
    c.ry(T, q)?.cx(B, T)?.ry(T, q)?;
    c.cx(A, T)?;
    c.ry(T, -q)?.cx(B, T)?.ry(T, -q)?;
    Ok(c)
}

/// Toffoli with controls `q[0]`, `q[1]` and target `q[2]` using H, CX and
/// `Rz(±π/4)` (T and T† up to global phase). Six CX gates.
pub fn toffoli_exact_decomposition() -> Circuit {
    exact().expect("static construction")
}

/// Relative-phase Toffoli: `Ry(π/4)`/CX ladder with three CX gates.
///
/// Equals Toffoli times a diagonal sign on `|q0=1, q1=0, q2=1⟩`, so every
/// entry has the Toffoli magnitude.
pub fn toffoli_phase_equivalent_decomposition() -> Circuit {
    relative_phase().expect("static construction")
}
