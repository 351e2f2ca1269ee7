//! Gate-level circuit representation and the circuit-level constructions
//! built on it: Toffoli decompositions, uniformly-controlled rotations,
//! single-qubit rewriting to the `{Rz, √X}` basis and OpenQASM 2.0 export.

mod gate;
mod qasm;
mod toffoli;
mod ucry;
mod zsx;

use std::collections::{BTreeMap, BTreeSet};

pub use gate::{hadamard, mat2_mul, pauli_x, ry, rz, sqrt_x, GateInstance, GateKind, Mat2};
pub use qasm::export_qasm;
pub use toffoli::{
    toffoli_exact_decomposition, toffoli_phase_equivalent_decomposition, ToffoliVariant,
};
pub use ucry::{uc_ry, UCRySpec};
pub use zsx::{rewrite_1q_to_zsx, wrap_angle, zsx_decompose, ZsxDecomposition};

use crate::error::{Error, Result};

/// A named, contiguous block of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub offset: usize,
    pub size: usize,
}

/// Handle to a register's qubit range, returned when the register is declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QReg {
    offset: usize,
    size: usize,
}

impl QReg {
    /// Global index of the `i`-th qubit of the register.
    ///
    /// Panics if `i` is out of range; builders index their own registers.
    pub fn at(&self, i: usize) -> usize {
        assert!(
            i < self.size,
            "register index {i} out of range (size {})",
            self.size
        );
        self.offset + i
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        self.offset..self.offset + self.size
    }
}

/// Ordered gate list over named registers.
///
/// Qubit 0 is the least-significant bit of a basis index. Registers are laid
/// out in declaration order, so the first declared register holds the low bits.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    registers: Vec<Register>,
    gates: Vec<GateInstance>,
    measured: BTreeSet<usize>,
    magnitude_only: bool,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_register(&mut self, name: &str, size: usize) -> Result<QReg> {
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Register(format!("invalid register name {name:?}")));
        }
        if !name.starts_with(|c: char| c.is_ascii_lowercase()) {
            return Err(Error::Register(format!(
                "register name {name:?} must start with a lowercase letter"
            )));
        }
        if self.registers.iter().any(|r| r.name == name) {
            return Err(Error::Register(format!("duplicate register name {name:?}")));
        }
        if size == 0 {
            return Err(Error::Register(format!("register {name:?} is empty")));
        }
        let offset = self.n_qubits();
        self.registers.push(Register {
            name: name.to_string(),
            offset,
            size,
        });
        Ok(QReg { offset, size })
    }

    pub fn register(&self, name: &str) -> Option<QReg> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .map(|r| QReg {
                offset: r.offset,
                size: r.size,
            })
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn n_qubits(&self) -> usize {
        self.registers.iter().map(|r| r.size).sum()
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn measured(&self) -> &BTreeSet<usize> {
        &self.measured
    }

    /// Human-readable label such as `c[2]`.
    pub fn label(&self, qubit: usize) -> Option<String> {
        self.registers
            .iter()
            .find(|r| qubit >= r.offset && qubit < r.offset + r.size)
            .map(|r| format!("{}[{}]", r.name, qubit - r.offset))
    }

    /// Whether only squared magnitudes of computational outcomes are meaningful.
    /// Relative-phase gate substitutions are only accepted when this is set.
    pub fn magnitude_only(&self) -> bool {
        self.magnitude_only
    }

    pub fn set_magnitude_only(&mut self, flag: bool) {
        self.magnitude_only = flag;
    }

    pub fn push(&mut self, kind: GateKind, qubits: &[usize]) -> Result<&mut Self> {
        let gate = GateInstance::new(kind, qubits)?;
        self.push_gate(gate)
    }

    pub fn push_gate(&mut self, gate: GateInstance) -> Result<&mut Self> {
        let n = self.n_qubits();
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= n) {
            return Err(Error::InvalidGate(format!(
                "{gate}: qubit {q} is not in a declared register ({n} qubits)"
            )));
        }
        if gate.kind() == GateKind::Measure {
            self.measured.insert(gate.target());
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.push(GateKind::X, &[q])
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.push(GateKind::H, &[q])
    }

    pub fn sx(&mut self, q: usize) -> Result<&mut Self> {
        self.push(GateKind::SqrtX, &[q])
    }

    pub fn ry(&mut self, q: usize, angle: f64) -> Result<&mut Self> {
        self.push(GateKind::Ry(angle), &[q])
    }

    pub fn rz(&mut self, q: usize, angle: f64) -> Result<&mut Self> {
        self.push(GateKind::Rz(angle), &[q])
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(GateKind::CX, &[control, target])
    }

    pub fn cry(&mut self, control: usize, target: usize, angle: f64) -> Result<&mut Self> {
        self.push(GateKind::CRy(angle), &[control, target])
    }

    pub fn ccx(&mut self, c1: usize, c2: usize, target: usize) -> Result<&mut Self> {
        self.push(GateKind::Toffoli, &[c1, c2, target])
    }

    /// Appends a Toffoli realized according to `variant`.
    pub fn toffoli(
        &mut self,
        variant: ToffoliVariant,
        c1: usize,
        c2: usize,
        target: usize,
    ) -> Result<&mut Self> {
        let body = match variant {
            ToffoliVariant::Native => return self.ccx(c1, c2, target),
            ToffoliVariant::Exact => toffoli_exact_decomposition(),
            ToffoliVariant::RelativePhase => {
                if !self.magnitude_only {
                    return Err(Error::PhaseSensitive);
                }
                toffoli_phase_equivalent_decomposition()
            }
        };
        self.append(&body, &[c1, c2, target])?;
        Ok(self)
    }

    /// Appends a uniformly-controlled Ry; `angles[k]` is applied when the
    /// controls read pattern `k` (bit `i` of `k` is `controls[i]`).
    pub fn uc_ry(
        &mut self,
        controls: &[usize],
        target: usize,
        angles: &[f64],
    ) -> Result<&mut Self> {
        ucry::append_uc_ry(self, controls, target, angles)?;
        Ok(self)
    }

    /// Marks a qubit as measured at the end of the circuit (no gate is added).
    pub fn measure(&mut self, q: usize) -> Result<&mut Self> {
        if q >= self.n_qubits() {
            return Err(Error::InvalidGate(format!("cannot measure qubit {q}")));
        }
        self.measured.insert(q);
        Ok(self)
    }

    pub fn measure_all(&mut self) -> &mut Self {
        self.measured = (0..self.n_qubits()).collect();
        self
    }

    /// Appends the gates of `other`, mapping its qubit `i` to `qubit_map[i]`.
    pub fn append(&mut self, other: &Circuit, qubit_map: &[usize]) -> Result<()> {
        if qubit_map.len() != other.n_qubits() {
            return Err(Error::DimensionMismatch {
                circuit: other.n_qubits(),
                state: qubit_map.len(),
            });
        }
        for gate in other.gates() {
            let mapped: Vec<usize> = gate.qubits().iter().map(|&q| qubit_map[q]).collect();
            self.push(gate.kind(), &mapped)?;
        }
        Ok(())
    }

    /// Count of each gate kind, measurements excluded.
    pub fn census(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for g in self.gates.iter().filter(|g| g.is_unitary()) {
            *out.entry(g.kind().name()).or_insert(0) += 1;
        }
        out
    }

    pub fn cx_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.kind() == GateKind::CX)
            .count()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registers_tile_the_qubit_range() {
        let mut c = Circuit::new();
        let a = c.add_register("a", 1).unwrap();
        let m = c.add_register("m", 2).unwrap();
        assert_eq!(a.at(0), 0);
        assert_eq!(m.at(1), 2);
        assert_eq!(c.n_qubits(), 3);
        assert_eq!(c.label(2).as_deref(), Some("m[1]"));
    }

    #[test]
    fn duplicate_register_rejected() {
        let mut c = Circuit::new();
        c.add_register("t", 1).unwrap();
        assert!(matches!(c.add_register("t", 1), Err(Error::Register(_))));
    }

    #[test]
    fn gate_outside_registers_rejected() {
        let mut c = Circuit::new();
        c.add_register("q", 2).unwrap();
        assert!(c.cx(0, 2).is_err());
        assert!(c.cx(0, 1).is_ok());
    }

    #[test]
    fn relative_phase_toffoli_needs_flag() {
        let mut c = Circuit::new();
        c.add_register("q", 3).unwrap();
        assert_eq!(
            c.toffoli(ToffoliVariant::RelativePhase, 0, 1, 2)
                .unwrap_err(),
            Error::PhaseSensitive
        );
        c.set_magnitude_only(true);
        c.toffoli(ToffoliVariant::RelativePhase, 0, 1, 2).unwrap();
        assert_eq!(c.cx_count(), 3);
    }
}
