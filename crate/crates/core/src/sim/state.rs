use num_complex::Complex64;

use crate::circuit::{Circuit, GateInstance, Mat2};
use crate::error::{Error, Result};

/// Dense amplitude vector over `n_qubits` qubits, little-endian.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Widest state this simulator will allocate.
const MAX_QUBITS: usize = 30;

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::Input(format!(
                "{n_qubits} qubits exceeds {MAX_QUBITS}"
            )));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Input(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps explicit amplitudes; the length must be a power of two and the
    /// norm 1 within `1e-10`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::Input(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Input(format!("state norm {norm} is not 1")));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies a gate in place. `Measure` is a no-op here: measurement is
    /// deferred to the readout functions.
    pub fn apply(&mut self, gate: &GateInstance) -> Result<()> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::InvalidGate(format!(
                "{gate}: qubit {q} out of range for {} qubits",
                self.n_qubits
            )));
        }
        let Some((_, u)) = gate.kind().controlled_form() else {
            return Ok(());
        };
        let ctrl_mask = gate.controls().iter().fold(0usize, |m, &c| m | (1 << c));
        apply_controlled(&mut self.amplitudes, ctrl_mask, gate.target(), &u);
        Ok(())
    }
}

/// Strided kernel: applies `u` to `target` on every amplitude pair whose
/// control bits are all set.
fn apply_controlled(amps: &mut [Complex64], ctrl_mask: usize, target: usize, u: &Mat2) {
    let tbit = 1usize << target;
    let low = tbit - 1;
    let half = amps.len() >> 1;
    for i in 0..half {
        let i0 = ((i & !low) << 1) | (i & low);
        if i0 & ctrl_mask != ctrl_mask {
            continue;
        }
        let i1 = i0 | tbit;
        let (a0, a1) = (amps[i0], amps[i1]);
        amps[i0] = u[0][0] * a0 + u[0][1] * a1;
        amps[i1] = u[1][0] * a0 + u[1][1] * a1;
    }
}

/// Functional form of [`StateVector::apply`].
pub fn apply_gate(mut state: StateVector, gate: &GateInstance) -> Result<StateVector> {
    state.apply(gate)?;
    Ok(state)
}

/// Runs the circuit on `initial`, or on `|0…0⟩` when `None`.
pub fn run_circuit(circuit: &Circuit, initial: Option<StateVector>) -> Result<StateVector> {
    let mut state = match initial {
        Some(s) => {
            if s.n_qubits() != circuit.n_qubits() {
                return Err(Error::DimensionMismatch {
                    circuit: circuit.n_qubits(),
                    state: s.n_qubits(),
                });
            }
            s
        }
        None => StateVector::zero(circuit.n_qubits())?,
    };
    for gate in circuit.gates() {
        state.apply(gate)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: Complex64, re: f64) -> bool {
        (a - Complex64::new(re, 0.0)).norm() < 1e-12
    }

    #[test]
    fn x_flips_lsb() {
        let s = StateVector::zero(2).unwrap();
        let s = apply_gate(s, &GateInstance::new(GateKind::X, &[0]).unwrap()).unwrap();
        assert!(close(s.amplitude(1), 1.0));
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::zero(1).unwrap();
        let s = apply_gate(s, &GateInstance::new(GateKind::H, &[0]).unwrap()).unwrap();
        assert!(close(s.amplitude(0), FRAC_1_SQRT_2));
        assert!(close(s.amplitude(1), FRAC_1_SQRT_2));
    }

    #[test]
    fn single_step_sequence_at_pi_over_3() {
        let theta = PI / 3.0;
        let mut c = Circuit::new();
        c.add_register("c", 1).unwrap();
        c.add_register("t", 1).unwrap();
        c.ry(0, -2.0 * theta)
            .unwrap()
            .cx(0, 1)
            .unwrap()
            .ry(0, 2.0 * theta)
            .unwrap();
        let s = run_circuit(&c, None).unwrap();
        let expected = [0.25, 0.4330127018922193, 0.75, -0.4330127018922193];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!(close(*a, e), "{a} vs {e}");
        }
    }

    #[test]
    fn out_of_range_qubit_is_invalid_gate() {
        let mut s = StateVector::zero(2).unwrap();
        let g = GateInstance::new(GateKind::X, &[2]).unwrap();
        assert!(matches!(s.apply(&g), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn width_mismatch_is_dimension_error() {
        let mut c = Circuit::new();
        c.add_register("q", 3).unwrap();
        let s = StateVector::zero(2).unwrap();
        assert_eq!(
            run_circuit(&c, Some(s)).unwrap_err(),
            Error::DimensionMismatch {
                circuit: 3,
                state: 2
            }
        );
    }

    #[test]
    fn empty_circuit_is_identity() {
        let mut c = Circuit::new();
        c.add_register("q", 3).unwrap();
        let s = run_circuit(&c, None).unwrap();
        assert!(close(s.amplitude(0), 1.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }
}
