use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A 2x2 complex matrix in row-major order.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Gate alphabet of the IR.
///
/// Angles are radians. `Ry(φ)` is `[[cos φ/2, -sin φ/2], [sin φ/2, cos φ/2]]` and
/// `Rz(φ)` is `diag(e^{-iφ/2}, e^{iφ/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    H,
    SqrtX,
    Ry(f64),
    Rz(f64),
    CX,
    CRy(f64),
    Toffoli,
    Measure,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::SqrtX
            | GateKind::Ry(_)
            | GateKind::Rz(_)
            | GateKind::Measure => 1,
            GateKind::CX | GateKind::CRy(_) => 2,
            GateKind::Toffoli => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::SqrtX => "SqrtX",
            GateKind::Ry(_) => "Ry",
            GateKind::Rz(_) => "Rz",
            GateKind::CX => "CX",
            GateKind::CRy(_) => "CRy",
            GateKind::Toffoli => "Toffoli",
            GateKind::Measure => "Measure",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Ry(a) | GateKind::Rz(a) | GateKind::CRy(a) => Some(a),
            _ => None,
        }
    }

    /// Every unitary kind is a (possibly zero-) controlled single-qubit gate.
    /// Returns the number of controls and the target matrix, or `None` for `Measure`.
    pub fn controlled_form(&self) -> Option<(usize, Mat2)> {
        let form = match *self {
            GateKind::X => (0, pauli_x()),
            GateKind::H => (0, hadamard()),
            GateKind::SqrtX => (0, sqrt_x()),
            GateKind::Ry(a) => (0, ry(a)),
            GateKind::Rz(a) => (0, rz(a)),
            GateKind::CX => (1, pauli_x()),
            GateKind::CRy(a) => (1, ry(a)),
            GateKind::Toffoli => (2, pauli_x()),
            GateKind::Measure => return None,
        };
        Some(form)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.angle() {
            Some(a) => write!(f, "{}({a})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// A gate applied to concrete qubit indices, controls first and target last.
#[derive(Debug, Clone, PartialEq)]
pub struct GateInstance {
    kind: GateKind,
    qubits: Vec<usize>,
}

impl GateInstance {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} expects {} qubit(s), got {}",
                kind.name(),
                kind.arity(),
                qubits.len()
            )));
        }
        if let Some(a) = kind.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidGate(format!(
                    "{} angle {a} is not finite",
                    kind.name()
                )));
            }
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::InvalidGate(format!(
                    "{} uses qubit {q} more than once",
                    kind.name()
                )));
            }
        }
        Ok(Self {
            kind,
            qubits: qubits.to_vec(),
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn target(&self) -> usize {
        *self.qubits.last().expect("gates have at least one qubit")
    }

    pub fn controls(&self) -> &[usize] {
        &self.qubits[..self.qubits.len() - 1]
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self.kind, GateKind::Measure)
    }

    /// Full `2^k x 2^k` matrix on the gate's own qubits, row-major.
    ///
    /// Local basis index bit `m` is the state of `qubits()[m]`.
    pub fn local_matrix(&self) -> Option<Vec<Complex64>> {
        let (n_controls, u) = self.kind.controlled_form()?;
        let k = n_controls + 1;
        let dim = 1usize << k;
        let ctrl_mask = (1usize << n_controls) - 1;
        let t = n_controls;
        let mut m = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                if r & ctrl_mask != c & ctrl_mask {
                    continue;
                }
                let (rt, ct) = ((r >> t) & 1, (c >> t) & 1);
                m[r * dim + c] = if c & ctrl_mask == ctrl_mask {
                    u[rt][ct]
                } else if rt == ct {
                    ONE
                } else {
                    ZERO
                };
            }
        }
        Some(m)
    }
}

impl fmt::Display for GateInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.kind, self.qubits)
    }
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn hadamard() -> Mat2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn sqrt_x() -> Mat2 {
    let p = Complex64::new(0.5, 0.5);
    let m = Complex64::new(0.5, -0.5);
    [[p, m], [m, p]]
}

pub fn ry(angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub fn rz(angle: f64) -> Mat2 {
    [
        [Complex64::from_polar(1.0, -angle / 2.0), ZERO],
        [ZERO, Complex64::from_polar(1.0, angle / 2.0)],
    ]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_is_enforced() {
        assert!(GateInstance::new(GateKind::CX, &[0]).is_err());
        assert!(GateInstance::new(GateKind::Toffoli, &[0, 1, 2]).is_ok());
        assert!(GateInstance::new(GateKind::CRy(0.1), &[1, 1]).is_err());
        assert!(GateInstance::new(GateKind::Ry(f64::NAN), &[0]).is_err());
    }

    #[test]
    fn cx_local_matrix_is_permutation() {
        let g = GateInstance::new(GateKind::CX, &[0, 1]).unwrap();
        let m = g.local_matrix().unwrap();
        // local bit 0 = control: |01> (control set) <-> |11>
        let expected = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m[r * 4 + c], Complex64::new(expected[r][c], 0.0));
            }
        }
    }

    #[test]
    fn sqrt_x_squares_to_x() {
        let s = sqrt_x();
        let x = mat2_mul(&s, &s);
        let px = pauli_x();
        for i in 0..2 {
            for j in 0..2 {
                assert!((x[i][j] - px[i][j]).norm() < 1e-15);
            }
        }
    }
}
