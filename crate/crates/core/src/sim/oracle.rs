use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Widest circuit the dense oracle accepts.
pub const ORACLE_MAX_QUBITS: usize = 10;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// `max |(U†U − I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Spreads the low bits of `local` onto the positions listed in `qubits`.
fn scatter(local: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (m, &q)| acc | (((local >> m) & 1) << q))
}

fn gather(index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (m, &q)| acc | (((index >> q) & 1) << m))
}

/// Full unitary of `circuit` as the ordered product of Kronecker-lifted gate
/// matrices. Independent of the state-vector kernel; only for `n ≤ 10`.
///
/// The lifted gate is `L[i][j] = G[gather(i)][gather(j)]` when `i` and `j`
/// agree outside the gate's qubits and zero otherwise.
pub fn dense_oracle(circuit: &Circuit) -> Result<DenseMatrix> {
    let n = circuit.n_qubits();
    if n > ORACLE_MAX_QUBITS {
        return Err(Error::OracleTooWide {
            n_qubits: n,
            limit: ORACLE_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut acc = DenseMatrix::identity(dim);
    let mut next = vec![Complex64::new(0.0, 0.0); dim * dim];
    for gate in circuit.gates() {
        let Some(local) = gate.local_matrix() else {
            continue;
        };
        let qubits = gate.qubits();
        let k = 1usize << qubits.len();
        let mask = scatter(k - 1, qubits);
        next.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for i in 0..dim {
            let r = gather(i, qubits);
            let rest = i & !mask;
            let out = &mut next[i * dim..(i + 1) * dim];
            for c in 0..k {
                let g = local[r * k + c];
                if g == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let j = rest | scatter(c, qubits);
                let src = &acc.data[j * dim..(j + 1) * dim];
                for (o, s) in out.iter_mut().zip(src) {
                    *o += g * s;
                }
            }
        }
        std::mem::swap(&mut acc.data, &mut next);
    }
    Ok(acc)
}

/// `min_φ max_i |a_i − e^{iφ} b_i|`, with `φ` fixed by the largest entry of `b`.
pub fn max_deviation_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let (pivot, _) = b.iter().enumerate().fold((0, -1.0), |best, (i, v)| {
        if v.norm() > best.1 {
            (i, v.norm())
        } else {
            best
        }
    });
    let ratio = a[pivot] / b[pivot];
    let phase = if ratio.norm() > 0.0 {
        ratio / ratio.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cx_oracle_is_permutation() {
        let mut c = Circuit::new();
        c.add_register("q", 2).unwrap();
        c.cx(0, 1).unwrap();
        let m = dense_oracle(&c).unwrap();
        let one = Complex64::new(1.0, 0.0);
        // |01> (control set, index 1) -> |11> (index 3)
        assert_eq!(m.get(3, 1), one);
        assert_eq!(m.get(1, 3), one);
        assert_eq!(m.get(0, 0), one);
        assert_eq!(m.get(2, 2), one);
        assert!(m.unitarity_defect() < 1e-15);
    }

    #[test]
    fn refuses_wide_circuits() {
        let mut c = Circuit::new();
        c.add_register("q", 11).unwrap();
        assert_eq!(
            dense_oracle(&c).unwrap_err(),
            Error::OracleTooWide {
                n_qubits: 11,
                limit: 10
            }
        );
    }

    #[test]
    fn phase_alignment() {
        let i = Complex64::new(0.0, 1.0);
        let b = vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)];
        let a: Vec<_> = b.iter().map(|v| v * i).collect();
        assert!(max_deviation_up_to_phase(&a, &b) < 1e-15);
    }
}
