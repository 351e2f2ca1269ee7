use std::f64::consts::PI;

use super::{Circuit, GateInstance, Mat2};
use crate::error::{Error, Result};

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Angles of a single-qubit gate in the `{Rz, √X}` basis, listed in time order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZsxDecomposition {
    /// Diagonal input: a single `Rz(angle)`.
    Diagonal { angle: f64 },
    /// `Rz(first)`, `√X`, `Rz(middle)`, `√X`, `Rz(last)`.
    Full { first: f64, middle: f64, last: f64 },
}

const EPS: f64 = 1e-14;

/// Decomposes a 2x2 unitary, up to global phase.
///
/// Writes `U ∝ U3(θ, φ, λ)` and uses `U3(θ, φ, λ) ∝ Rz(φ+π)·√X·Rz(θ+π)·√X·Rz(λ)`.
/// The equivalent branch `(-θ, φ+π, λ+π)` is taken instead when its final `Rz`
/// angle is smaller in magnitude; ties go to the non-negative final angle.
pub fn zsx_decompose(u: &Mat2) -> ZsxDecomposition {
    let (c, s) = (u[0][0].norm(), u[1][0].norm());
    if s < EPS {
        return ZsxDecomposition::Diagonal {
            angle: wrap_angle(u[1][1].arg() - u[0][0].arg()),
        };
    }
    let theta = 2.0 * s.atan2(c);
    let (phi, lambda) = if c < EPS {
        let gamma = (-u[0][1]).arg();
        (u[1][0].arg() - gamma, 0.0)
    } else {
        let gamma = u[0][0].arg();
        (u[1][0].arg() - gamma, (-u[0][1]).arg() - gamma)
    };

    let a = (
        wrap_angle(lambda),
        wrap_angle(theta + PI),
        wrap_angle(phi + PI),
    );
    let b = (
        wrap_angle(lambda + PI),
        wrap_angle(PI - theta),
        wrap_angle(phi),
    );
    let pick_b = if (a.2.abs() - b.2.abs()).abs() < 1e-12 {
        a.2 < 0.0 && b.2 >= 0.0
    } else {
        b.2.abs() < a.2.abs()
    };
    let (first, middle, last) = if pick_b { b } else { a };
    ZsxDecomposition::Full {
        first,
        middle,
        last,
    }
}

/// Rewrites a single-qubit gate into `Rz`/`√X` on a one-qubit circuit.
pub fn rewrite_1q_to_zsx(gate: &GateInstance) -> Result<Circuit> {
    if gate.qubits().len() != 1 {
        return Err(Error::Unsupported(format!(
            "ZSX rewrite needs a single-qubit gate, got {gate}"
        )));
    }
    let (_, u) = gate
        .kind()
        .controlled_form()
        .ok_or_else(|| Error::Unsupported("measurement has no unitary".into()))?;
    let mut c = Circuit::new();
    c.add_register("q", 1)?;
    match zsx_decompose(&u) {
        ZsxDecomposition::Diagonal { angle } => {
            c.rz(0, angle)?;
        }
        ZsxDecomposition::Full {
            first,
            middle,
            last,
        } => {
            c.rz(0, first)?.sx(0)?.rz(0, middle)?.sx(0)?.rz(0, last)?;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;

    #[test]
    fn wrap_is_half_open() {
        assert_eq!(wrap_angle(-PI), PI);
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rz_maps_to_itself() {
        let g = GateInstance::new(GateKind::Rz(0.83), &[0]).unwrap();
        let c = rewrite_1q_to_zsx(&g).unwrap();
        assert_eq!(c.gates().len(), 1);
        match c.gates()[0].kind() {
            GateKind::Rz(a) => assert!((a - 0.83).abs() < 1e-14),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn multi_qubit_is_unsupported() {
        let g = GateInstance::new(GateKind::CX, &[0, 1]).unwrap();
        assert!(matches!(rewrite_1q_to_zsx(&g), Err(Error::Unsupported(_))));
    }
}
