//! Arithmetic on function values stored as amplitudes.
//!
//! A value `g ∈ [0, 1]` is loaded as `√(1−g)|0⟩ + √g|1⟩` with `Ry(2·arcsin √g)`.
//! Subtraction and addition use one Hadamard ancilla to split into two
//! branches and are read out as a plain marginal of the target qubit; there
//! is no post-selection here.

use crate::circuit::{Circuit, ToffoliVariant};
use crate::error::{Error, Result};
use crate::sim::{marginal_one, StateVector};

/// Loader for a single amplitude-encoded value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeLoader {
    value: f64,
}

impl AmplitudeLoader {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Normalization(format!(
                "amplitude value {value} outside [0, 1]"
            )));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `2·arcsin √g`, in `[0, π]`.
    pub fn angle(&self) -> f64 {
        2.0 * self.value.sqrt().asin()
    }
}

/// A named function sampled at input points, each value in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeFunction {
    pub name: String,
    points: Vec<(f64, f64)>,
}

impl AmplitudeFunction {
    pub fn sample(name: &str, xs: &[f64], f: impl Fn(f64) -> f64) -> Result<Self> {
        let points = xs
            .iter()
            .map(|&x| {
                let v = f(x);
                AmplitudeLoader::new(v).map(|_| (x, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: name.to_string(),
            points,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn loader(&self, i: usize) -> AmplitudeLoader {
        AmplitudeLoader {
            value: self.points[i].1,
        }
    }
}

/// Qubit layout of the subtraction and addition circuits.
pub const ANCILLA: usize = 0;
pub const MID: usize = 1;
pub const TARGET: usize = 2;

fn three_register_frame() -> Result<Circuit> {
    let mut c = Circuit::new();
    c.add_register("a", 1)?;
    c.add_register("m", 1)?;
    c.add_register("t", 1)?;
    Ok(c)
}

fn append_subtraction(c: &mut Circuit, a: usize, m: usize, t: usize, g: f64, h: f64) -> Result<()> {
    c.h(a)?;
    c.cry(a, t, g)?;
    c.cx(a, m)?;
    c.x(a)?;
    c.cry(a, m, h)?;
    c.x(m)?;
    c.cx(m, t)?;
    Ok(())
}

/// `H(a), CRy_g(a;t), CX(a;m), X(a), CRy_h(a;m), X(m), CX(m;t)` on registers
/// `a`, `m`, `t`. Readout: `P(t=1) = (g + 1 − h)/2`.
pub fn build_subtraction(g: AmplitudeLoader, h: AmplitudeLoader) -> Result<Circuit> {
    let mut c = three_register_frame()?;
    append_subtraction(&mut c, ANCILLA, MID, TARGET, g.angle(), h.angle())?;
    c.measure(TARGET)?;
    Ok(c)
}

/// `P(t=1)` and the rescaled difference `2·r1 − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubtractionReadout {
    pub r1: f64,
    pub difference: f64,
}

impl SubtractionReadout {
    pub fn from_probability(r1: f64) -> Self {
        Self {
            r1,
            difference: 2.0 * r1 - 1.0,
        }
    }
}

pub fn read_subtraction(state: &StateVector) -> Result<SubtractionReadout> {
    Ok(SubtractionReadout::from_probability(marginal_one(
        state, TARGET,
    )?))
}

/// `H(a), CRy_g(a;t), X(a), CRy_h(a;m), CX(m;t)`: each branch carries one
/// value into `t`, so `P(t=1) = (g + h)/2`.
pub fn build_addition(g: AmplitudeLoader, h: AmplitudeLoader) -> Result<Circuit> {
    let mut c = three_register_frame()?;
    let (a, m, t) = (ANCILLA, MID, TARGET);
    c.h(a)?;
    c.cry(a, t, g.angle())?;
    c.x(a)?;
    c.cry(a, m, h.angle())?;
    c.cx(m, t)?;
    c.measure(t)?;
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditionReadout {
    pub p: f64,
    pub sum: f64,
}

pub fn read_addition(state: &StateVector) -> Result<AdditionReadout> {
    let p = marginal_one(state, TARGET)?;
    Ok(AdditionReadout { p, sum: 2.0 * p })
}

/// Qubit indices of the composition circuit.
pub mod composition {
    pub const A: usize = 0;
    pub const M: usize = 1;
    pub const T: usize = 2;
    pub const Z: usize = 3;
    pub const Q: usize = 4;
    pub const A2: usize = 5;
    pub const M2: usize = 6;
    pub const R: usize = 7;
}

/// Multiplies a subtraction by an amplitude `z` and removes the constant term.
///
/// Stage 1 is [`build_subtraction`] on `a, m, t`. `z` is loaded on its own
/// qubit and a Toffoli `(t, z → q)` leaves `P(q=1) = b = z(g − h + 1)/2`.
/// Stage 2 subtracts `z/2` from `b` with the same branch construction: a
/// Toffoli `(a2, q → r)` plays the role of the first loader and
/// `CRy(2·arcsin √(z/2))` the second, giving
/// `P(r=1) = R₂ = (b − z/2 + 1)/2 = z(g − h)/4 + 1/2`.
///
/// The circuit is flagged magnitude-only; `variant` selects how both Toffolis
/// are emitted.
pub fn build_composition(
    g: AmplitudeLoader,
    h: AmplitudeLoader,
    z: AmplitudeLoader,
    variant: ToffoliVariant,
) -> Result<Circuit> {
    use composition::*;
    let mut c = Circuit::new();
    c.set_magnitude_only(true);
    for name in ["a", "m", "t", "z", "q", "a2", "m2", "r"] {
        c.add_register(name, 1)?;
    }
    append_subtraction(&mut c, A, M, T, g.angle(), h.angle())?;
    c.ry(Z, z.angle())?;
    c.toffoli(variant, T, Z, Q)?;

    let half_z = AmplitudeLoader::new(z.value() / 2.0)?;
    c.h(A2)?;
    c.toffoli(variant, A2, Q, R)?;
    c.cx(A2, M2)?;
    c.x(A2)?;
    c.cry(A2, M2, half_z.angle())?;
    c.x(M2)?;
    c.cx(M2, R)?;
    c.measure(Q)?;
    c.measure(R)?;
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositionReadout {
    pub b: f64,
    pub r2: f64,
    /// `4(R₂ − 1/2) = z(g − h)`.
    pub product: f64,
}

pub fn read_composition(state: &StateVector) -> Result<CompositionReadout> {
    let b = marginal_one(state, composition::Q)?;
    let r2 = marginal_one(state, composition::R)?;
    Ok(CompositionReadout {
        b,
        r2,
        product: 4.0 * (r2 - 0.5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::run_circuit;

    fn ld(v: f64) -> AmplitudeLoader {
        AmplitudeLoader::new(v).unwrap()
    }

    #[test]
    fn loader_rejects_out_of_range() {
        assert!(AmplitudeLoader::new(1.2).is_err());
        assert!(AmplitudeLoader::new(-0.01).is_err());
        assert!((ld(1.0).angle() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn subtraction_examples() {
        for (g, h, r1, diff) in [
            (0.75, 0.25, 0.75, 0.5),
            (0.0, 1.0, 0.0, -1.0),
            (1.0, 1.0, 0.5, 0.0),
        ] {
            let s = run_circuit(&build_subtraction(ld(g), ld(h)).unwrap(), None).unwrap();
            let r = read_subtraction(&s).unwrap();
            assert!((r.r1 - r1).abs() < 1e-12, "g={g} h={h}: {r:?}");
            assert!((r.difference - diff).abs() < 1e-12);
        }
    }

    #[test]
    fn addition_examples() {
        for (g, h, p) in [(1.0, 1.0, 1.0), (1.0, 0.0, 0.5), (0.3, 0.5, 0.4)] {
            let s = run_circuit(&build_addition(ld(g), ld(h)).unwrap(), None).unwrap();
            assert!((read_addition(&s).unwrap().p - p).abs() < 1e-12);
        }
    }

    #[test]
    fn composition_examples() {
        let run = |g, h, z| {
            let c = build_composition(ld(g), ld(h), ld(z), ToffoliVariant::Native).unwrap();
            read_composition(&run_circuit(&c, None).unwrap()).unwrap()
        };
        let r = run(1.0, 0.0, 1.0);
        assert!((r.b - 1.0).abs() < 1e-12);
        assert!((r.r2 - 0.75).abs() < 1e-12);
        assert!((r.product - 1.0).abs() < 1e-12);

        let r = run(0.6, 0.2, 0.0);
        assert!((r.r2 - 0.5).abs() < 1e-12);
        assert!(r.product.abs() < 1e-12);

        let r = run(0.9, 0.4, 0.5);
        assert!((r.product - 0.25).abs() < 1e-12);
    }

    #[test]
    fn sampled_function_validates_range() {
        let xs = [0.0, 0.5, 1.0];
        assert!(AmplitudeFunction::sample("sq", &xs, |x| x * x).is_ok());
        assert!(AmplitudeFunction::sample("bad", &xs, |x| 2.0 * x).is_err());
    }
}
