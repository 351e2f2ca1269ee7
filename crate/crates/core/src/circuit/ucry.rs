use super::Circuit;
use crate::error::{Error, Result};

/// Uniformly-controlled Ry rotation (multiplexor).
///
/// `angles[k]` is the rotation seen by the target when the controls are in
/// basis pattern `k`, where bit `i` of `k` is the value of `control_labels[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UCRySpec {
    pub control_labels: Vec<usize>,
    pub target_label: usize,
    pub angles: Vec<f64>,
}

/// Builds a standalone circuit (single register `q`, wide enough for every
/// label) realizing the multiplexor with the Gray-code CX/Ry ladder.
pub fn uc_ry(spec: &UCRySpec) -> Result<Circuit> {
    let width = spec
        .control_labels
        .iter()
        .chain(std::iter::once(&spec.target_label))
        .max()
        .copied()
        .unwrap_or(0)
        + 1;
    let mut c = Circuit::new();
    c.add_register("q", width)?;
    append_uc_ry(
        &mut c,
        &spec.control_labels,
        spec.target_label,
        &spec.angles,
    )?;
    Ok(c)
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Walsh-Hadamard recoding with Gray-ordered rows:
/// `rotation[i] = 2^-k Σ_j (-1)^{popcount(j & gray(i))} angles[j]`.
fn ladder_angles(angles: &[f64]) -> Vec<f64> {
    let n = angles.len();
    let scale = 1.0 / n as f64;
    (0..n)
        .map(|i| {
            let g = gray(i);
            angles
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    if (j & g).count_ones().is_multiple_of(2) {
                        *a
                    } else {
                        -*a
                    }
                })
                .sum::<f64>()
                * scale
        })
        .collect()
}

pub(super) fn append_uc_ry(
    circuit: &mut Circuit,
    controls: &[usize],
    target: usize,
    angles: &[f64],
) -> Result<()> {
    let k = controls.len();
    if k >= usize::BITS as usize || angles.len() != 1usize << k {
        return Err(Error::AngleCount {
            controls: k,
            expected: 1usize.checked_shl(k as u32).unwrap_or(0),
            got: angles.len(),
        });
    }
    if let Some(a) = angles.iter().find(|a| !a.is_finite()) {
        return Err(Error::InvalidGate(format!(
            "multiplexor angle {a} is not finite"
        )));
    }
    if controls.contains(&target) {
        return Err(Error::InvalidGate(format!(
            "multiplexor target {target} is also a control"
        )));
    }
    if k == 0 {
        circuit.ry(target, angles[0])?;
        return Ok(());
    }
    let n = angles.len();
    for (i, theta) in ladder_angles(angles).into_iter().enumerate() {
        circuit.ry(target, theta)?;
        // control whose bit flips between consecutive (cyclic) Gray codes
        let flip = gray(i) ^ gray((i + 1) % n);
        circuit.cx(controls[flip.trailing_zeros() as usize], target)?;
    }
    Ok(())
}
