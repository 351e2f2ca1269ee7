use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use stepgear::fourier::{
    compile_series, fourier_coefficients, fourier_coefficients_with_nodes, gearbox_inverse_success,
    gearbox_target_series, normalization_constant, split_series, to_cos_squared, DEFAULT_NODES,
};

fn d2_over_8(t: f64) -> f64 {
    1.0 / (8.0 * (t.sin().powi(8) + t.cos().powi(8)))
}

#[test]
fn quadrature_has_converged_for_gearbox_targets() {
    for d in 1..=3 {
        let n = normalization_constant(d);
        let f = |t| n * gearbox_inverse_success(d, t);
        let coarse = fourier_coefficients_with_nodes(f, FRAC_PI_2, 8, DEFAULT_NODES).unwrap();
        let fine = fourier_coefficients_with_nodes(f, FRAC_PI_2, 8, 2 * DEFAULT_NODES).unwrap();
        let pairs = std::iter::once((coarse.a0, fine.a0))
            .chain(coarse.a.iter().copied().zip(fine.a.iter().copied()))
            .chain(coarse.b.iter().copied().zip(fine.b.iter().copied()));
        for (c, f) in pairs {
            assert!((c - f).abs() < 1e-9, "d={d}: {c} vs {f}");
        }
    }
}

#[test]
fn residual_energy_decreases_with_order() {
    let grid: Vec<f64> = (0..2000)
        .map(|i| (i as f64 + 0.5) * FRAC_PI_2 / 2000.0)
        .collect();
    let mut last = f64::INFINITY;
    for order in 0..=8 {
        let s = fourier_coefficients(d2_over_8, FRAC_PI_2, order).unwrap();
        let mse = grid
            .iter()
            .map(|&x| (d2_over_8(x) - s.eval(x)).powi(2))
            .sum::<f64>()
            / grid.len() as f64;
        assert!(mse < last, "order {order}: {mse} ≥ {last}");
        last = mse;
    }
}

#[test]
fn even_target_has_no_sine_terms() {
    let s = gearbox_target_series(2, 6).unwrap();
    assert!(s.b.iter().all(|b| b.abs() < 1e-12));
}

#[test]
fn rewrite_invariant_on_constant_term() {
    let s = gearbox_target_series(3, 5).unwrap();
    let c = to_cos_squared(&s);
    let shift: f64 = s.a.iter().zip(&s.b).map(|(a, b)| a + b).sum();
    assert!((c.a0_prime - (s.a0 / 2.0 - shift)).abs() < 1e-12);
    for (ap, a) in c.a_prime.iter().zip(&s.a) {
        assert_eq!(*ap, 2.0 * a);
    }
}

#[test]
fn d2_split_groups_terms_by_sign() {
    let c = to_cos_squared(&gearbox_target_series(2, 4).unwrap());
    let split = split_series(&c);
    let pos = split.positive.leading_cos_terms();
    let neg = split.negative.leading_cos_terms();
    let close =
        |got: &[f64], want: &[f64]| got.iter().zip(want).all(|(g, w)| (g - w).abs() < 0.005);
    assert!(close(&pos, &[0.598, 0.0, 0.314, 0.0, 0.062]), "{pos:?}");
    assert!(close(&neg, &[0.0, 0.7, 0.0, 0.14, 0.0]), "{neg:?}");
}

#[test]
fn compiled_d2_series_at_quarter_pi() {
    let c = to_cos_squared(&gearbox_target_series(2, 4).unwrap());
    let value = compile_series(&c, FRAC_PI_4).unwrap().evaluate().unwrap();
    assert!((value - c.eval(FRAC_PI_4)).abs() < 1e-10);
    // surviving terms at π/4 are the even-index cosines
    let survivors: f64 = [c.a0_prime, c.a_prime[1], c.a_prime[3]].iter().sum();
    assert!((value - survivors).abs() < 1e-10);
    assert!((value - d2_over_8(FRAC_PI_4)).abs() < 0.03);
}

#[test]
fn series_serializes_with_field_names() {
    let s = gearbox_target_series(1, 2).unwrap();
    let json = serde_json::to_value(&s).unwrap();
    assert_eq!(json["period"], FRAC_PI_2);
    assert_eq!(json["a"].as_array().unwrap().len(), 2);
}
