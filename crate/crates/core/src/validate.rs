//! Named self-checks over every module, each comparing a builder against an
//! independent closed form or reference matrix.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::arith::{
    build_addition, build_composition, build_subtraction, read_addition, read_composition,
    read_subtraction, AmplitudeLoader,
};
use crate::circuit::{
    export_qasm, rewrite_1q_to_zsx, toffoli_exact_decomposition,
    toffoli_phase_equivalent_decomposition, Circuit, GateInstance, GateKind, ToffoliVariant,
};
use crate::fourier::{
    build_weighted_series, compile_series, gearbox_target_series, normalization_constant,
    split_series, to_cos_squared, weighted_expectation,
};
use crate::gearbox::{
    build_gearbox_with_angle, effective_angle_nested, relu_experiment, rescaled_plateau_experiment,
    step_approximation_error, GearboxSpec, PostSelectedCircuit,
};
use crate::sim::{dense_oracle, max_deviation_up_to_phase, post_select, run_circuit, DenseMatrix};

const SEED: u64 = 0x5eed_9ea7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    /// Multiplies the gearbox leaf rotation; anything but 1 is a deliberate
    /// mutation that the suite must catch.
    pub gearbox_angle_scale: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            gearbox_angle_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type CheckFn = fn(&ValidationOptions) -> Result<String, String>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("single_step_matrix", single_step_matrix),
    ("step_law_d1", |o| step_law(o, 1)),
    ("step_law_d2", |o| step_law(o, 2)),
    ("step_law_d3", |o| step_law(o, 3)),
    ("success_reference_values", success_reference_values),
    ("step_symmetry", step_symmetry),
    ("nested_angle_form", nested_angle_form),
    ("step_error_d3", step_error_d3),
    ("step_error_monotone_in_depth", step_error_monotone),
    ("oracle_equivalence", oracle_equivalence),
    ("norm_preservation", norm_preservation),
    ("subtraction_difference", subtraction_difference),
    ("subtraction_final_state", subtraction_final_state),
    ("addition_sum", addition_sum),
    ("composition_product", composition_product),
    ("toffoli_exact", toffoli_exact),
    ("toffoli_phase_equivalent", toffoli_phase_equivalent),
    ("toffoli_variant_invariance", toffoli_variant_invariance),
    ("uc_ry_block_diagonal", uc_ry_block_diagonal),
    ("zsx_rewrite", zsx_rewrite),
    ("fourier_leading_terms", fourier_leading_terms),
    ("normalization_constant", normalization_values),
    ("cos_squared_identity", cos_squared_identity),
    ("compiled_series_readback", compiled_series_readback),
    ("split_linearity", split_linearity),
    ("qasm_subtraction_census", qasm_subtraction_census),
    ("rescaled_plateau_law", rescaled_plateau_law),
    ("relu_law", relu_law),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_validation(options: &ValidationOptions) -> ValidationReport {
    let checks = CHECKS
        .iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let result = f(options);
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let (passed, detail) = match result {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                name,
                passed,
                detail,
                millis,
            }
        })
        .collect();
    ValidationReport { checks }
}

/// Circuits small enough for the dense oracle, one or more per builder.
pub fn builder_corpus() -> crate::Result<Vec<(String, Circuit)>> {
    use crate::circuit::UCRySpec;
    let ld = AmplitudeLoader::new;
    let mut out = Vec::new();
    for d in 1..=3 {
        for theta in [0.0, 0.4, FRAC_PI_4, 1.2, FRAC_PI_2] {
            let spec = GearboxSpec::new(d, theta)?;
            out.push((
                format!("gearbox d={d} θ={theta:.3}"),
                crate::gearbox::build_gearbox(&spec)?,
            ));
        }
    }
    out.push((
        "rescaled plateau".into(),
        crate::gearbox::build_rescaled_plateau(0.9, 1.1)?,
    ));
    for v in [
        ToffoliVariant::Native,
        ToffoliVariant::Exact,
        ToffoliVariant::RelativePhase,
    ] {
        out.push((
            format!("relu {v:?}"),
            crate::gearbox::build_relu_with(1.0, v)?,
        ));
        out.push((
            format!("composition {v:?}"),
            build_composition(ld(0.7)?, ld(0.2)?, ld(0.55)?, v)?,
        ));
    }
    out.push((
        "subtraction".into(),
        build_subtraction(ld(0.35)?, ld(0.8)?)?,
    ));
    out.push(("addition".into(), build_addition(ld(0.35)?, ld(0.8)?)?));
    out.push(("toffoli exact".into(), toffoli_exact_decomposition()));
    out.push((
        "toffoli relative phase".into(),
        toffoli_phase_equivalent_decomposition(),
    ));
    out.push((
        "uc_ry k=3".into(),
        crate::circuit::uc_ry(&UCRySpec {
            control_labels: vec![0, 2, 3],
            target_label: 1,
            angles: (0..8).map(|i| 0.3 * i as f64 - 1.0).collect(),
        })?,
    ));
    let cos2 = to_cos_squared(&gearbox_target_series(2, 4)?);
    out.push((
        "compiled D2 series".into(),
        compile_series(&cos2, FRAC_PI_3)?.circuit,
    ));
    let split = split_series(&cos2);
    let points: Vec<f64> = (0..8).map(|i| i as f64 * FRAC_PI_2 / 7.0).collect();
    let weights: Vec<f64> = (0..8).map(|i| 0.1 + 0.1 * i as f64).collect();
    out.push((
        "weighted positive part".into(),
        build_weighted_series(
            &split.positive,
            &points,
            &weights,
            ToffoliVariant::RelativePhase,
        )?
        .circuit,
    ));
    Ok(out)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(name: &str, worst: f64, tol: f64) -> Result<String, String> {
    if worst.is_finite() && worst < tol {
        Ok(format!("{name}: max deviation {worst:.2e} < {tol:.0e}"))
    } else {
        Err(format!(
            "{name}: max deviation {worst:.3e} exceeds {tol:.0e}"
        ))
    }
}

fn grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| i as f64 * FRAC_PI_2 / (points - 1) as f64)
        .collect()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `sin^(2^(d+1))`-weighted closed forms, written out independently of the
/// gearbox module.
fn closed_form(depth: u32, theta: f64) -> (f64, f64) {
    let p = 2f64.powi(depth as i32 + 1);
    let (s, c) = (theta.sin().abs().powf(p), theta.cos().abs().powf(p));
    (s / (s + c), s + c)
}

fn mutated_gearbox(
    options: &ValidationOptions,
    depth: u32,
    theta: f64,
) -> crate::Result<PostSelectedCircuit> {
    let spec = GearboxSpec::new(depth, theta)?;
    Ok(PostSelectedCircuit {
        circuit: build_gearbox_with_angle(&spec, options.gearbox_angle_scale * 2.0 * spec.theta())?,
        kept: spec.control_qubits(),
        target: spec.target_qubit(),
    })
}

fn single_step_matrix(options: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let theta = rng.gen_range(0.0..FRAC_PI_2);
        let (s, c) = theta.sin_cos();
        let (cc, ss, sc) = (c * c, s * s, s * c);
        let expected = DenseMatrix::from_rows(&[
            vec![re(cc), re(sc), re(ss), re(-sc)],
            vec![re(sc), re(ss), re(-sc), re(cc)],
            vec![re(ss), re(-sc), re(cc), re(sc)],
            vec![re(-sc), re(cc), re(sc), re(ss)],
        ]);
        let circuit = mutated_gearbox(options, 1, theta).map_err(err)?.circuit;
        worst = worst.max(dense_oracle(&circuit).map_err(err)?.max_abs_diff(&expected));
    }
    within("20 random θ", worst, 1e-12)
}

fn step_law(options: &ValidationOptions, depth: u32) -> Result<String, String> {
    let (mut w_omega, mut w_success) = (0.0f64, 0.0f64);
    for theta in grid(1000) {
        let r = mutated_gearbox(options, depth, theta)
            .and_then(|e| e.evaluate())
            .map_err(err)?;
        let (omega, success) = closed_form(depth, theta);
        w_omega = w_omega.max((r.omega - omega).abs());
        w_success = w_success.max((r.success_probability - success).abs());
    }
    within("Ω", w_omega, 1e-10)?;
    within("success", w_success, 1e-10)?;
    Ok(format!(
        "1000 θ: Ω dev {w_omega:.2e}, success dev {w_success:.2e}"
    ))
}

fn success_reference_values(_: &ValidationOptions) -> Result<String, String> {
    let cases = [(1, 0.9, 0.625), (2, 81.0 / 82.0, 0.3203125)];
    let mut worst = 0.0f64;
    for (d, omega, success) in cases {
        let spec = GearboxSpec::new(d, FRAC_PI_3).map_err(err)?;
        let r = crate::gearbox::gearbox_experiment(&spec)
            .and_then(|e| e.evaluate())
            .map_err(err)?;
        worst = worst
            .max((r.omega - omega).abs())
            .max((r.success_probability - success).abs());
    }
    within("θ = π/3, d = 1, 2", worst, 1e-12)
}

fn step_symmetry(_: &ValidationOptions) -> Result<String, String> {
    let mut worst = 0.0f64;
    for d in 1..=3 {
        for theta in grid(41) {
            let a = crate::gearbox::gearbox_experiment(&GearboxSpec::new(d, theta).map_err(err)?)
                .and_then(|e| e.evaluate())
                .map_err(err)?;
            let b = crate::gearbox::gearbox_experiment(
                &GearboxSpec::new(d, FRAC_PI_2 - theta).map_err(err)?,
            )
            .and_then(|e| e.evaluate())
            .map_err(err)?;
            worst = worst
                .max((a.omega + b.omega - 1.0).abs())
                .max((a.success_probability - b.success_probability).abs());
        }
    }
    within("Ω(θ) + Ω(π/2 − θ) = 1", worst, 1e-12)
}

fn nested_angle_form(_: &ValidationOptions) -> Result<String, String> {
    let mut worst = 0.0f64;
    for d in 1..=3 {
        for theta in grid(101).into_iter().skip(1).take(99) {
            let nested = effective_angle_nested(d, theta).sin().powi(2);
            worst = worst.max((nested - closed_form(d, theta).0).abs());
        }
    }
    within("sin² of nested angle", worst, 1e-12)
}

fn step_error_d3(_: &ValidationOptions) -> Result<String, String> {
    let e = step_approximation_error(3, &grid(1000), 0.1);
    if e < 0.05 {
        Ok(format!("max error {e:.4} < 0.05 outside |θ − π/4| < 0.1"))
    } else {
        Err(format!("max error {e:.4} ≥ 0.05"))
    }
}

fn step_error_monotone(_: &ValidationOptions) -> Result<String, String> {
    let g = grid(1000);
    let errors: Vec<f64> = (1..=4)
        .map(|d| step_approximation_error(d, &g, 0.1))
        .collect();
    if errors.windows(2).all(|w| w[1] < w[0]) {
        Ok(format!("errors by depth {errors:.4?}"))
    } else {
        Err(format!("errors not decreasing: {errors:?}"))
    }
}

fn oracle_equivalence(_: &ValidationOptions) -> Result<String, String> {
    let corpus = builder_corpus().map_err(err)?;
    let mut worst = 0.0f64;
    for (name, c) in &corpus {
        let state = run_circuit(c, None).map_err(|e| format!("{name}: {e}"))?;
        let column = dense_oracle(c)
            .map_err(|e| format!("{name}: {e}"))?
            .column(0);
        let d = state
            .amplitudes()
            .iter()
            .zip(&column)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if d >= 1e-12 {
            return Err(format!("{name}: deviation {d:.3e}"));
        }
        worst = worst.max(d);
    }
    within(&format!("{} circuits", corpus.len()), worst, 1e-12)
}

fn norm_preservation(_: &ValidationOptions) -> Result<String, String> {
    let corpus = builder_corpus().map_err(err)?;
    let mut worst = 0.0f64;
    for (name, c) in &corpus {
        let state = run_circuit(c, None).map_err(|e| format!("{name}: {e}"))?;
        worst = worst.max((state.norm_sqr() - 1.0).abs());
    }
    within("|‖ψ‖² − 1|", worst, 1e-12)
}

fn random_loaders(rng: &mut ChaCha20Rng, n: usize) -> Vec<AmplitudeLoader> {
    (0..n)
        .map(|_| AmplitudeLoader::new(rng.gen_range(0.0..=1.0)).expect("value drawn in [0, 1]"))
        .collect()
}

fn subtraction_difference(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 1);
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let v = random_loaders(&mut rng, 2);
        let state = run_circuit(&build_subtraction(v[0], v[1]).map_err(err)?, None).map_err(err)?;
        let r = read_subtraction(&state).map_err(err)?;
        worst = worst.max((r.difference - (v[0].value() - v[1].value())).abs());
    }
    within("64 random (g, h)", worst, 1e-12)
}

fn subtraction_final_state(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    let k = std::f64::consts::FRAC_1_SQRT_2;
    for _ in 0..64 {
        let v = random_loaders(&mut rng, 2);
        let (g, h) = (v[0].value(), v[1].value());
        // index = a + 2m + 4t
        let mut expected = vec![re(0.0); 8];
        expected[0] = re(k * (1.0 - g).sqrt());
        expected[4] = re(k * g.sqrt());
        expected[1] = re(k * h.sqrt());
        expected[7] = re(k * (1.0 - h).sqrt());
        let state = run_circuit(&build_subtraction(v[0], v[1]).map_err(err)?, None).map_err(err)?;
        for (a, b) in state.amplitudes().iter().zip(&expected) {
            worst = worst.max((a - b).norm());
        }
    }
    within("64 random final states", worst, 1e-12)
}

fn addition_sum(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 3);
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let v = random_loaders(&mut rng, 2);
        let state = run_circuit(&build_addition(v[0], v[1]).map_err(err)?, None).map_err(err)?;
        let r = read_addition(&state).map_err(err)?;
        worst = worst.max((r.sum - (v[0].value() + v[1].value())).abs());
    }
    within("64 random (g, h)", worst, 1e-12)
}

fn composition_product(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 4);
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let v = random_loaders(&mut rng, 3);
        let (g, h, z) = (v[0], v[1], v[2]);
        let c = build_composition(g, h, z, ToffoliVariant::Native).map_err(err)?;
        let r = read_composition(&run_circuit(&c, None).map_err(err)?).map_err(err)?;
        worst = worst.max((r.product - z.value() * (g.value() - h.value())).abs());
    }
    within("64 random (z, g, h)", worst, 1e-12)
}

fn toffoli_permutation() -> DenseMatrix {
    let rows: Vec<Vec<Complex64>> = (0..8)
        .map(|i| {
            let src = if i & 3 == 3 { i ^ 4 } else { i };
            (0..8)
                .map(|j| re(if j == src { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect();
    DenseMatrix::from_rows(&rows)
}

fn toffoli_exact(_: &ValidationOptions) -> Result<String, String> {
    let m = dense_oracle(&toffoli_exact_decomposition()).map_err(err)?;
    let d = max_deviation_up_to_phase(m.as_slice(), toffoli_permutation().as_slice());
    within("exact decomposition vs permutation", d, 1e-12)
}

fn toffoli_phase_equivalent(_: &ValidationOptions) -> Result<String, String> {
    let m = dense_oracle(&toffoli_phase_equivalent_decomposition()).map_err(err)?;
    let p = toffoli_permutation();
    let d = m
        .as_slice()
        .iter()
        .zip(p.as_slice())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .fold(0.0, f64::max);
    within("entrywise magnitudes", d, 1e-12)
}

fn toffoli_variant_invariance(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 5);
    let mut worst = 0.0f64;
    for _ in 0..16 {
        let v = random_loaders(&mut rng, 3);
        let read = |variant| -> Result<f64, String> {
            let c = build_composition(v[0], v[1], v[2], variant).map_err(err)?;
            Ok(read_composition(&run_circuit(&c, None).map_err(err)?)
                .map_err(err)?
                .r2)
        };
        let reference = read(ToffoliVariant::Native)?;
        for variant in [ToffoliVariant::Exact, ToffoliVariant::RelativePhase] {
            worst = worst.max((read(variant)? - reference).abs());
        }
    }
    for x in grid(9) {
        let reference = relu_experiment(x, ToffoliVariant::Native)
            .and_then(|e| e.evaluate())
            .map_err(err)?;
        let alt = relu_experiment(x, ToffoliVariant::RelativePhase)
            .and_then(|e| e.evaluate())
            .map_err(err)?;
        worst = worst.max((reference.omega - alt.omega).abs());
    }
    within("readout across Toffoli variants", worst, 1e-10)
}

fn uc_ry_block_diagonal(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 6);
    let mut worst = 0.0f64;
    for k in 0..=3usize {
        let angles: Vec<f64> = (0..1 << k).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let controls: Vec<usize> = (0..k).collect();
        let target = k;
        let mut c = Circuit::new();
        c.add_register("q", k + 1).map_err(err)?;
        c.uc_ry(&controls, target, &angles).map_err(err)?;
        let m = dense_oracle(&c).map_err(err)?;
        let dim = 1usize << (k + 1);
        let tbit = 1usize << target;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i & !tbit != j & !tbit {
                    0.0
                } else {
                    let (s, co) = (angles[i & (tbit - 1)] / 2.0).sin_cos();
                    match (i & tbit != 0, j & tbit != 0) {
                        (false, false) | (true, true) => co,
                        (true, false) => s,
                        (false, true) => -s,
                    }
                };
                worst = worst.max((m.get(i, j) - re(expected)).norm());
            }
        }
    }
    within("k = 0..3 controls", worst, 1e-12)
}

fn zsx_rewrite(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 7);
    let mut kinds = vec![
        GateKind::X,
        GateKind::H,
        GateKind::SqrtX,
        GateKind::Ry(0.0),
        GateKind::Ry(std::f64::consts::PI),
    ];
    for _ in 0..20 {
        kinds.push(GateKind::Ry(rng.gen_range(-7.0..7.0)));
        kinds.push(GateKind::Rz(rng.gen_range(-7.0..7.0)));
    }
    let mut worst = 0.0f64;
    for kind in kinds {
        let gate = GateInstance::new(kind, &[0]).map_err(err)?;
        let rewritten = rewrite_1q_to_zsx(&gate).map_err(err)?;
        if rewritten
            .gates()
            .iter()
            .any(|g| !matches!(g.kind(), GateKind::Rz(_) | GateKind::SqrtX))
        {
            return Err(format!("{kind:?}: rewrite left a non-ZSX gate"));
        }
        let m = dense_oracle(&rewritten).map_err(err)?;
        let local = gate.local_matrix().ok_or("gate has no matrix")?;
        worst = worst.max(max_deviation_up_to_phase(m.as_slice(), &local));
    }
    within("rewrite vs original up to phase", worst, 1e-12)
}

fn fourier_leading_terms(_: &ValidationOptions) -> Result<String, String> {
    let expected = [0.598, -0.7, 0.314, -0.14, 0.062];
    let cos2 = to_cos_squared(&gearbox_target_series(2, 4).map_err(err)?);
    let got = cos2.leading_cos_terms();
    let worst = got
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if worst > 0.005 {
        return Err(format!("leading terms {got:.5?} differ by {worst:.4}"));
    }
    let (top, edge) = (cos2.eval(FRAC_PI_4), cos2.eval(0.0));
    if (top - 0.974).abs() > 0.005 || (edge - 0.134).abs() > 0.005 {
        return Err(format!("series(π/4) = {top:.4}, series(0) = {edge:.4}"));
    }
    Ok(format!("leading terms {got:.4?}; series(π/4) = {top:.4}"))
}

fn normalization_values(_: &ValidationOptions) -> Result<String, String> {
    for (d, v) in [(1, 0.5), (2, 0.125), (3, 1.0 / 128.0)] {
        if normalization_constant(d) != v {
            return Err(format!("d = {d}: {} != {v}", normalization_constant(d)));
        }
    }
    Ok("d = 1, 2, 3".into())
}

fn cos_squared_identity(_: &ValidationOptions) -> Result<String, String> {
    let mut worst = 0.0f64;
    for d in 1..=3 {
        let series = gearbox_target_series(d, 6).map_err(err)?;
        let cos2 = to_cos_squared(&series);
        let split = split_series(&cos2);
        for i in 0..1000 {
            let x = -1.0 + 4.0 * i as f64 / 999.0;
            worst = worst
                .max((cos2.eval(x) - series.eval(x)).abs())
                .max((split.eval(x) - cos2.eval(x)).abs());
        }
    }
    within("1000-point grid", worst, 1e-12)
}

fn compiled_series_readback(_: &ValidationOptions) -> Result<String, String> {
    let cos2 = to_cos_squared(&gearbox_target_series(2, 4).map_err(err)?);
    let mut worst = 0.0f64;
    for x in grid(17) {
        let value = compile_series(&cos2, x)
            .and_then(|c| c.evaluate())
            .map_err(err)?;
        worst = worst.max((value - cos2.eval(x)).abs());
    }
    within("17 points", worst, 1e-10)
}

fn split_linearity(_: &ValidationOptions) -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(SEED + 8);
    let cos2 = to_cos_squared(&gearbox_target_series(2, 4).map_err(err)?);
    let split = split_series(&cos2);
    let points: Vec<f64> = (0..4).map(|i| i as f64 * FRAC_PI_2 / 3.0).collect();
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let weights: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let r = split
            .evaluate_weighted(&points, &weights, ToffoliVariant::RelativePhase)
            .map_err(err)?;
        worst = worst.max((r.difference - weighted_expectation(&cos2, &points, &weights)).abs());
    }
    within("random weights", worst, 1e-10)
}

fn qasm_subtraction_census(_: &ValidationOptions) -> Result<String, String> {
    let c = build_subtraction(
        AmplitudeLoader::new(0.3).map_err(err)?,
        AmplitudeLoader::new(0.6).map_err(err)?,
    )
    .map_err(err)?;
    let text = export_qasm(&c);
    let count = |op: &str| text.lines().filter(|l| l.starts_with(op)).count();
    let got = [count("h "), count("ctrl_ry("), count("cx "), count("x ")];
    if got == [1, 2, 2, 2] && text.starts_with("OPENQASM 2.0;") {
        Ok("h 1, ctrl_ry 2, cx 2, x 2".into())
    } else {
        Err(format!("census h/ctrl_ry/cx/x = {got:?}"))
    }
}

fn rescaled_plateau_law(_: &ValidationOptions) -> Result<String, String> {
    let mut worst = 0.0f64;
    for kappa in [0.0, 0.5, FRAC_PI_2] {
        for theta in grid(33) {
            let r = rescaled_plateau_experiment(theta, kappa)
                .and_then(|e| e.evaluate())
                .map_err(err)?;
            let law = (1.0 - closed_form(2, theta).0) * (kappa / 2.0).sin().powi(2);
            worst = worst.max((r.omega - law).abs());
        }
    }
    within("(1 − S∘2) sin²(κ/2)", worst, 1e-12)
}

fn relu_law(_: &ValidationOptions) -> Result<String, String> {
    let mut worst = 0.0f64;
    for x in grid(33) {
        let e = relu_experiment(x, ToffoliVariant::Native).map_err(err)?;
        let state = run_circuit(&e.circuit, None).map_err(err)?;
        let r = post_select(&state, &e.kept, &[false; 3], e.target).map_err(err)?;
        let law = x.sin().powi(2) * closed_form(2, x).0;
        worst = worst.max((r.omega - law).abs());
    }
    within("sin²x · S∘2(x)", worst, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_has_enough_checks() {
        assert!(check_names().len() >= 20);
        let mut names = check_names();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn fresh_build_passes() {
        let report = run_validation(&ValidationOptions::default());
        let failed: Vec<_> = report.failed().collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn doubled_gearbox_angle_is_caught() {
        let report = run_validation(&ValidationOptions {
            gearbox_angle_scale: 2.0,
        });
        let single = report
            .checks
            .iter()
            .find(|c| c.name == "single_step_matrix")
            .unwrap();
        assert!(!single.passed);
        assert!(!report.all_passed());
    }
}
