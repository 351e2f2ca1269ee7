use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;

use stepgear::arith::{
    build_addition, build_subtraction, read_addition, read_subtraction, AmplitudeLoader,
};
use stepgear::circuit::{
    mat2_mul, ry, rz, sqrt_x, zsx_decompose, Circuit, GateKind, ToffoliVariant, ZsxDecomposition,
};
use stepgear::fourier::{build_weighted_series, compile_series, split_series, CosSquaredSeries};
use stepgear::gearbox::{gearbox_experiment, GearboxSpec};
use stepgear::sim::{dense_oracle, max_deviation_up_to_phase, run_circuit};

const N_QUBITS: usize = 5;

fn gate_strategy() -> impl Strategy<Value = (GateKind, Vec<usize>)> {
    let angle = -7.0..7.0f64;
    let kind = prop_oneof![
        Just(GateKind::X),
        Just(GateKind::H),
        Just(GateKind::SqrtX),
        angle.clone().prop_map(GateKind::Ry),
        angle.clone().prop_map(GateKind::Rz),
        Just(GateKind::CX),
        angle.prop_map(GateKind::CRy),
        Just(GateKind::Toffoli),
    ];
    (kind, Just((0..N_QUBITS).collect::<Vec<_>>()).prop_shuffle()).prop_map(|(k, order)| {
        let q = order[..k.arity()].to_vec();
        (k, q)
    })
}

fn random_circuit() -> impl Strategy<Value = Circuit> {
    prop::collection::vec(gate_strategy(), 0..40).prop_map(|gates| {
        let mut c = Circuit::new();
        c.add_register("q", N_QUBITS).unwrap();
        for (k, q) in gates {
            c.push(k, &q).unwrap();
        }
        c
    })
}

proptest! {
    #[test]
    fn kernel_agrees_with_dense_oracle(c in random_circuit(), start in 0usize..(1 << N_QUBITS)) {
        let initial = stepgear::sim::StateVector::basis(N_QUBITS, start).unwrap();
        let state = run_circuit(&c, Some(initial)).unwrap();
        let column = dense_oracle(&c).unwrap().column(start);
        for (a, b) in state.amplitudes().iter().zip(&column) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn circuits_preserve_norm(c in random_circuit()) {
        let state = run_circuit(&c, None).unwrap();
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!(dense_oracle(&c).unwrap().unitarity_defect() < 1e-12);
    }

    #[test]
    fn uc_ry_is_block_diagonal(k in 0usize..4, seed_angles in prop::collection::vec(-7.0..7.0f64, 8)) {
        let angles = &seed_angles[..1 << k];
        let mut c = Circuit::new();
        c.add_register("q", k + 1).unwrap();
        // target in the middle when possible
        let target = k / 2;
        let controls: Vec<usize> = (0..=k).filter(|&q| q != target).collect();
        c.uc_ry(&controls, target, angles).unwrap();
        let m = dense_oracle(&c).unwrap();
        for col in 0..1usize << (k + 1) {
            let pattern = controls.iter().enumerate().fold(0, |p, (i, &q)| p | (((col >> q) & 1) << i));
            let (s, co) = (angles[pattern] / 2.0).sin_cos();
            let bit = (col >> target) & 1;
            let flipped = col ^ (1 << target);
            let (stay, go) = if bit == 0 { (co, s) } else { (co, -s) };
            prop_assert!((m.get(col, col) - Complex64::new(stay, 0.0)).norm() < 1e-12);
            prop_assert!((m.get(flipped, col) - Complex64::new(go, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zsx_reconstructs_random_unitaries(a in -PI..PI, b in 0.0..PI, c in -PI..PI) {
        let u = mat2_mul(&rz(a), &mat2_mul(&ry(b), &rz(c)));
        let rebuilt = match zsx_decompose(&u) {
            ZsxDecomposition::Diagonal { angle } => rz(angle),
            ZsxDecomposition::Full { first, middle, last } => {
                let m = mat2_mul(&sqrt_x(), &rz(first));
                let m = mat2_mul(&rz(middle), &m);
                let m = mat2_mul(&sqrt_x(), &m);
                mat2_mul(&rz(last), &m)
            }
        };
        let flat = |m: [[Complex64; 2]; 2]| [m[0][0], m[0][1], m[1][0], m[1][1]];
        prop_assert!(max_deviation_up_to_phase(&flat(rebuilt), &flat(u)) < 1e-10);
    }

    #[test]
    fn gearbox_readout_is_antisymmetric_about_quarter_pi(d in 1u32..=3, theta in 0.0..FRAC_PI_2) {
        let run = |t| gearbox_experiment(&GearboxSpec::new(d, t).unwrap()).unwrap().evaluate().unwrap();
        let (a, b) = (run(theta), run(FRAC_PI_2 - theta));
        prop_assert!((a.omega + b.omega - 1.0).abs() < 1e-12);
        prop_assert!((a.success_probability - b.success_probability).abs() < 1e-12);
    }

    #[test]
    fn gearbox_step_is_monotone(d in 1u32..=3, t0 in 0.0..FRAC_PI_2, t1 in 0.0..FRAC_PI_2) {
        let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
        let run = |t| gearbox_experiment(&GearboxSpec::new(d, t).unwrap()).unwrap().evaluate().unwrap().omega;
        prop_assert!(run(lo) <= run(hi) + 1e-12);
    }

    #[test]
    fn subtraction_and_addition_read_back(g in 0.0..=1.0f64, h in 0.0..=1.0f64) {
        let (lg, lh) = (AmplitudeLoader::new(g).unwrap(), AmplitudeLoader::new(h).unwrap());
        let sub = read_subtraction(&run_circuit(&build_subtraction(lg, lh).unwrap(), None).unwrap()).unwrap();
        let add = read_addition(&run_circuit(&build_addition(lg, lh).unwrap(), None).unwrap()).unwrap();
        prop_assert!((sub.difference - (g - h)).abs() < 1e-12);
        prop_assert!((add.sum - (g + h)).abs() < 1e-12);
    }

    #[test]
    fn compiled_series_reads_back(
        a0 in -1.0..1.0f64,
        a in prop::collection::vec(-0.5..0.5f64, 2),
        b in prop::collection::vec(-0.5..0.5f64, 2),
        period in 0.5..3.0f64,
        x in -2.0..2.0f64,
    ) {
        let series = CosSquaredSeries { period, a0_prime: a0, a_prime: a, b_prime: b };
        let value = series.eval(x);
        prop_assume!((0.0..=1.0).contains(&value));
        let compiled = compile_series(&series, x).unwrap();
        prop_assert!((compiled.evaluate().unwrap() - value).abs() < 1e-10);
    }

    #[test]
    fn split_evaluation_is_linear(
        a0 in -0.5..0.5f64,
        a in prop::collection::vec(-0.5..0.5f64, 2),
        b in prop::collection::vec(-0.5..0.5f64, 2),
        weights in prop::collection::vec(0.0..=1.0f64, 4),
        points in prop::collection::vec(0.0..FRAC_PI_2, 4),
    ) {
        let series = CosSquaredSeries { period: FRAC_PI_2, a0_prime: a0, a_prime: a, b_prime: b };
        let split = split_series(&series);
        let run = |part| build_weighted_series(part, &points, &weights, ToffoliVariant::RelativePhase)
            .unwrap()
            .evaluate()
            .unwrap();
        let difference = run(&split.positive) - run(&split.negative);
        let expected: f64 = points.iter().zip(&weights).map(|(&x, z)| z * series.eval(x)).sum();
        prop_assert!((difference - expected).abs() < 1e-10);
    }
}
