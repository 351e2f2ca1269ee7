use std::fmt::Write;

use super::{Circuit, GateKind};

const CTRL_RY_DEF: &str =
    "gate ctrl_ry(theta) c, t { ry(theta/2) t; cx c, t; ry(-theta/2) t; cx c, t; }";
const SQRT_X_DEF: &str = "gate sqrt_x a { u3(pi/2, -pi/2, pi/2) a; }";

/// Serializes a circuit as OpenQASM 2.0 (LF line endings).
///
/// One `qreg` per named register. `CRy` and `√X` are emitted through local
/// gate definitions (`ctrl_ry`, `sqrt_x`) built from `qelib1.inc` primitives,
/// so the body has exactly one statement per gate. Global phase is not
/// representable and is dropped. Measured qubits are read into a single
/// `creg meas` in ascending qubit order.
pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");

    let uses = |pred: fn(&GateKind) -> bool| circuit.gates().iter().any(|g| pred(&g.kind()));
    if uses(|k| matches!(k, GateKind::CRy(_))) {
        out.push_str(CTRL_RY_DEF);
        out.push('\n');
    }
    if uses(|k| matches!(k, GateKind::SqrtX)) {
        out.push_str(SQRT_X_DEF);
        out.push('\n');
    }

    for r in circuit.registers() {
        let _ = writeln!(out, "qreg {}[{}];", r.name, r.size);
    }
    let measured: Vec<usize> = circuit.measured().iter().copied().collect();
    if !measured.is_empty() {
        let _ = writeln!(out, "creg meas[{}];", measured.len());
    }

    let label = |q: usize| circuit.label(q).expect("gate qubits lie in registers");
    let cbit = |q: usize| {
        measured
            .iter()
            .position(|&m| m == q)
            .expect("measured qubit")
    };
    let mut measured_inline = Vec::new();

    for g in circuit.gates() {
        let ops: Vec<String> = g.qubits().iter().map(|&q| label(q)).collect();
        let ops = ops.join(", ");
        let _ = match g.kind() {
            GateKind::X => writeln!(out, "x {ops};"),
            GateKind::H => writeln!(out, "h {ops};"),
            GateKind::SqrtX => writeln!(out, "sqrt_x {ops};"),
            GateKind::Ry(a) => writeln!(out, "ry({a}) {ops};"),
            GateKind::Rz(a) => writeln!(out, "rz({a}) {ops};"),
            GateKind::CX => writeln!(out, "cx {ops};"),
            GateKind::CRy(a) => writeln!(out, "ctrl_ry({a}) {ops};"),
            GateKind::Toffoli => writeln!(out, "ccx {ops};"),
            GateKind::Measure => {
                let q = g.target();
                measured_inline.push(q);
                writeln!(out, "measure {} -> meas[{}];", label(q), cbit(q))
            }
        };
    }
    for &q in measured.iter().filter(|q| !measured_inline.contains(q)) {
        let _ = writeln!(out, "measure {} -> meas[{}];", label(q), cbit(q));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_is_header_plus_qreg() {
        let mut c = Circuit::new();
        c.add_register("q", 1).unwrap();
        assert_eq!(
            export_qasm(&c),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n"
        );
    }

    #[test]
    fn cx_keeps_operand_order() {
        let mut c = Circuit::new();
        c.add_register("q", 2).unwrap();
        c.cx(1, 0).unwrap();
        let text = export_qasm(&c);
        assert!(text.ends_with("cx q[1], q[0];\n"), "{text}");
    }

    #[test]
    fn measurements_go_to_one_creg() {
        let mut c = Circuit::new();
        let a = c.add_register("a", 1).unwrap();
        let t = c.add_register("t", 1).unwrap();
        c.h(a.at(0)).unwrap();
        c.measure(t.at(0)).unwrap();
        let text = export_qasm(&c);
        assert!(text.contains("creg meas[1];\n"));
        assert!(text.ends_with("measure t[0] -> meas[0];\n"));
        assert!(!text.contains('\r'));
    }
}
