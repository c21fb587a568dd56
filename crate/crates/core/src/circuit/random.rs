use super::{Circuit, Control, Gate, GateKind, Wire, WireKind, WireRole};
use rand::Rng;

/// Random qubit circuit drawn from `{X, Y, Z, H, CNOT, SWAP}` plus
/// singly-controlled single-qubit gates. Needs at least two wires.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, wires: usize, gates: usize) -> Circuit {
    assert!(wires >= 2, "random circuits need two wires");
    let ws = (0..wires)
        .map(|i| Wire::new(format!("q{i}"), WireKind::Qubit, WireRole::Data))
        .collect();
    let mut out = Vec::with_capacity(gates);
    for _ in 0..gates {
        let a = rng.random_range(0..wires);
        let mut b = rng.random_range(0..wires - 1);
        if b >= a {
            b += 1;
        }
        let single = [GateKind::X, GateKind::Y, GateKind::Z, GateKind::H];
        let g = match rng.random_range(0..7) {
            k @ 0..=3 => Gate::single(single[k].clone(), a),
            4 => Gate::cnot(a, b),
            5 => Gate::swap(a, b),
            _ => {
                let kind = single[rng.random_range(0..4)].clone();
                let ctl = if rng.random() { Control::on(b) } else { Control::off(b) };
                Gate::single(kind, a).with_control(ctl)
            }
        };
        out.push(g);
    }
    Circuit::new(ws, out, Vec::new()).expect("random gates are valid")
}
