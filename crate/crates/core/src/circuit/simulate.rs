use super::{strides, Circuit, CircuitError, ErrorLocation, ErrorOp, Gate, Result};
use crate::linalg::{SparseOperator, StateVector, C64};

/// Image of basis state `column` under `gate`, as `(row, amplitude)` pairs.
///
/// Controls reading 2 never fire, and a basis state with any target at 2 is
/// left alone: qubit gates only see the `{0,1}` subspace.
pub(crate) fn gate_column(
    gate: &Gate,
    local: &nalgebra::DMatrix<C64>,
    dims: &[usize],
    strides: &[usize],
    column: usize,
    out: &mut Vec<(usize, C64)>,
) {
    out.clear();
    let digit = |w: usize| (column / strides[w]) % dims[w];
    let active = gate.controls.iter().all(|c| c.fires(digit(c.wire)))
        && gate.targets.iter().all(|&t| digit(t) < 2);
    if !active {
        out.push((column, C64::new(1.0, 0.0)));
        return;
    }
    let k = gate.targets.len();
    let mut local_in = 0;
    let mut base = column;
    for &t in &gate.targets {
        let d = digit(t);
        local_in = (local_in << 1) | d;
        base -= d * strides[t];
    }
    for local_out in 0..(1usize << k) {
        let amp = local[(local_out, local_in)];
        if amp == C64::new(0.0, 0.0) {
            continue;
        }
        let mut row = base;
        for (j, &t) in gate.targets.iter().enumerate() {
            row += ((local_out >> (k - 1 - j)) & 1) * strides[t];
        }
        out.push((row, amp));
    }
}

/// Image of basis state `column` under a single-site fault.
pub(crate) fn error_column(
    op: ErrorOp,
    wire: usize,
    dims: &[usize],
    strides: &[usize],
    column: usize,
) -> Result<(usize, C64)> {
    let d = (column / strides[wire]) % dims[wire];
    let base = column - d * strides[wire];
    let one = C64::new(1.0, 0.0);
    let (digit, amp) = match (op, d) {
        (ErrorOp::Leak, _) if dims[wire] < 3 => {
            return Err(CircuitError::InvalidLocation(
                "leakage needs a qutrit wire".into(),
            ))
        }
        (ErrorOp::Leak, 0) => (2, one),
        (ErrorOp::Leak, 2) => (0, one),
        (_, 2) | (ErrorOp::I, _) | (ErrorOp::Leak, _) => (d, one),
        (ErrorOp::X, _) => (1 - d, one),
        (ErrorOp::Y, 0) => (1, C64::new(0.0, 1.0)),
        (ErrorOp::Y, _) => (0, C64::new(0.0, -1.0)),
        (ErrorOp::Z, 0) => (0, one),
        (ErrorOp::Z, _) => (1, -one),
    };
    Ok((base + digit * strides[wire], amp))
}

fn check_state(c: &Circuit, state: &StateVector) -> Result<()> {
    if state.dim() != c.work_dim() {
        return Err(CircuitError::DimensionMismatch {
            expected: c.work_dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

/// Applies gate `index` of `c` to `state`.
pub fn apply_gate(c: &Circuit, index: usize, state: &StateVector) -> Result<StateVector> {
    check_state(c, state)?;
    let gate = c.gates().get(index).ok_or_else(|| {
        CircuitError::InvalidGate(format!("gate index {index} out of range"))
    })?;
    let dims = c.dims();
    let st = strides(&dims);
    let local = gate.local_matrix();
    let mut out = StateVector::zeros(state.dim());
    let mut image = Vec::new();
    for (j, &a) in state.amplitudes().iter().enumerate() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        gate_column(gate, &local, &dims, &st, j, &mut image);
        for &(i, u) in &image {
            out[i] += u * a;
        }
    }
    Ok(out)
}

/// Gate `index` of `c` as a (non-Hermitian-flagged) operator on the work
/// register.
pub fn gate_operator(c: &Circuit, index: usize) -> Result<SparseOperator> {
    let gate = c.gates().get(index).ok_or_else(|| {
        CircuitError::InvalidGate(format!("gate index {index} out of range"))
    })?;
    let dims = c.dims();
    let st = strides(&dims);
    let local = gate.local_matrix();
    let mut triplets = Vec::new();
    let mut image = Vec::new();
    for j in 0..c.work_dim() {
        gate_column(gate, &local, &dims, &st, j, &mut image);
        triplets.extend(image.iter().map(|&(i, u)| (i, j, u)));
    }
    Ok(SparseOperator::from_triplets(c.work_dim(), triplets, false)
        .expect("gate images stay inside the register"))
}

/// Applies a single-site fault (the step field is ignored).
pub fn apply_error(c: &Circuit, loc: ErrorLocation, state: &StateVector) -> Result<StateVector> {
    check_state(c, state)?;
    if loc.wire >= c.wires().len() {
        return Err(CircuitError::WireOutOfRange {
            index: loc.wire,
            count: c.wires().len(),
        });
    }
    let dims = c.dims();
    let st = strides(&dims);
    let mut out = StateVector::zeros(state.dim());
    for (j, &a) in state.amplitudes().iter().enumerate() {
        let (i, u) = error_column(loc.op, loc.wire, &dims, &st, j)?;
        out[i] += u * a;
    }
    Ok(out)
}

/// Returns the circuit with an extra fault at `loc`.
pub fn insert_error(c: &Circuit, loc: ErrorLocation) -> Result<Circuit> {
    if loc.step >= c.steps() {
        return Err(CircuitError::InvalidLocation(format!(
            "step {} out of range for {} snapshots",
            loc.step,
            c.steps()
        )));
    }
    if loc.wire >= c.wires().len() {
        return Err(CircuitError::WireOutOfRange {
            index: loc.wire,
            count: c.wires().len(),
        });
    }
    if loc.op == ErrorOp::Leak && c.wires()[loc.wire].dim() < 3 {
        return Err(CircuitError::InvalidLocation(format!(
            "leakage on qubit wire `{}`",
            c.wires()[loc.wire].name
        )));
    }
    let mut out = c.clone();
    out.faults.push(loc);
    Ok(out)
}

/// All `D` snapshots: snapshot `t` is the state after `t` gates and after
/// any faults attached to step `t`.
pub fn simulate_dense(c: &Circuit, input: &StateVector) -> Result<Vec<StateVector>> {
    check_state(c, input)?;
    let mut snapshots = Vec::with_capacity(c.steps());
    let mut state = input.clone();
    for t in 0..c.steps() {
        if t > 0 {
            state = apply_gate(c, t - 1, &state)?;
        }
        for f in c.faults().iter().filter(|f| f.step == t) {
            state = apply_error(c, *f, &state)?;
        }
        snapshots.push(state.clone());
    }
    Ok(snapshots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Control, GateKind, WireKind, WireRole};

    #[test]
    fn bell_pair() {
        let c = Circuit::builder()
            .qubit("a")
            .qubit("b")
            .gate(Gate::h(0))
            .gate(Gate::cnot(0, 1))
            .build()
            .unwrap();
        let out = simulate_dense(&c, &StateVector::basis(4, 0)).unwrap();
        assert_eq!(out.len(), 3);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out[2][0].re - s).abs() < 1e-15);
        assert!((out[2][3].re - s).abs() < 1e-15);
    }

    #[test]
    fn control_at_two_never_fires_and_target_at_two_is_untouched() {
        let c = Circuit::builder()
            .wire("c", WireKind::Qutrit, WireRole::Data)
            .wire("t", WireKind::Qutrit, WireRole::Data)
            .gate(Gate::x(1).with_control(Control::on(0)))
            .gate(Gate::x(1).with_control(Control::off(0)))
            .build()
            .unwrap();
        // |2,0> : neither control fires.
        let out = simulate_dense(&c, &StateVector::basis(9, 6)).unwrap();
        assert_eq!(out[2][6].re, 1.0);
        // |0,2> : second control fires but the target is outside {0,1}.
        let out = simulate_dense(&c, &StateVector::basis(9, 2)).unwrap();
        assert_eq!(out[2][2].re, 1.0);
        // |0,0> -> |0,1>
        let out = simulate_dense(&c, &StateVector::basis(9, 0)).unwrap();
        assert_eq!(out[2][1].re, 1.0);
    }

    #[test]
    fn faults_attach_without_adding_steps() {
        let c = Circuit::builder()
            .qubit("q")
            .gate(Gate::single(GateKind::I, 0))
            .build()
            .unwrap();
        let f = insert_error(&c, ErrorLocation::new(0, 0, ErrorOp::X)).unwrap();
        assert_eq!(f.steps(), 2);
        let out = simulate_dense(&f, &StateVector::basis(2, 0)).unwrap();
        assert_eq!(out[0][1].re, 1.0);
        assert_eq!(out[1][1].re, 1.0);
        assert!(insert_error(&c, ErrorLocation::new(2, 0, ErrorOp::X)).is_err());
        assert!(insert_error(&c, ErrorLocation::new(0, 0, ErrorOp::Leak)).is_err());
    }

    #[test]
    fn leakage_swaps_zero_and_two() {
        let c = Circuit::builder()
            .wire("q", WireKind::Qutrit, WireRole::Data)
            .build()
            .unwrap();
        let loc = ErrorLocation::new(0, 0, ErrorOp::Leak);
        let s = apply_error(&c, loc, &StateVector::basis(3, 0)).unwrap();
        assert_eq!(s[2].re, 1.0);
        let s = apply_error(&c, loc, &StateVector::basis(3, 1)).unwrap();
        assert_eq!(s[1].re, 1.0);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let c = Circuit::builder().qubit("q").build().unwrap();
        assert!(simulate_dense(&c, &StateVector::basis(4, 0)).is_err());
    }
}
