use super::{
    lattice_hamiltonian, orbit_from_labels, Direction, LatticeError, LatticeProgram,
    LocalGate, OrbitBasis, Result, EMPTY,
};
use crate::circuit::{digits_of, index_of, simulate_dense, Circuit, Control, Gate, WireKind};
use crate::linalg::{evolve, StateVector, C64};
use crate::transfer::{locate_transfer_time, pst_couplings, CouplingScheme, TransferPeak};
use serde::{Deserialize, Serialize};

/// Move locations of a full-width lane in the order the active row visits them.
fn move_order(rows: usize, cols: usize) -> Vec<(usize, usize, Option<usize>)> {
    let mut out = Vec::new();
    for s in 0..rows - 1 {
        let order: Vec<usize> = match Direction::for_row(s) {
            Direction::Right => (0..cols).collect(),
            Direction::Left => (0..cols).rev().collect(),
        };
        for (k, &m) in order.iter().enumerate() {
            out.push((s, m, order.get(k + 1).copied()));
        }
    }
    out
}

fn relabel(g: &Gate, mover: usize, neighbor: Option<usize>) -> Option<Gate> {
    let map = |w: usize| {
        if w == mover {
            Some(0)
        } else if Some(w) == neighbor {
            Some(1)
        } else {
            None
        }
    };
    let targets = g.targets.iter().map(|&w| map(w)).collect::<Option<Vec<_>>>()?;
    let controls = g
        .controls
        .iter()
        .map(|c| {
            map(c.wire).map(|wire| Control {
                wire,
                polarity: c.polarity,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Gate::new(g.kind.clone(), targets, controls))
}

/// Places the gates of `c` one per move location, in order, on a lattice
/// with one column per wire. A gate fits a location when every wire it
/// touches is the mover or the next qutrit to move.
pub fn compile_circuit(c: &Circuit, rows: usize) -> Result<LatticeProgram> {
    let cols = c.wires().len();
    if c.wires().iter().any(|w| w.kind != WireKind::Qubit) {
        return Err(LatticeError::Unsupported("qutrit wires".into()));
    }
    if !c.faults().is_empty() {
        return Err(LatticeError::Unsupported("circuits with fault annotations".into()));
    }
    for (k, g) in c.gates().iter().enumerate() {
        let wires: Vec<usize> = g.wires().collect();
        let adjacent = match wires.as_slice() {
            [_] => true,
            [a, b] => a.abs_diff(*b) == 1,
            _ => false,
        };
        if !adjacent {
            return Err(LatticeError::Unsupported(format!(
                "gate {k} ({}) does not act on one wire or two adjacent wires",
                g.kind.name()
            )));
        }
    }
    let mut p = LatticeProgram::identity(rows, cols, 0..cols)?;
    let order = move_order(rows, cols);
    let mut next = 0;
    for (k, g) in c.gates().iter().enumerate() {
        let placed = order[next..].iter().enumerate().find_map(|(i, &(s, m, n))| {
            relabel(g, m, n).map(|local| (next + i, s, m, local))
        });
        let Some((at, s, m, local)) = placed else {
            return Err(LatticeError::CompileOverflow { gate: k, rows });
        };
        p.gates.insert((s, m), LocalGate::from_gate(local)?);
        next = at + 1;
    }
    Ok(p)
}

/// Result of comparing lattice transport against the circuit model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub rows: usize,
    pub cols: usize,
    pub orbit_size: usize,
    pub depth: usize,
    pub t0: f64,
    /// `|<circuit output|transported row>|^2`.
    pub fidelity: f64,
    /// Probability of finding the active row on the last row at `t0`.
    pub arrival: f64,
    /// Every orbit configuration has the initial number of active sites.
    pub active_conserved: bool,
}

/// Row-0 labels for every computational basis state of `c`'s wires.
fn initial_labels(rows: usize, cols: usize) -> Vec<Vec<u8>> {
    let dims = vec![2; cols];
    (0..1usize << cols)
        .map(|i| {
            let mut label = vec![EMPTY; rows * cols];
            for (col, d) in digits_of(i, &dims).into_iter().enumerate() {
                label[col] = d as u8;
            }
            label
        })
        .collect()
}

/// Coupling scheme by depth: PST when the depth is a clock, uniform
/// otherwise.
pub(crate) fn depth_scheme(basis: &OrbitBasis) -> Result<CouplingScheme> {
    let depth = basis.depth();
    if depth == 0 {
        return Err(LatticeError::InvalidProgram("no move is possible".into()));
    }
    Ok(if basis.is_clocked() {
        pst_couplings(depth)?
    } else {
        CouplingScheme::uniform(depth, 1.0)?
    })
}

pub(crate) fn evolve_on_orbit(
    basis: &OrbitBasis,
    p: &LatticeProgram,
    start: &StateVector,
) -> Result<(TransferPeak, StateVector)> {
    let scheme = depth_scheme(basis)?;
    let h = lattice_hamiltonian(basis, p, &scheme)?;
    let peak = locate_transfer_time(&scheme);
    let out = evolve(&h, start, peak.t0)?;
    Ok((peak, out))
}

/// Compiles `c` onto the smallest lattice that fits it, transports
/// `input` (default `|0...0>`) across, and compares the last row with the
/// circuit's final snapshot.
pub fn lattice_vs_circuit_check(
    c: &Circuit,
    input: Option<&StateVector>,
    cap: usize,
) -> Result<EquivalenceReport> {
    let cols = c.wires().len();
    let max_rows = 2 * c.gates().len() + 2;
    let mut rows = 2;
    let program = loop {
        match compile_circuit(c, rows) {
            Ok(p) => break p,
            Err(LatticeError::CompileOverflow { .. }) if rows < max_rows => rows += 1,
            Err(e) => return Err(e),
        }
    };
    let input = match input {
        Some(v) => v.clone(),
        None => StateVector::basis(c.work_dim(), 0),
    };
    let expected = simulate_dense(c, &input)?.pop().expect("at least one snapshot");

    let terms = super::build_rl_terms(&program)?;
    let labels = initial_labels(rows, cols);
    let basis = orbit_from_labels(rows, cols, labels.clone(), &terms, cap)?;
    let mut start = vec![C64::new(0.0, 0.0); basis.len()];
    for (i, label) in labels.iter().enumerate() {
        start[basis.index_of(label).expect("initial label")] = input[i];
    }
    let start = StateVector::new(start)?;
    let (peak, out) = evolve_on_orbit(&basis, &program, &start)?;

    let dims = vec![2; cols];
    let last = (rows - 1) * cols;
    let mut row_state = vec![C64::new(0.0, 0.0); c.work_dim()];
    for (i, label) in basis.labels().iter().enumerate() {
        if label[..last].iter().all(|&v| v == EMPTY) {
            let digits: Vec<usize> = label[last..].iter().map(|&v| v as usize).collect();
            row_state[index_of(&digits, &dims)] = out[i];
        }
    }
    let arrival: f64 = row_state.iter().map(|a| a.norm_sqr()).sum();
    let overlap: C64 = expected
        .amplitudes()
        .iter()
        .zip(&row_state)
        .map(|(e, r)| e.conj() * r)
        .sum();
    let active = cols;
    Ok(EquivalenceReport {
        rows,
        cols,
        orbit_size: basis.len(),
        depth: basis.depth(),
        t0: peak.t0,
        fidelity: overlap.norm_sqr(),
        arrival,
        active_conserved: (0..basis.len()).all(|i| basis.active_count(i) == active),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gates_are_placed_in_visit_order() {
        let c = Circuit::builder()
            .qubit("a")
            .qubit("b")
            .gate(Gate::x(1))
            .gate(Gate::cnot(0, 1))
            .build()
            .unwrap();
        let p = compile_circuit(&c, 3).unwrap();
        // X on wire 1 fits the first location as the neighbour of mover 0;
        // the CNOT then waits for the next location where 0 and 1 pair up.
        let keys: Vec<_> = p.gates.keys().copied().collect();
        assert_eq!(keys, vec![(0, 0), (1, 1)]);
        assert_eq!(p.gates[&(0, 0)].text(), "X n");
        assert!(matches!(
            compile_circuit(&c, 2),
            Err(LatticeError::CompileOverflow { gate: 1, rows: 2 })
        ));
    }

    #[test]
    fn distant_gates_are_unsupported() {
        let c = Circuit::builder()
            .qubit("a")
            .qubit("b")
            .qubit("c")
            .gate(Gate::cnot(0, 2))
            .build()
            .unwrap();
        assert!(matches!(compile_circuit(&c, 4), Err(LatticeError::Unsupported(_))));
    }
}
