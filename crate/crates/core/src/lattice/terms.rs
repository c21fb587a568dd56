use super::{LatticeError, LatticeProgram, Result, EMPTY};
use crate::circuit::{parse_circuit, serialize_circuit, simulate::gate_column, strides, Gate};
use crate::linalg::C64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub row: usize,
    pub col: usize,
}

impl Site {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteCondition {
    pub site: Site,
    /// `true`: site must be non-|2>; `false`: site must be |2>.
    pub present: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    /// Transitions out of even rows run left-to-right, odd rows right-to-left.
    pub fn for_row(row: usize) -> Self {
        if row % 2 == 0 {
            Direction::Right
        } else {
            Direction::Left
        }
    }

    fn offset(self, col: usize, cols: &std::ops::Range<usize>) -> (Option<usize>, Option<usize>) {
        let prev = col.checked_sub(1).filter(|c| cols.contains(c));
        let next = Some(col + 1).filter(|c| cols.contains(c));
        match self {
            Direction::Right => (prev, next),
            Direction::Left => (next, prev),
        }
    }
}

/// Gate between the mover (`m`) and the next qutrit to move (`n`), written
/// as one circuit-format gate line over wires `m` and `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGate {
    text: String,
    gate: Gate,
}

impl LocalGate {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.contains('\n') || text.contains('#') {
            return Err(LatticeError::InvalidProgram(format!("bad gate text {text:?}")));
        }
        let c = parse_circuit(&format!("wire m qubit data\nwire n qubit data\ngate {text}\n"))?;
        Ok(Self {
            text: text.to_string(),
            gate: c.gates()[0].clone(),
        })
    }

    /// From a gate over local wires `0 = m`, `1 = n`.
    pub fn from_gate(gate: Gate) -> Result<Self> {
        let c = crate::circuit::Circuit::builder()
            .qubit("m")
            .qubit("n")
            .gate(gate)
            .build()?;
        let text = serialize_circuit(&c)
            .lines()
            .find_map(|l| l.strip_prefix("gate ").map(str::to_string))
            .expect("one gate line");
        Self::parse(&text)
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn gate(&self) -> &Gate {
        &self.gate
    }

    fn uses_neighbor(&self) -> bool {
        self.gate.wires().any(|w| w == 1)
    }
}

/// One conditional move `(row, col) -> (row+1, col)` and its adjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveTerm {
    pub row: usize,
    pub col: usize,
    pub direction: Direction,
    pub src: Site,
    pub dst: Site,
    /// Previously moved site in the destination row (must be present).
    pub behind: Option<Site>,
    /// Next destination in the destination row (must be empty).
    pub ahead: Option<Site>,
    /// Next qutrit to move; gate partner (must be present).
    pub neighbor: Option<Site>,
    pub extra: Vec<SiteCondition>,
    pub gate: Option<LocalGate>,
    local: DMatrix<C64>,
}

fn qutrit_matrix(gate: Option<&LocalGate>, sites: usize) -> DMatrix<C64> {
    let dim = 3usize.pow(sites as u32);
    let Some(g) = gate else {
        return DMatrix::identity(dim, dim);
    };
    let dims = vec![3; sites];
    let st = strides(&dims);
    let local = g.gate.local_matrix();
    let mut m = DMatrix::zeros(dim, dim);
    let mut image = Vec::new();
    for j in 0..dim {
        gate_column(&g.gate, &local, &dims, &st, j, &mut image);
        for &(i, a) in &image {
            m[(i, j)] += a;
        }
    }
    m
}

impl MoveTerm {
    fn site_index(&self, s: Site, cols: usize) -> usize {
        s.row * cols + s.col
    }

    /// Conditions shared by the forward and adjoint branches.
    fn context_holds(&self, label: &[u8], cols: usize) -> bool {
        let present = |s: Site| label[self.site_index(s, cols)] != EMPTY;
        self.behind.is_none_or(present)
            && self.ahead.is_none_or(|s| !present(s))
            && self.neighbor.is_none_or(present)
            && self.extra.iter().all(|c| present(c.site) == c.present)
    }

    pub fn forward_enabled(&self, label: &[u8], cols: usize) -> bool {
        label[self.site_index(self.src, cols)] != EMPTY
            && label[self.site_index(self.dst, cols)] == EMPTY
            && self.context_holds(label, cols)
    }

    pub fn backward_enabled(&self, label: &[u8], cols: usize) -> bool {
        label[self.site_index(self.src, cols)] == EMPTY
            && label[self.site_index(self.dst, cols)] != EMPTY
            && self.context_holds(label, cols)
    }

    /// `R label`: gate on (mover, neighbor), then swap mover into place.
    pub fn apply_forward(&self, label: &[u8], cols: usize) -> Vec<(Vec<u8>, C64)> {
        if !self.forward_enabled(label, cols) {
            return Vec::new();
        }
        let (src, dst) = (self.site_index(self.src, cols), self.site_index(self.dst, cols));
        let nb = self.neighbor.map(|s| self.site_index(s, cols));
        let column = match nb {
            Some(n) => label[src] as usize * 3 + label[n] as usize,
            None => label[src] as usize,
        };
        let mut out = Vec::new();
        for row in 0..self.local.nrows() {
            let a = self.local[(row, column)];
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let mut next = label.to_vec();
            match nb {
                Some(n) => {
                    next[dst] = (row / 3) as u8;
                    next[n] = (row % 3) as u8;
                }
                None => next[dst] = row as u8,
            }
            next[src] = EMPTY;
            out.push((next, a));
        }
        out
    }

    /// `R† label`: swap back, then the inverse gate.
    pub fn apply_backward(&self, label: &[u8], cols: usize) -> Vec<(Vec<u8>, C64)> {
        if !self.backward_enabled(label, cols) {
            return Vec::new();
        }
        let (src, dst) = (self.site_index(self.src, cols), self.site_index(self.dst, cols));
        let nb = self.neighbor.map(|s| self.site_index(s, cols));
        let row = match nb {
            Some(n) => label[dst] as usize * 3 + label[n] as usize,
            None => label[dst] as usize,
        };
        let mut out = Vec::new();
        for column in 0..self.local.ncols() {
            let a = self.local[(row, column)].conj();
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let mut prev = label.to_vec();
            match nb {
                Some(n) => {
                    prev[src] = (column / 3) as u8;
                    prev[n] = (column % 3) as u8;
                }
                None => prev[src] = column as u8,
            }
            prev[dst] = EMPTY;
            out.push((prev, a));
        }
        out
    }
}

/// One term per move location of every lane.
pub fn build_rl_terms(p: &LatticeProgram) -> Result<Vec<MoveTerm>> {
    let mut terms = Vec::new();
    let mut used = std::collections::BTreeSet::new();
    for lane in &p.lanes {
        if lane.cols.start >= lane.cols.end || lane.cols.end > p.cols || lane.transitions.end >= p.rows
        {
            return Err(LatticeError::InvalidProgram(format!(
                "lane {lane:?} does not fit a {}x{} lattice",
                p.rows, p.cols
            )));
        }
        for s in lane.transitions.clone() {
            let direction = Direction::for_row(s);
            for m in lane.cols.clone() {
                let (back, fwd) = direction.offset(m, &lane.cols);
                let gate = p.gates.get(&(s, m)).cloned();
                if let Some(g) = &gate {
                    if fwd.is_none() && g.uses_neighbor() {
                        return Err(LatticeError::InvalidProgram(format!(
                            "gate `{}` at ({s}, {m}) uses `n` but the last mover has no neighbor",
                            g.text
                        )));
                    }
                }
                if !used.insert((s, m)) {
                    return Err(LatticeError::InvalidProgram(format!(
                        "move location ({s}, {m}) belongs to two lanes"
                    )));
                }
                let neighbor = fwd.map(|c| Site::new(s, c));
                let local = qutrit_matrix(gate.as_ref(), if neighbor.is_some() { 2 } else { 1 });
                terms.push(MoveTerm {
                    row: s,
                    col: m,
                    direction,
                    src: Site::new(s, m),
                    dst: Site::new(s + 1, m),
                    behind: back.map(|c| Site::new(s + 1, c)),
                    ahead: fwd.map(|c| Site::new(s + 1, c)),
                    neighbor,
                    extra: p.guards.get(&(s, m)).cloned().unwrap_or_default(),
                    gate,
                    local,
                });
            }
        }
    }
    if let Some(&(r, c)) = p.gates.keys().find(|k| !used.contains(k)) {
        return Err(LatticeError::InvalidProgram(format!(
            "gate at ({r}, {c}) is not a move location"
        )));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn program(rows: usize, cols: usize) -> LatticeProgram {
        LatticeProgram::identity(rows, cols, 0..cols).unwrap()
    }

    #[test]
    fn two_by_three_identity_has_three_terms() {
        let t = build_rl_terms(&program(2, 3)).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].direction, Direction::Right);
        assert_eq!(t[0].neighbor, Some(Site::new(0, 1)));
        assert_eq!(t[2].neighbor, None);
        assert_eq!(t[2].behind, Some(Site::new(1, 1)));
    }

    #[test]
    fn violating_config_is_annihilated_and_satisfying_one_moves() {
        let t = build_rl_terms(&program(2, 3)).unwrap();
        let start = [0, 1, 1, 2, 2, 2];
        assert!(t[1].apply_forward(&start, 3).is_empty());
        let out = t[0].apply_forward(&start, 3);
        assert_eq!(out, vec![(vec![2, 1, 1, 0, 2, 2], C64::new(1.0, 0.0))]);
        assert_eq!(t[0].apply_backward(&out[0].0, 3), vec![(start.to_vec(), C64::new(1.0, 0.0))]);
    }

    #[test]
    fn gate_acts_on_mover_and_neighbor_before_the_swap() {
        let p = program(2, 2).with_gate(0, 0, LocalGate::parse("CNOT m n").unwrap());
        let t = build_rl_terms(&p).unwrap();
        let out = t[0].apply_forward(&[1, 0, 2, 2], 2);
        assert_eq!(out, vec![(vec![2, 1, 1, 2], C64::new(1.0, 0.0))]);
    }

    #[test]
    fn last_mover_cannot_take_a_two_site_gate() {
        let p = program(2, 2).with_gate(0, 1, LocalGate::parse("CNOT m n").unwrap());
        assert!(build_rl_terms(&p).is_err());
        let p = program(2, 2).with_gate(0, 1, LocalGate::parse("X m").unwrap());
        assert!(build_rl_terms(&p).is_ok());
    }

    #[test]
    fn local_gate_text_round_trips() {
        let g = LocalGate::parse("X n ctrl- m").unwrap();
        assert_eq!(LocalGate::from_gate(g.gate().clone()).unwrap(), g);
    }
}
