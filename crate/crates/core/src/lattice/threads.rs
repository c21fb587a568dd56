use super::{
    build_rl_terms, orbit_from_labels, Direction, Lane, LatticeError, LatticeProgram, Result, Site,
    SiteCondition, EMPTY,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A block of `width` adjacent columns that moves down `length` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thread {
    pub width: usize,
    pub length: usize,
}

/// Side-by-side threads that merge into one full-width region once all of
/// them reach the merge row (the longest thread's length).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadScenario {
    pub threads: Vec<Thread>,
    /// Extend every thread with identity moves up to the merge row.
    pub padded: bool,
    /// Rows available to the merged region after the merge row.
    pub tail_rows: usize,
    /// Require every thread to have arrived before the merged region moves.
    #[serde(default = "yes")]
    pub guard_merge: bool,
}

fn yes() -> bool {
    true
}

impl ThreadScenario {
    pub fn new(threads: Vec<Thread>, padded: bool) -> Self {
        Self {
            threads,
            padded,
            tail_rows: 1,
            guard_merge: true,
        }
    }

    pub fn cols(&self) -> usize {
        self.threads.iter().map(|t| t.width).sum()
    }

    pub fn merge_row(&self) -> usize {
        self.threads.iter().map(|t| t.length).max().unwrap_or(0)
    }

    pub fn rows(&self) -> usize {
        self.merge_row() + 1 + self.tail_rows
    }

    fn validate(&self) -> Result<()> {
        if self.threads.is_empty() {
            return Err(LatticeError::Shape("no threads".into()));
        }
        if self.threads.iter().any(|t| t.width == 0 || t.length == 0) {
            return Err(LatticeError::Shape("threads need positive width and length".into()));
        }
        if self.tail_rows == 0 {
            return Err(LatticeError::Shape("need at least one row after the merge".into()));
        }
        Ok(())
    }

    /// Thread lanes, the merged lane, and the merge guards.
    pub fn program(&self) -> Result<LatticeProgram> {
        self.validate()?;
        let (rows, cols, merge) = (self.rows(), self.cols(), self.merge_row());
        let mut lanes = Vec::new();
        let mut arrivals = Vec::new();
        let mut start = 0;
        for t in &self.threads {
            let range = start..start + t.width;
            let end = if self.padded { merge } else { t.length };
            let last = match Direction::for_row(merge - 1) {
                Direction::Right => range.end - 1,
                Direction::Left => range.start,
            };
            arrivals.push((end, last));
            lanes.push(Lane {
                cols: range,
                transitions: 0..end,
            });
            start += t.width;
        }
        lanes.push(Lane {
            cols: 0..cols,
            transitions: merge..rows - 1,
        });

        let first = match Direction::for_row(merge) {
            Direction::Right => 0,
            Direction::Left => cols - 1,
        };
        let mut guards = BTreeMap::new();
        if self.guard_merge {
            guards.insert(
                (merge, first),
                arrivals
                    .iter()
                    .map(|&(_, col)| SiteCondition {
                        site: Site::new(merge, col),
                        present: true,
                    })
                    .collect(),
            );
            for &(end, col) in &arrivals {
                if end == merge {
                    guards.entry((merge - 1, col)).or_insert_with(Vec::new).push(SiteCondition {
                        site: Site::new(merge + 1, first),
                        present: false,
                    });
                }
            }
        }
        Ok(LatticeProgram {
            rows,
            cols,
            lanes,
            gates: BTreeMap::new(),
            guards,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadReport {
    pub orbit_size: usize,
    pub merge_row: usize,
    /// Depths at which the merged region makes its first move.
    pub frontier_depths: Vec<usize>,
    /// Some configuration has the merged region moving while a thread is
    /// still above the merge row.
    pub premature_merge: bool,
    pub merge_reachable: bool,
    pub blocked: bool,
}

/// Structural check on the orbit graph of a thread scenario.
pub fn thread_blocking_check(scenario: &ThreadScenario, cap: usize) -> Result<ThreadReport> {
    let p = scenario.program()?;
    let terms = build_rl_terms(&p)?;
    let (rows, cols, merge) = (p.rows, p.cols, scenario.merge_row());
    let mut init = vec![EMPTY; rows * cols];
    init[..cols].fill(0);
    let basis = orbit_from_labels(rows, cols, vec![init], &terms, cap)?;

    let present = |label: &[u8], r: usize| label[r * cols..(r + 1) * cols].iter().filter(|&&v| v != EMPTY).count();
    let mut frontier = Vec::new();
    let mut premature = false;
    for (i, label) in basis.labels().iter().enumerate() {
        let beyond: usize = (merge + 1..rows).map(|r| present(label, r)).sum();
        let behind: usize = (0..merge).map(|r| present(label, r)).sum();
        if beyond > 0 && behind > 0 {
            premature = true;
        }
        if beyond == 1 && present(label, merge + 1) == 1 {
            frontier.push(basis.depth_of(i));
        }
    }
    frontier.sort_unstable();
    frontier.dedup();
    let merge_reachable = !frontier.is_empty();
    Ok(ThreadReport {
        orbit_size: basis.len(),
        merge_row: merge,
        frontier_depths: frontier,
        premature_merge: premature,
        merge_reachable,
        blocked: !merge_reachable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(a: usize, b: usize, padded: bool) -> ThreadScenario {
        ThreadScenario::new(
            vec![Thread { width: 1, length: a }, Thread { width: 2, length: b }],
            padded,
        )
    }

    #[test]
    fn equal_threads_merge_at_one_depth() {
        let r = thread_blocking_check(&two(2, 2, false), 10_000).unwrap();
        // 1 + 2 moves per thread row, then the first merged move
        assert_eq!(r.frontier_depths, vec![3 * 2 + 1]);
        assert!(!r.premature_merge && !r.blocked);
    }

    #[test]
    fn unpadded_unequal_threads_block() {
        let r = thread_blocking_check(&two(1, 3, false), 10_000).unwrap();
        assert!(r.blocked);
        let r = thread_blocking_check(&two(1, 3, true), 10_000).unwrap();
        assert_eq!(r.frontier_depths, vec![3 * 3 + 1]);
    }

    #[test]
    fn without_guards_the_merge_can_start_early() {
        // the merged region's first mover pairs with the left thread only
        let mut s = ThreadScenario::new(
            vec![Thread { width: 2, length: 2 }, Thread { width: 1, length: 2 }],
            false,
        );
        assert!(!thread_blocking_check(&s, 10_000).unwrap().premature_merge);
        s.guard_merge = false;
        assert!(thread_blocking_check(&s, 10_000).unwrap().premature_merge);
    }
}
