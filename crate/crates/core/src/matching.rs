//! Bipartite matching on the nonzero cells of a sign grid.
//!
//! Rows form the left side, columns the right; an edge means the cell is
//! nonzero. Term rank is the maximum matching size. The bounded enumerator
//! counts perfect matchings of a square grid up to a cap, which is how
//! unique-matching certificates are detected.

use crate::pattern::{SignGrid, SignPattern};

/// Maximum number of nonzero cells, no two sharing a row or column.
pub fn term_rank(p: &SignPattern) -> usize {
    max_matching_size(p.grid())
}

/// Maximum bipartite matching size via Kuhn's augmenting paths.
pub fn max_matching_size(grid: &SignGrid) -> usize {
    let supports: Vec<Vec<usize>> = (0..grid.n_rows()).map(|i| grid.row_support(i)).collect();
    let mut col_row: Vec<Option<usize>> = vec![None; grid.n_cols()];
    let mut size = 0;
    for r in 0..supports.len() {
        let mut seen = vec![false; grid.n_cols()];
        if augment(r, &supports, &mut seen, &mut col_row) {
            size += 1;
        }
    }
    size
}

fn augment(r: usize, supports: &[Vec<usize>], seen: &mut [bool], col_row: &mut [Option<usize>]) -> bool {
    for &c in &supports[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if col_row[c].is_none() || augment(col_row[c].unwrap(), supports, seen, col_row) {
            col_row[c] = Some(r);
            return true;
        }
    }
    false
}

/// Result of bounded perfect-matching enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCount {
    /// Number of perfect matchings found, capped.
    pub count: usize,
    /// First matching in search order: `matching[row] = col`, 0-based within
    /// the grid. Present whenever `count > 0`.
    pub matching: Option<Vec<usize>>,
}

/// Counts perfect matchings of a square grid, stopping at `cap`. Forced edges
/// (a row or column with a single remaining choice) are propagated before
/// branching, and branches explore the lowest-index sparsest row with columns
/// ascending, so the example matching is deterministic.
pub fn count_matchings(grid: &SignGrid, cap: usize) -> MatchingCount {
    assert!(grid.is_square(), "perfect matchings need a square grid");
    assert!(cap >= 1, "cap must be at least 1");
    let n = grid.n_rows();
    let rows: Vec<Vec<usize>> = (0..n).map(|i| grid.row_support(i)).collect();
    let cols: Vec<Vec<usize>> = (0..n).map(|j| grid.col_support(j)).collect();
    let mut search = Search {
        rows: &rows,
        cols: &cols,
        cap,
        count: 0,
        example: None,
    };
    search.explore(State {
        row_col: vec![None; n],
        col_used: vec![false; n],
        unassigned: n,
    });
    MatchingCount {
        count: search.count,
        matching: search.example,
    }
}

#[derive(Clone)]
struct State {
    row_col: Vec<Option<usize>>,
    col_used: Vec<bool>,
    unassigned: usize,
}

impl State {
    fn assign(&mut self, r: usize, c: usize) {
        debug_assert!(self.row_col[r].is_none() && !self.col_used[c]);
        self.row_col[r] = Some(c);
        self.col_used[c] = true;
        self.unassigned -= 1;
    }
}

struct Search<'a> {
    rows: &'a [Vec<usize>],
    cols: &'a [Vec<usize>],
    cap: usize,
    count: usize,
    example: Option<Vec<usize>>,
}

impl Search<'_> {
    fn explore(&mut self, mut st: State) {
        if self.count >= self.cap {
            return;
        }
        // Forced-edge propagation: any row or column down to one choice is
        // committed; a row or column with no choice kills the branch.
        loop {
            let mut changed = false;
            for r in 0..self.rows.len() {
                if st.row_col[r].is_some() {
                    continue;
                }
                let mut avail = self.rows[r].iter().filter(|&&c| !st.col_used[c]);
                match (avail.next(), avail.next()) {
                    (None, _) => return,
                    (Some(&c), None) => {
                        st.assign(r, c);
                        changed = true;
                    }
                    _ => {}
                }
            }
            for c in 0..self.cols.len() {
                if st.col_used[c] {
                    continue;
                }
                let mut avail = self.cols[c].iter().filter(|&&r| st.row_col[r].is_none());
                match (avail.next(), avail.next()) {
                    (None, _) => return,
                    (Some(&r), None) => {
                        st.assign(r, c);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if st.unassigned == 0 {
            self.count += 1;
            if self.example.is_none() {
                self.example = Some(st.row_col.iter().map(|c| c.unwrap()).collect());
            }
            return;
        }
        // Branch on the unassigned row with fewest remaining columns.
        let branch = (0..self.rows.len())
            .filter(|&r| st.row_col[r].is_none())
            .min_by_key(|&r| self.rows[r].iter().filter(|&&c| !st.col_used[c]).count())
            .expect("some row is unassigned");
        let choices: Vec<usize> = self.rows[branch]
            .iter()
            .copied()
            .filter(|&c| !st.col_used[c])
            .collect();
        for c in choices {
            if self.count >= self.cap {
                return;
            }
            let mut next = st.clone();
            next.assign(branch, c);
            self.explore(next);
        }
    }
}
