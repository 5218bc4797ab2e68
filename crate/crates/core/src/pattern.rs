//! Sign patterns over `{+, -, 0}` and the built-in 9x9 pattern under study.
//!
//! Indices are 1-based in every public interface that names rows or columns
//! (index sets, blocks, certificates, file formats); raw grid accessors take
//! 0-based indices and say so.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("empty pattern input")]
    Empty,
    #[error("row {row}: unknown token `{token}` (expected +, -, 0, or 1)")]
    UnknownToken { row: usize, token: String },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("grid is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("index set must be strictly increasing and 1-based")]
    BadIndexSet,
    #[error("block needs 2 rows and 2 columns, got {rows}x{cols}")]
    BadBlockShape { rows: usize, cols: usize },
    #[error("block cell ({row},{col}) is zero; all four block cells must be nonzero")]
    ZeroBlockCell { row: usize, col: usize },
}

/// Sign of a single entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn is_nonzero(self) -> bool {
        self != Sign::Zero
    }

    fn token(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Zero => "0",
        }
    }

    fn from_token(tok: &str) -> Option<Sign> {
        match tok {
            "+" | "1" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            "0" => Some(Sign::Zero),
            _ => None,
        }
    }
}

/// Rectangular grid of signs, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignGrid {
    n_rows: usize,
    n_cols: usize,
    cells: Vec<Sign>,
}

impl SignGrid {
    pub fn from_rows(rows: Vec<Vec<Sign>>) -> Result<SignGrid, PatternError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(PatternError::Empty);
        }
        let n_cols = rows[0].len();
        let mut cells = Vec::with_capacity(rows.len() * n_cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(PatternError::RaggedRow {
                    row: i + 1,
                    got: row.len(),
                    expected: n_cols,
                });
            }
            cells.extend_from_slice(row);
        }
        Ok(SignGrid {
            n_rows: rows.len(),
            n_cols,
            cells,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Sign at 0-based position (i, j).
    pub fn get(&self, i: usize, j: usize) -> Sign {
        assert!(i < self.n_rows && j < self.n_cols, "grid index out of range");
        self.cells[i * self.n_cols + j]
    }

    /// 0-based columns of the nonzero cells in row `i` (0-based), ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n_cols).filter(|&j| self.get(i, j).is_nonzero()).collect()
    }

    /// 0-based rows of the nonzero cells in column `j` (0-based), ascending.
    pub fn col_support(&self, j: usize) -> Vec<usize> {
        (0..self.n_rows).filter(|&i| self.get(i, j).is_nonzero()).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.cells.iter().filter(|s| s.is_nonzero()).count()
    }
}

/// Square sign pattern of order >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    grid: SignGrid,
}

impl SignPattern {
    pub fn from_grid(grid: SignGrid) -> Result<SignPattern, PatternError> {
        if !grid.is_square() {
            return Err(PatternError::NotSquare {
                rows: grid.n_rows(),
                cols: grid.n_cols(),
            });
        }
        Ok(SignPattern { grid })
    }

    pub fn from_rows(rows: Vec<Vec<Sign>>) -> Result<SignPattern, PatternError> {
        SignPattern::from_grid(SignGrid::from_rows(rows)?)
    }

    /// Parses whitespace-separated sign tokens, one row per line. `1` is
    /// accepted as an alias for `+`; lines starting with `#` and blank lines
    /// are ignored.
    pub fn parse(text: &str) -> Result<SignPattern, PatternError> {
        let mut rows: Vec<Vec<Sign>> = Vec::new();
        for line in text.lines() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row_no = rows.len() + 1;
            let row = trimmed
                .split_whitespace()
                .map(|tok| {
                    Sign::from_token(tok).ok_or_else(|| PatternError::UnknownToken {
                        row: row_no,
                        token: tok.to_string(),
                    })
                })
                .collect::<Result<Vec<Sign>, PatternError>>()?;
            rows.push(row);
        }
        SignPattern::from_rows(rows)
    }

    pub fn order(&self) -> usize {
        self.grid.n_rows()
    }

    pub fn grid(&self) -> &SignGrid {
        &self.grid
    }

    /// Sign at 0-based position (i, j).
    pub fn sign(&self, i: usize, j: usize) -> Sign {
        self.grid.get(i, j)
    }

    /// True when the 0-based cell (i, j) is nonzero.
    pub fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.grid.get(i, j).is_nonzero()
    }

    pub fn nonzero_count(&self) -> usize {
        self.grid.nonzero_count()
    }

    pub fn has_minus(&self) -> bool {
        self.grid.cells.contains(&Sign::Minus)
    }

    /// Subgrid on the given 1-based row and column sets, in their order.
    pub fn subgrid(&self, rows: &IndexSet, cols: &IndexSet) -> Result<SignGrid, PatternError> {
        let n = self.order();
        rows.check_bound(n)?;
        cols.check_bound(n)?;
        if rows.is_empty() || cols.is_empty() {
            return Err(PatternError::Empty);
        }
        let cells = rows
            .zero_based()
            .flat_map(|i| cols.zero_based().map(move |j| (i, j)))
            .map(|(i, j)| self.grid.get(i, j))
            .collect();
        Ok(SignGrid {
            n_rows: rows.len(),
            n_cols: cols.len(),
            cells,
        })
    }
}

impl FromStr for SignPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<SignPattern, PatternError> {
        SignPattern::parse(s)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(self.sign(i, j).token())?;
            }
            if i + 1 < n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// Strictly increasing set of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<IndexSet, PatternError> {
        if indices.is_empty() || indices[0] == 0 {
            return Err(PatternError::BadIndexSet);
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PatternError::BadIndexSet);
        }
        Ok(IndexSet(indices))
    }

    pub fn from_slice(indices: &[usize]) -> Result<IndexSet, PatternError> {
        IndexSet::new(indices.to_vec())
    }

    /// `{1, 2, ..., n}`.
    pub fn full(n: usize) -> IndexSet {
        IndexSet((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based index at position `pos` (0-based).
    pub fn get(&self, pos: usize) -> usize {
        self.0[pos]
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn contains_all(&self, other: &IndexSet) -> bool {
        other.iter().all(|i| self.contains(i))
    }

    /// 1-based indices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Same indices shifted down by one, for raw grid access.
    pub fn zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|i| i - 1)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn check_bound(&self, bound: usize) -> Result<(), PatternError> {
        match self.0.last() {
            Some(&max) if max > bound => Err(PatternError::IndexOutOfRange { index: max, bound }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// 2x2 submatrix position given by two rows and two columns, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub rows: IndexSet,
    pub cols: IndexSet,
}

impl Block {
    pub fn new(rows: IndexSet, cols: IndexSet) -> Result<Block, PatternError> {
        if rows.len() != 2 || cols.len() != 2 {
            return Err(PatternError::BadBlockShape {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        Ok(Block { rows, cols })
    }

    /// Principal block on rows and columns `{i, j}`, `i < j`.
    pub fn principal(i: usize, j: usize) -> Block {
        let set = IndexSet::new(vec![i, j]).expect("principal block indices must increase");
        Block {
            rows: set.clone(),
            cols: set,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.rows == self.cols
    }

    /// Checks bounds and that all four cells of `p` under the block are nonzero.
    pub fn validate_in(&self, p: &SignPattern) -> Result<(), PatternError> {
        let n = p.order();
        self.rows.check_bound(n)?;
        self.cols.check_bound(n)?;
        for i in self.rows.iter() {
            for j in self.cols.iter() {
                if !p.is_nonzero(i - 1, j - 1) {
                    return Err(PatternError::ZeroBlockCell { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// 1-based column supports of the built-in 9x9 pattern, one row at a time.
const BUILTIN_ROW_SUPPORTS: [&[usize]; 9] = [
    &[1, 2, 5],
    &[1, 2],
    &[3, 4, 5],
    &[3, 4],
    &[5, 7, 9],
    &[6, 7],
    &[6, 7],
    &[8, 9],
    &[8, 9],
];

/// The 9x9 all-`+` pattern under study: 21 nonzero cells, nonzero diagonal.
pub fn builtin_pattern() -> SignPattern {
    let rows = BUILTIN_ROW_SUPPORTS
        .iter()
        .map(|support| {
            (1..=9)
                .map(|j| if support.contains(&j) { Sign::Plus } else { Sign::Zero })
                .collect()
        })
        .collect();
    SignPattern::from_rows(rows).expect("built-in pattern is square")
}

/// The four distinguished principal 2x2 blocks of [`builtin_pattern`], in
/// ascending row order.
pub fn builtin_blocks() -> Vec<Block> {
    [(1, 2), (3, 4), (6, 7), (8, 9)]
        .into_iter()
        .map(|(i, j)| Block::principal(i, j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[usize]) -> IndexSet {
        IndexSet::from_slice(v).unwrap()
    }

    #[test]
    fn parse_small_pattern() {
        let p = SignPattern::parse("+ 0\n+ +").unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(p.sign(0, 0), Sign::Plus);
        assert_eq!(p.sign(0, 1), Sign::Zero);
        assert_eq!(p.sign(1, 0), Sign::Plus);
        assert_eq!(p.sign(1, 1), Sign::Plus);
    }

    #[test]
    fn parse_accepts_one_as_plus_and_comments() {
        let text = "# order 2\n\n1 -\n0 1\n";
        let p = SignPattern::parse(text).unwrap();
        assert_eq!(p.sign(0, 0), Sign::Plus);
        assert_eq!(p.sign(0, 1), Sign::Minus);
        assert_eq!(p.sign(1, 0), Sign::Zero);
        assert_eq!(p.sign(1, 1), Sign::Plus);
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        let err = SignPattern::parse("+ +\n+").unwrap_err();
        assert_eq!(
            err,
            PatternError::RaggedRow {
                row: 2,
                got: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn parse_rejects_non_square() {
        let err = SignPattern::parse("+ + +\n0 0 0").unwrap_err();
        assert_eq!(err, PatternError::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn parse_rejects_unknown_token_and_empty() {
        let err = SignPattern::parse("+ x\n+ +").unwrap_err();
        assert_eq!(
            err,
            PatternError::UnknownToken {
                row: 1,
                token: "x".to_string()
            }
        );
        assert_eq!(SignPattern::parse("# nothing\n\n").unwrap_err(), PatternError::Empty);
    }

    #[test]
    fn display_round_trips() {
        let p = SignPattern::parse("+ -\n0 +").unwrap();
        let text = p.to_string();
        assert_eq!(text, "+ -\n0 +");
        assert_eq!(SignPattern::parse(&text).unwrap(), p);
    }

    #[test]
    fn builtin_pattern_matches_published_grid() {
        // Transcription of the displayed 9x9 matrix, ones marking nonzeros.
        let text = "\
1 1 0 0 1 0 0 0 0
1 1 0 0 0 0 0 0 0
0 0 1 1 1 0 0 0 0
0 0 1 1 0 0 0 0 0
0 0 0 0 1 0 1 0 1
0 0 0 0 0 1 1 0 0
0 0 0 0 0 1 1 0 0
0 0 0 0 0 0 0 1 1
0 0 0 0 0 0 0 1 1";
        let transcribed = SignPattern::parse(text).unwrap();
        assert_eq!(builtin_pattern(), transcribed);
        assert_eq!(transcribed.nonzero_count(), 21);
    }

    #[test]
    fn builtin_pattern_has_nonzero_diagonal() {
        let p = builtin_pattern();
        for i in 0..9 {
            assert!(p.is_nonzero(i, i), "diagonal cell ({},{}) is zero", i + 1, i + 1);
        }
    }

    #[test]
    fn builtin_blocks_are_valid_and_disjoint() {
        let p = builtin_pattern();
        let blocks = builtin_blocks();
        assert_eq!(blocks.len(), 4);
        let mut seen = Vec::new();
        for b in &blocks {
            assert!(b.is_principal());
            b.validate_in(&p).unwrap();
            seen.extend(b.rows.iter());
        }
        seen.sort_unstable();
        assert_eq!(seen, vec![1, 2, 3, 4, 6, 7, 8, 9]);
    }

    #[test]
    fn subgrid_extracts_blocks_and_cells() {
        let p = builtin_pattern();
        let block = p.subgrid(&idx(&[1, 2]), &idx(&[1, 2])).unwrap();
        assert_eq!(block.nonzero_count(), 4);

        let cell = p.subgrid(&idx(&[5]), &idx(&[6])).unwrap();
        assert_eq!(cell.get(0, 0), Sign::Zero);

        let full = p.subgrid(&IndexSet::full(9), &IndexSet::full(9)).unwrap();
        assert_eq!(&full, p.grid());
    }

    #[test]
    fn subgrid_checks_bounds() {
        let p = builtin_pattern();
        let err = p.subgrid(&idx(&[1, 10]), &idx(&[1, 2])).unwrap_err();
        assert_eq!(err, PatternError::IndexOutOfRange { index: 10, bound: 9 });
    }

    #[test]
    fn index_set_rejects_bad_input() {
        assert_eq!(IndexSet::new(vec![]).unwrap_err(), PatternError::BadIndexSet);
        assert_eq!(IndexSet::new(vec![0, 1]).unwrap_err(), PatternError::BadIndexSet);
        assert_eq!(IndexSet::new(vec![2, 2]).unwrap_err(), PatternError::BadIndexSet);
        assert_eq!(IndexSet::new(vec![3, 1]).unwrap_err(), PatternError::BadIndexSet);
    }

    #[test]
    fn block_validation_catches_zero_cells() {
        let p = builtin_pattern();
        let bad = Block::principal(5, 6);
        assert_eq!(
            bad.validate_in(&p).unwrap_err(),
            PatternError::ZeroBlockCell { row: 5, col: 6 }
        );
    }

    #[test]
    fn index_set_display_is_braced() {
        assert_eq!(idx(&[1, 3, 5]).to_string(), "{1,3,5}");
    }
}
