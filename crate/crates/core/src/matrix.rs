//! Dense matrices of arbitrary-precision rationals and exact linear algebra.
//!
//! Rank and determinants run fraction-free (Bareiss) on integer rows after
//! clearing denominators, so every intermediate value is an exact minor of
//! the scaled input and all divisions are exact. Characteristic polynomials
//! use the division-free Berkowitz recurrence.

use std::fmt;

use itertools::Itertools;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::pattern::{IndexSet, PatternError};
use crate::poly::UniPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, operation requires square")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty matrix input")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("row {row}: invalid rational token `{token}`")]
    BadToken { row: usize, token: String },
    #[error("minor size {k} out of range 1..={n}")]
    MinorSize { k: usize, n: usize },
    #[error("dimension mismatch: {lr}x{lc} times {rr}x{rc}")]
    DimMismatch { lr: usize, lc: usize, rr: usize, rc: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Rectangular matrix of rationals, row-major, at least 1x1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<ExactMatrix, LinalgError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(LinalgError::Empty);
        }
        let n_cols = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(LinalgError::RaggedRow {
                    row: i + 1,
                    got: row.len(),
                    expected: n_cols,
                });
            }
            entries.extend(row);
        }
        Ok(ExactMatrix {
            n_rows: entries.len() / n_cols,
            n_cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<ExactMatrix, LinalgError> {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> ExactMatrix {
        assert!(n_rows > 0 && n_cols > 0, "matrix dimensions must be positive");
        ExactMatrix {
            n_rows,
            n_cols,
            entries: vec![BigRational::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        ExactMatrix::scalar(n, &BigRational::one())
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &BigRational) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
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

    pub fn square_order(&self) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.n_rows)
        } else {
            Err(LinalgError::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            })
        }
    }

    /// Entry at 0-based position (i, j).
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        assert!(i < self.n_rows && j < self.n_cols, "matrix index out of range");
        &self.entries[i * self.n_cols + j]
    }

    /// Sets the entry at 0-based position (i, j).
    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        assert!(i < self.n_rows && j < self.n_cols, "matrix index out of range");
        self.entries[i * self.n_cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.n_cols != rhs.n_rows {
            return Err(LinalgError::DimMismatch {
                lr: self.n_rows,
                lc: self.n_cols,
                rr: rhs.n_rows,
                rc: rhs.n_cols,
            });
        }
        let mut out = ExactMatrix::zero(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for j in 0..rhs.n_cols {
                let mut acc = BigRational::zero();
                for k in 0..self.n_cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Adds `c` to every diagonal entry.
    pub fn add_scalar_diagonal(&mut self, c: &BigRational) {
        let n = self.n_rows.min(self.n_cols);
        for i in 0..n {
            let v = self.get(i, i) + c;
            self.set(i, i, v);
        }
    }

    /// Multiplies row `i` (0-based) by `c`.
    pub fn scale_row(&mut self, i: usize, c: &BigRational) {
        for j in 0..self.n_cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    /// Submatrix on 1-based row and column sets, in their order.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<ExactMatrix, LinalgError> {
        rows.check_bound(self.n_rows).map_err(LinalgError::Pattern)?;
        cols.check_bound(self.n_cols).map_err(LinalgError::Pattern)?;
        let entries = rows
            .zero_based()
            .flat_map(|i| cols.zero_based().map(move |j| self.get(i, j).clone()))
            .collect();
        Ok(ExactMatrix {
            n_rows: rows.len(),
            n_cols: cols.len(),
            entries,
        })
    }

    /// Determinant of the submatrix on `rows` x `cols`.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<BigRational, LinalgError> {
        self.submatrix(rows, cols)?.determinant()
    }

    /// Each row scaled by the lcm of its entry denominators; the second value
    /// is the product of all row multipliers.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.n_rows)
            .map(|i| {
                let mut l = BigInt::one();
                for j in 0..self.n_cols {
                    l = l.lcm(self.get(i, j).denom());
                }
                scale *= &l;
                (0..self.n_cols)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&l / e.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let (mut rows, _) = self.integer_rows();
        bareiss_rank(&mut rows, self.n_rows, self.n_cols)
    }

    /// Exact determinant; errors on non-square input.
    pub fn determinant(&self) -> Result<BigRational, LinalgError> {
        let n = self.square_order()?;
        let (mut rows, scale) = self.integer_rows();
        let det = bareiss_determinant(&mut rows, n);
        Ok(BigRational::new(det, scale))
    }

    /// Monic characteristic polynomial `det(xI - m)` by the Berkowitz
    /// recurrence (division-free).
    pub fn char_poly(&self) -> Result<UniPoly, LinalgError> {
        let n = self.square_order()?;
        // Coefficients highest degree first; length r+2 after absorbing row r.
        let mut c = vec![BigRational::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // Toeplitz column: 1, -a_rr, -(R S), -(R A S), -(R A^2 S), ...
            // where A is the leading r x r block, R the row to its left of
            // a_rr, S the column above a_rr.
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigRational::one());
            t.push(-self.get(r, r).clone());
            let mut v: Vec<BigRational> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 2..=r + 1 {
                if k > 2 {
                    v = (0..r)
                        .map(|i| (0..r).map(|j| self.get(i, j) * &v[j]).sum())
                        .collect();
                }
                let dot: BigRational = (0..r).map(|j| self.get(r, j) * &v[j]).sum();
                t.push(-dot);
            }
            let mut next = vec![BigRational::zero(); r + 2];
            for (j, cj) in c.iter().enumerate() {
                for (d, td) in t.iter().enumerate() {
                    if j + d < r + 2 {
                        next[j + d] += td * cj;
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Ok(UniPoly::from_coeffs(c))
    }

    /// True when the matrix is diagonalizable over the complex numbers:
    /// the squarefree part of the characteristic polynomial must annihilate
    /// the matrix.
    pub fn is_diagonalizable(&self) -> Result<bool, LinalgError> {
        let p = self.char_poly()?;
        let q = p.squarefree_part().expect("characteristic polynomial is monic");
        Ok(q.eval_matrix(self)?.is_zero())
    }

    /// All k x k principal minors, index sets in lexicographic order.
    pub fn principal_minors(&self, k: usize) -> Result<Vec<(IndexSet, BigRational)>, LinalgError> {
        let n = self.square_order()?;
        if k < 1 || k > n {
            return Err(LinalgError::MinorSize { k, n });
        }
        (1..=n)
            .combinations(k)
            .map(|subset| {
                let s = IndexSet::new(subset).expect("combinations are strictly increasing");
                let det = self.minor(&s, &s)?;
                Ok((s, det))
            })
            .collect()
    }

    /// Largest k with a nonsingular k x k principal submatrix; 0 for the zero
    /// matrix. Searches k in descending order, subsets lexicographically.
    pub fn max_nonsingular_principal_size(&self) -> Result<usize, LinalgError> {
        let n = self.square_order()?;
        for k in (1..=n).rev() {
            for subset in (1..=n).combinations(k) {
                let s = IndexSet::new(subset).expect("combinations are strictly increasing");
                if !self.minor(&s, &s)?.is_zero() {
                    return Ok(k);
                }
            }
        }
        Ok(0)
    }

    /// Inverse by rational Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>, LinalgError> {
        let n = self.square_order()?;
        let mut a = self.clone();
        let mut inv = ExactMatrix::identity(n);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Ok(None);
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).recip();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in 0..n {
                    let v = a.get(i, j) - &f * a.get(col, j);
                    a.set(i, j, v);
                    let w = inv.get(i, j) - &f * inv.get(col, j);
                    inv.set(i, j, w);
                }
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.n_cols {
            self.entries.swap(i * self.n_cols + j, k * self.n_cols + j);
        }
    }

    /// Parses whitespace-separated rational tokens (`p`, `-p`, or `p/q`), one
    /// row per line; `#` lines and blank lines are ignored.
    pub fn parse(text: &str) -> Result<ExactMatrix, LinalgError> {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for line in text.lines() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let row_no = rows.len() + 1;
            let row = trimmed
                .split_whitespace()
                .map(|tok| {
                    parse_rational(tok).ok_or_else(|| LinalgError::BadToken {
                        row: row_no,
                        token: tok.to_string(),
                    })
                })
                .collect::<Result<Vec<BigRational>, LinalgError>>()?;
            rows.push(row);
        }
        ExactMatrix::from_rows(rows)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(&format_rational(self.get(i, j)))?;
            }
            if i + 1 < self.n_rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

/// `p/q` with the denominator omitted when it is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Accepts `p`, `-p`, `p/q`, `-p/q` with a positive denominator.
pub fn parse_rational(token: &str) -> Option<BigRational> {
    let (numer_text, denom_text) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let numer: BigInt = numer_text.parse().ok()?;
    let denom: BigInt = match denom_text {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if !denom.is_positive() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

fn exact_div(numer: BigInt, denom: &BigInt) -> BigInt {
    debug_assert!(!denom.is_zero());
    let (q, r) = numer.div_rem(denom);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// One-step Bareiss elimination. After k pivots every remaining entry is a
/// (k+1)-order minor of the input bordered by the pivot rows and columns, so
/// dividing by the previous pivot is exact.
fn bareiss_determinant(rows: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            rows.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j];
                rows[i][j] = exact_div(num, &prev);
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    let det = rows[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Bareiss elimination with column skipping; the pivot count is the rank.
fn bareiss_rank(rows: &mut [Vec<BigInt>], n_rows: usize, n_cols: usize) -> usize {
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(pivot) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(pivot, r);
        for i in r + 1..n_rows {
            for j in c + 1..n_cols {
                let num = &rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j];
                rows[i][j] = exact_div(num, &prev);
            }
            rows[i][c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    r
}
