//! Minors of a generic realization as sparse polynomials in entry variables.
//!
//! The variable `x[i,j]` stands for the (i, j) entry of an arbitrary
//! realization, with 1-based positions of the full pattern, so a symbolic
//! minor can be evaluated directly against any full-size matrix.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::pattern::{IndexSet, PatternError, SignPattern};

/// Expansion guard: minors above this order are refused.
pub const MAX_SYMBOLIC_ORDER: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("row set has {rows} indices but column set has {cols}")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("symbolic minor of order {size} exceeds the limit {max}")]
    SizeLimit { size: usize, max: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Product of entry variables, stored as a sorted multiset of 1-based
/// positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<(usize, usize)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(i: usize, j: usize) -> Monomial {
        Monomial(vec![(i, j)])
    }

    pub fn from_positions(mut positions: Vec<(usize, usize)>) -> Monomial {
        positions.sort_unstable();
        Monomial(positions)
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul_var(&self, pos: (usize, usize)) -> Monomial {
        let at = self.0.partition_point(|p| *p < pos);
        let mut out = self.0.clone();
        out.insert(at, pos);
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        out.sort_unstable();
        Monomial(out)
    }

    /// Multiset quotient; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut rest = self.0.clone();
        for pos in &other.0 {
            let at = rest.iter().position(|p| p == pos)?;
            rest.remove(at);
        }
        Some(Monomial(rest))
    }

    /// Product of the matrix entries at the stored positions.
    pub fn eval(&self, m: &ExactMatrix) -> BigRational {
        let mut acc = BigRational::one();
        for &(i, j) in &self.0 {
            acc *= m.get(i - 1, j - 1);
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (i, j)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x[{i},{j}]")?;
        }
        Ok(())
    }
}

/// Integer-coefficient polynomial in entry variables, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> SparsePoly {
        SparsePoly::default()
    }

    pub fn one() -> SparsePoly {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::one(), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mon: Monomial, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The single term, when the polynomial is a monomial times a coefficient.
    pub fn single_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Substitutes 1-based entries of `m` for the variables.
    pub fn eval(&self, m: &ExactMatrix) -> BigRational {
        let mut acc = BigRational::from_integer(0.into());
        for (mon, coeff) in &self.terms {
            acc += BigRational::from_integer(coeff.clone()) * mon.eval(m);
        }
        acc
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (mon, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            if k == 0 {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else if coeff.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{mon}")?;
        }
        Ok(())
    }
}

/// Determinant of the generic realization restricted to `rows` x `cols`,
/// expanded by cofactors along the sparsest line. Orders above
/// [`MAX_SYMBOLIC_ORDER`] are refused.
pub fn symbolic_minor(
    p: &SignPattern,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<SparsePoly, SymbolicError> {
    if rows.len() != cols.len() {
        return Err(SymbolicError::SizeMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    if rows.len() > MAX_SYMBOLIC_ORDER {
        return Err(SymbolicError::SizeLimit {
            size: rows.len(),
            max: MAX_SYMBOLIC_ORDER,
        });
    }
    rows.check_bound(p.order())?;
    cols.check_bound(p.order())?;
    let r: Vec<usize> = rows.zero_based().collect();
    let c: Vec<usize> = cols.zero_based().collect();
    Ok(expand(p, &r, &c))
}

fn expand(p: &SignPattern, rows: &[usize], cols: &[usize]) -> SparsePoly {
    if rows.is_empty() {
        return SparsePoly::one();
    }
    // Pick the row or column with the fewest nonzero cells; rows win ties.
    let row_best = rows
        .iter()
        .enumerate()
        .map(|(pos, &i)| (cols.iter().filter(|&&j| p.is_nonzero(i, j)).count(), pos))
        .min()
        .unwrap();
    let col_best = cols
        .iter()
        .enumerate()
        .map(|(pos, &j)| (rows.iter().filter(|&&i| p.is_nonzero(i, j)).count(), pos))
        .min()
        .unwrap();
    if row_best.0 == 0 || col_best.0 == 0 {
        return SparsePoly::zero();
    }
    let mut acc = SparsePoly::zero();
    if row_best.0 <= col_best.0 {
        let pos = row_best.1;
        let i = rows[pos];
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&r| r != i).collect();
        for (cpos, &j) in cols.iter().enumerate() {
            if !p.is_nonzero(i, j) {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            accumulate(&mut acc, expand(p, &sub_rows, &sub_cols), (i + 1, j + 1), (pos + cpos) % 2 == 1);
        }
    } else {
        let pos = col_best.1;
        let j = cols[pos];
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        for (rpos, &i) in rows.iter().enumerate() {
            if !p.is_nonzero(i, j) {
                continue;
            }
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&r| r != i).collect();
            accumulate(&mut acc, expand(p, &sub_rows, &sub_cols), (i + 1, j + 1), (rpos + pos) % 2 == 1);
        }
    }
    acc
}

fn accumulate(acc: &mut SparsePoly, sub: SparsePoly, var: (usize, usize), negate: bool) {
    for (mon, coeff) in sub.terms {
        let c = if negate { -coeff } else { coeff };
        acc.add_term(mon.mul_var(var), c);
    }
}
