//! Certificates that hold for every realization of a pattern.
//!
//! A unique-matching (monomial) minor certificate pins a k x k submatrix
//! whose determinant is a single signed monomial in nonzero entries, forcing
//! rank >= k on the whole sign class. A block-pivot certificate factors an
//! ambient minor as +-(2x2 block determinant) times a monomial, so any
//! realization with that block nonsingular has rank >= ambient. Confinement
//! and pigeonhole covers are the supporting combinatorial facts.

use itertools::Itertools;
use num::{BigRational, One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matching::{count_matchings, term_rank};
use crate::matrix::{ExactMatrix, LinalgError};
use crate::pattern::{Block, IndexSet, PatternError, SignPattern};
use crate::symbolic::{symbolic_minor, Monomial, SparsePoly, SymbolicError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("ambient size {ambient} out of range 3..={order}")]
    AmbientOutOfRange { ambient: usize, order: usize },
    #[error("pigeonhole blocks must be principal")]
    NonPrincipalBlock,
    #[error("pigeonhole blocks must be pairwise disjoint")]
    OverlappingBlocks,
    #[error("subset size {k} out of range 1..={n}")]
    SubsetSize { k: usize, n: usize },
}

/// A k x k subpattern with a unique perfect matching on its nonzero cells.
/// For every realization the minor on `rows` x `cols` equals `sign` times the
/// product of the matched entries, which are all nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMinorCertificate {
    pub rows: IndexSet,
    pub cols: IndexSet,
    /// The unique matching as 1-based `(row, col)` pairs, ascending by row.
    pub matching: Vec<(usize, usize)>,
    /// Parity of the matching as a permutation: +1 or -1.
    pub sign: i8,
}

impl MonomialMinorCertificate {
    /// Value the certificate predicts for the minor of `m` on `rows` x `cols`.
    pub fn predicted_minor(&self, m: &ExactMatrix) -> BigRational {
        let prod: BigRational = self
            .matching
            .iter()
            .map(|&(i, j)| m.get(i - 1, j - 1))
            .product();
        if self.sign < 0 {
            -prod
        } else {
            prod
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

/// An ambient minor that factors as `sign * det(block) * monomial`. Whenever
/// a realization keeps the block nonsingular, the ambient minor is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPivotCertificate {
    pub block: Block,
    pub rows: IndexSet,
    pub cols: IndexSet,
    /// Cofactor monomial positions, 1-based, ascending.
    pub monomial: Vec<(usize, usize)>,
    pub sign: i8,
}

impl BlockPivotCertificate {
    /// Value the certificate predicts for the minor of `m` on `rows` x `cols`.
    pub fn predicted_minor(&self, m: &ExactMatrix) -> Result<BigRational, LinalgError> {
        let block_det = m.minor(&self.block.rows, &self.block.cols)?;
        let prod: BigRational = self
            .monomial
            .iter()
            .map(|&(i, j)| m.get(i - 1, j - 1))
            .product();
        let v = block_det * prod;
        Ok(if self.sign < 0 { -v } else { v })
    }

    pub fn ambient(&self) -> usize {
        self.rows.len()
    }
}

/// Serialization wrapper tagging certificates by kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    MonomialMinor(MonomialMinorCertificate),
    BlockPivot(BlockPivotCertificate),
}

/// Which lines of a block stay inside it in the full pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confinement {
    /// Both block rows are zero outside the block columns.
    RowsConfined,
    /// Both block columns are zero outside the block rows.
    ColsConfined,
    Both,
    None,
}

/// Largest k with a k x k subpattern whose nonzero cells carry a unique
/// perfect matching, plus the first certificate in search order: k descends
/// from the term rank, row subsets then column subsets lexicographic.
pub fn monomial_minor_bound(p: &SignPattern) -> (usize, Option<MonomialMinorCertificate>) {
    let n = p.order();
    let tr = term_rank(p);
    for k in (1..=tr).rev() {
        for rows in (1..=n).combinations(k) {
            let rows = IndexSet::new(rows).expect("combinations are strictly increasing");
            for cols in (1..=n).combinations(k) {
                let cols = IndexSet::new(cols).expect("combinations are strictly increasing");
                let grid = p.subgrid(&rows, &cols).expect("subsets are in range");
                let mc = count_matchings(&grid, 2);
                if mc.count != 1 {
                    continue;
                }
                let local = mc.matching.expect("a matching was counted");
                let matching: Vec<(usize, usize)> = local
                    .iter()
                    .enumerate()
                    .map(|(r, &c)| (rows.get(r), cols.get(c)))
                    .collect();
                let sign = permutation_sign(&local);
                return (k, Some(MonomialMinorCertificate { rows, cols, matching, sign }));
            }
        }
    }
    (0, None)
}

/// Parity of a permutation given as `perm[i] = image`, by inversion count.
fn permutation_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Searches ambient-sized supersets of the block (lexicographic rows, then
/// columns) for a minor that is syntactically `sign * det(block) * monomial`.
/// Ambient sizes outside `3..=order` are rejected; sizes above the symbolic
/// expansion limit propagate its error.
pub fn block_pivot_certificate(
    p: &SignPattern,
    block: &Block,
    ambient: usize,
) -> Result<Option<BlockPivotCertificate>, CertifyError> {
    block.validate_in(p)?;
    let n = p.order();
    if ambient < 3 || ambient > n {
        return Err(CertifyError::AmbientOutOfRange { ambient, order: n });
    }
    for rows in (1..=n).combinations(ambient) {
        let rows = IndexSet::new(rows).expect("combinations are strictly increasing");
        if !rows.contains_all(&block.rows) {
            continue;
        }
        for cols in (1..=n).combinations(ambient) {
            let cols = IndexSet::new(cols).expect("combinations are strictly increasing");
            if !cols.contains_all(&block.cols) {
                continue;
            }
            let minor = symbolic_minor(p, &rows, &cols)?;
            if let Some((cofactor, sign)) = split_block_factor(&minor, block) {
                return Ok(Some(BlockPivotCertificate {
                    block: block.clone(),
                    rows,
                    cols,
                    monomial: cofactor.positions().to_vec(),
                    sign,
                }));
            }
        }
    }
    Ok(None)
}

/// Recognizes `sign * (x[r1,c1] x[r2,c2] - x[r1,c2] x[r2,c1]) * M` from the
/// two-term shape of the polynomial.
fn split_block_factor(minor: &SparsePoly, block: &Block) -> Option<(Monomial, i8)> {
    if minor.num_terms() != 2 {
        return None;
    }
    let terms: Vec<_> = minor.terms().collect();
    let (r1, r2) = (block.rows.get(0), block.rows.get(1));
    let (c1, c2) = (block.cols.get(0), block.cols.get(1));
    let diag = Monomial::from_positions(vec![(r1, c1), (r2, c2)]);
    let anti = Monomial::from_positions(vec![(r1, c2), (r2, c1)]);
    let check = |d_term: usize, a_term: usize| -> Option<(Monomial, i8)> {
        let (d_mon, d_coeff) = terms[d_term];
        let (a_mon, a_coeff) = terms[a_term];
        let q_d = d_mon.div(&diag)?;
        let q_a = a_mon.div(&anti)?;
        if q_d != q_a || !d_coeff.abs().is_one() || *d_coeff != -a_coeff {
            return None;
        }
        let sign = if d_coeff.is_negative() { -1 } else { 1 };
        Some((q_d, sign))
    };
    check(0, 1).or_else(|| check(1, 0))
}

/// Whether the block's rows and/or columns are supported entirely inside it.
pub fn collinearity_confinement(p: &SignPattern, block: &Block) -> Result<Confinement, CertifyError> {
    block.validate_in(p)?;
    let n = p.order();
    let rows_confined = block.rows.zero_based().all(|i| {
        (0..n).all(|j| !p.is_nonzero(i, j) || block.cols.contains(j + 1))
    });
    let cols_confined = block.cols.zero_based().all(|j| {
        (0..n).all(|i| !p.is_nonzero(i, j) || block.rows.contains(i + 1))
    });
    Ok(match (rows_confined, cols_confined) {
        (true, true) => Confinement::Both,
        (true, false) => Confinement::RowsConfined,
        (false, true) => Confinement::ColsConfined,
        (false, false) => Confinement::None,
    })
}

/// First k-subset of `{1..n}` (lexicographic) containing no block in full,
/// or `None` when every k-subset covers some block.
pub fn pigeonhole_counterexample(
    n: usize,
    blocks: &[Block],
    k: usize,
) -> Result<Option<IndexSet>, CertifyError> {
    if k < 1 || k > n {
        return Err(CertifyError::SubsetSize { k, n });
    }
    let mut used = vec![false; n + 1];
    for b in blocks {
        if !b.is_principal() {
            return Err(CertifyError::NonPrincipalBlock);
        }
        b.rows.check_bound(n).map_err(CertifyError::Pattern)?;
        for i in b.rows.iter() {
            if used[i] {
                return Err(CertifyError::OverlappingBlocks);
            }
            used[i] = true;
        }
    }
    for subset in (1..=n).combinations(k) {
        let s = IndexSet::new(subset).expect("combinations are strictly increasing");
        let covered = blocks.iter().any(|b| s.contains_all(&b.rows));
        if !covered {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// True when every k-subset of `{1..n}` contains some block in full.
pub fn pigeonhole_cover(n: usize, blocks: &[Block], k: usize) -> Result<bool, CertifyError> {
    Ok(pigeonhole_counterexample(n, blocks, k)?.is_none())
}
