//! Reference implementations used to cross-check the library.
//!
//! Everything here recomputes results by the most literal textbook method
//! available and shares no code path with the implementation under test:
//! determinants by cofactor expansion, rank by plain Gauss-Jordan,
//! characteristic polynomials by the Faddeev-LeVerrier trace recursion, and
//! matchings by walking all permutations.

// not every test target uses every oracle
#![allow(dead_code)]

use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use signrank::matrix::ExactMatrix;
use signrank::pattern::SignGrid;
use signrank::poly::UniPoly;

/// Determinant by first-row cofactor expansion.
pub fn laplace_det(m: &ExactMatrix) -> BigRational {
    assert_eq!(m.n_rows(), m.n_cols(), "determinant oracle needs a square matrix");
    let all: Vec<usize> = (0..m.n_rows()).collect();
    laplace_rec(m, &all, &all)
}

fn laplace_rec(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut acc = BigRational::zero();
    let rest = &rows[1..];
    for (pos, &c) in cols.iter().enumerate() {
        let a = m.get(rows[0], c);
        if a.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a * laplace_rec(m, rest, &sub_cols);
        if pos % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Rank by plain rational Gauss-Jordan elimination.
pub fn rref_rank(m: &ExactMatrix) -> usize {
    let (nr, nc) = (m.n_rows(), m.n_cols());
    let mut a: Vec<Vec<BigRational>> = (0..nr)
        .map(|i| (0..nc).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..nc {
        let Some(pivot) = (rank..nr).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].clone().recip();
        for x in &mut a[rank] {
            *x *= &inv;
        }
        for r in 0..nr {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let scaled: Vec<BigRational> = a[rank].iter().map(|x| x * &f).collect();
                for (x, s) in a[r].iter_mut().zip(scaled) {
                    *x -= s;
                }
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Characteristic polynomial of det(xI - A) by the Faddeev-LeVerrier
/// recursion: M_k = A M_{k-1} + c_{n-k+1} I and c_{n-k} = -tr(A M_k) / k.
pub fn faddeev_leverrier(m: &ExactMatrix) -> UniPoly {
    assert_eq!(m.n_rows(), m.n_cols(), "characteristic polynomial oracle needs a square matrix");
    let n = m.n_rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = ExactMatrix::zero(n, n);
    let mut last_c = BigRational::one();
    for k in 1..=n {
        mk = m.mul(&mk).expect("square times square");
        mk.add_scalar_diagonal(&last_c);
        let am = m.mul(&mk).expect("square times square");
        let t: BigRational = (0..n).map(|i| am.get(i, i).clone()).sum();
        last_c = -t / BigRational::from_integer(BigInt::from(k));
        coeffs[n - k] = last_c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

/// Counts permutations whose matrix cells are all nonzero, walking the full
/// symmetric group; also returns the lexicographically first one found.
pub fn brute_force_matchings(grid: &SignGrid) -> (usize, Option<Vec<usize>>) {
    assert_eq!(grid.n_rows(), grid.n_cols(), "matching oracle needs a square grid");
    let n = grid.n_rows();
    let mut count = 0;
    let mut first: Option<Vec<usize>> = None;
    for perm in (0..n).permutations(n) {
        if (0..n).all(|i| grid.get(i, perm[i]).is_nonzero()) {
            count += 1;
            if first.is_none() {
                first = Some(perm);
            }
        }
    }
    (count, first)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational with numerator in -bound..=bound and denominator in
/// 1..=bound; roughly a fifth of the entries come out zero.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=bound);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n_rows: usize, n_cols: usize, bound: i64) -> ExactMatrix {
    let rows: Vec<Vec<BigRational>> = (0..n_rows)
        .map(|_| (0..n_cols).map(|_| random_rational(rng, bound)).collect())
        .collect();
    ExactMatrix::from_rows(rows).expect("generated rows are rectangular and nonempty")
}
