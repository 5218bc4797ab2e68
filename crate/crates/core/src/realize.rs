//! Exact rational realizations of sign patterns.
//!
//! Sampling is deterministic: ChaCha8 seeded from the configured 64-bit seed,
//! entries drawn row-major as numerator/denominator pairs uniform in
//! `[1, magnitude]`. Multi-trial callers reseed per trial with
//! `seed.wrapping_add(trial)`.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::pattern::{builtin_blocks, builtin_pattern, Sign, SignPattern};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("pattern has a minus cell at ({row},{col}); all-ones needs a nonnegative pattern")]
    MinusCell { row: usize, col: usize },
    #[error("entry ({row},{col}) does not match the pattern sign")]
    SignMismatch { row: usize, col: usize },
    #[error("matrix shape differs from the pattern order {order}")]
    ShapeMismatch { order: usize },
    #[error("operation is specific to the built-in 9x9 pattern")]
    NotBuiltinPattern,
    #[error("forced-singular-block sample has rank {found}, expected {expected}")]
    RankAssertion { expected: usize, found: usize },
    #[error("no invertible basis found in {attempts} attempts")]
    NoInvertibleBasis { attempts: usize },
    #[error("eigenvalue list length {got} out of range 1..={max}")]
    EigenvalueCount { got: usize, max: usize },
    #[error("sample magnitude must be at least 1")]
    ZeroMagnitude,
    #[error("at least one trial is required")]
    ZeroTrials,
}

/// A matrix together with the pattern it realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub pattern: SignPattern,
    pub matrix: ExactMatrix,
}

impl Realization {
    /// Checks that every entry has exactly the sign the pattern demands.
    pub fn validate(&self) -> Result<(), RealizeError> {
        let n = self.pattern.order();
        if self.matrix.n_rows() != n || self.matrix.n_cols() != n {
            return Err(RealizeError::ShapeMismatch { order: n });
        }
        for i in 0..n {
            for j in 0..n {
                let e = self.matrix.get(i, j);
                let ok = match self.pattern.sign(i, j) {
                    Sign::Plus => e.is_positive(),
                    Sign::Minus => e.is_negative(),
                    Sign::Zero => e.is_zero(),
                };
                if !ok {
                    return Err(RealizeError::SignMismatch { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(())
    }
}

/// Seeded sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    /// Numerators and denominators are drawn from `[1, magnitude]`.
    pub magnitude: u32,
    pub trials: u32,
}

impl SampleConfig {
    pub fn new(seed: u64, magnitude: u32, trials: u32) -> Result<SampleConfig, RealizeError> {
        if magnitude < 1 {
            return Err(RealizeError::ZeroMagnitude);
        }
        Ok(SampleConfig { seed, magnitude, trials })
    }

    /// Same configuration reseeded for one trial: `seed + trial`, wrapping.
    pub fn for_trial(&self, trial: u32) -> SampleConfig {
        SampleConfig {
            seed: self.seed.wrapping_add(u64::from(trial)),
            ..*self
        }
    }
}

impl Default for SampleConfig {
    fn default() -> SampleConfig {
        SampleConfig {
            seed: 0,
            magnitude: 10,
            trials: 100,
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive rational with numerator and denominator uniform in `[1, m]`,
/// numerator drawn first.
fn random_positive_rational(rng: &mut ChaCha8Rng, m: u32) -> BigRational {
    let numer = rng.gen_range(1..=u64::from(m));
    let denom = rng.gen_range(1..=u64::from(m));
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Realization with every nonzero cell set to 1. Errors if the pattern has a
/// minus cell.
pub fn all_ones_realization(p: &SignPattern) -> Result<Realization, RealizeError> {
    let n = p.order();
    let mut m = ExactMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            match p.sign(i, j) {
                Sign::Plus => m.set(i, j, BigRational::one()),
                Sign::Minus => return Err(RealizeError::MinusCell { row: i + 1, col: j + 1 }),
                Sign::Zero => {}
            }
        }
    }
    Ok(Realization {
        pattern: p.clone(),
        matrix: m,
    })
}

/// Seeded random realization: nonzero cells get `+-numer/denom` with both
/// parts uniform in `[1, magnitude]`, drawn row-major.
pub fn sample_realization(p: &SignPattern, cfg: &SampleConfig) -> Realization {
    let mut rng = rng_for(cfg.seed);
    sample_with_rng(p, cfg.magnitude, &mut rng)
}

fn sample_with_rng(p: &SignPattern, magnitude: u32, rng: &mut ChaCha8Rng) -> Realization {
    let n = p.order();
    let mut m = ExactMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            match p.sign(i, j) {
                Sign::Zero => {}
                Sign::Plus => m.set(i, j, random_positive_rational(rng, magnitude)),
                Sign::Minus => m.set(i, j, -random_positive_rational(rng, magnitude)),
            }
        }
    }
    Realization {
        pattern: p.clone(),
        matrix: m,
    }
}

/// Minimum-rank witness for the built-in pattern: sample every nonzero cell,
/// then overwrite the second row of each 2x2 block (within its columns) with
/// a random positive multiple of the first, making all four blocks singular.
/// The resulting rank is checked to be exactly 6.
pub fn sample_min_rank_realization(
    p: &SignPattern,
    cfg: &SampleConfig,
) -> Result<Realization, RealizeError> {
    if *p != builtin_pattern() {
        return Err(RealizeError::NotBuiltinPattern);
    }
    let mut rng = rng_for(cfg.seed);
    let mut real = sample_with_rng(p, cfg.magnitude, &mut rng);
    for block in builtin_blocks() {
        let t = random_positive_rational(&mut rng, cfg.magnitude);
        let r1 = block.rows.get(0) - 1;
        let r2 = block.rows.get(1) - 1;
        for j in block.cols.zero_based() {
            let scaled = real.matrix.get(r1, j) * &t;
            real.matrix.set(r2, j, scaled);
        }
    }
    debug_assert!(real.validate().is_ok());
    let rank = real.matrix.rank();
    if rank != 6 {
        return Err(RealizeError::RankAssertion { expected: 6, found: rank });
    }
    Ok(real)
}

/// `P D P^-1` for the given eigenvalue list: D is diagonal, P a random
/// integer matrix with entries in `[-magnitude, magnitude]`, resampled until
/// invertible (at most 1000 draws).
pub fn construct_diagonalizable(
    eigenvalues: &[BigRational],
    cfg: &SampleConfig,
) -> Result<ExactMatrix, RealizeError> {
    let n = eigenvalues.len();
    if !(1..=8).contains(&n) {
        return Err(RealizeError::EigenvalueCount { got: n, max: 8 });
    }
    let mut rng = rng_for(cfg.seed);
    let span = i64::from(cfg.magnitude);
    const ATTEMPTS: usize = 1000;
    for _ in 0..ATTEMPTS {
        let mut p = ExactMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = rng.gen_range(-span..=span);
                p.set(i, j, BigRational::from_integer(v.into()));
            }
        }
        let Some(p_inv) = p.inverse().expect("square by construction") else {
            continue;
        };
        let mut d = ExactMatrix::zero(n, n);
        for (i, lambda) in eigenvalues.iter().enumerate() {
            d.set(i, i, lambda.clone());
        }
        let m = p.mul(&d).expect("shapes agree").mul(&p_inv).expect("shapes agree");
        return Ok(m);
    }
    Err(RealizeError::NoInvertibleBasis { attempts: ATTEMPTS })
}

/// Minimum exact rank observed over `trials` seeded samples (per-trial seeds
/// `seed + t`), including the all-ones realization when the pattern has no
/// minus cells.
pub fn empirical_min_rank(p: &SignPattern, cfg: &SampleConfig) -> Result<usize, RealizeError> {
    if cfg.trials < 1 {
        return Err(RealizeError::ZeroTrials);
    }
    let mut best = usize::MAX;
    if !p.has_minus() {
        best = all_ones_realization(p)?.matrix.rank();
    }
    for t in 0..cfg.trials {
        let sample = sample_realization(p, &cfg.for_trial(t));
        best = best.min(sample.matrix.rank());
    }
    Ok(best)
}
