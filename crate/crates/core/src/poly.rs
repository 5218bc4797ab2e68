//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{ExactMatrix, LinalgError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no squarefree part")]
    ZeroPolynomial,
}

/// Polynomial stored as coefficients in ascending degree order, with no
/// trailing zero coefficients. The empty list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients without trailing zeros.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Scales a nonzero polynomial to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lead) => {
                let inv = lead.recip();
                UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Quotient and remainder with `deg r < deg d`. Panics on zero divisor.
    pub fn divmod(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if n < d {
            return (UniPoly::zero(), self.clone());
        }
        let lead_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=d {
                let delta = &c * &divisor.coeffs[j];
                rem[k + j] -= delta;
            }
            quot[k] = c;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic product of the distinct irreducible factors: `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Result<UniPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero(), "gcd must divide the polynomial exactly");
        Ok(q.monic())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix: scalars act as multiples of the
    /// identity.
    pub fn eval_matrix(&self, m: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        let n = m.square_order()?;
        let Some(d) = self.degree() else {
            return Ok(ExactMatrix::zero(n, n));
        };
        let mut acc = ExactMatrix::scalar(n, &self.coeffs[d]);
        for k in (0..d).rev() {
            acc = acc.mul(m)?;
            acc.add_scalar_diagonal(&self.coeffs[k]);
        }
        Ok(acc)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = poly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(poly(&[0, 0]).is_zero());
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn derivative_drops_degree() {
        // (x^3 - 2x + 5)' = 3x^2 - 2
        assert_eq!(poly(&[5, -2, 0, 1]).derivative(), poly(&[-2, 0, 3]));
        assert!(poly(&[7]).derivative().is_zero());
    }

    #[test]
    fn divmod_recovers_factors() {
        // x^2 - 1 = (x - 1)(x + 1)
        let (q, r) = poly(&[-1, 0, 1]).divmod(&poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());

        // x^2 + 1 = x * x + 1
        let (q, r) = poly(&[1, 0, 1]).divmod(&poly(&[0, 1]));
        assert_eq!(q, poly(&[0, 1]));
        assert_eq!(r, poly(&[1]));
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // gcd((x-1)(x+2), (x-1)) = x - 1
        let a = poly(&[-2, 1, 1]);
        let b = poly(&[-1, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        // gcd of coprime polynomials is 1
        assert_eq!(poly(&[-1, 1]).gcd(&poly(&[1, 1])), UniPoly::one());
        assert!(UniPoly::zero().gcd(&UniPoly::zero()).is_zero());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        // (x - 1)^2 -> x - 1
        assert_eq!(poly(&[1, -2, 1]).squarefree_part().unwrap(), poly(&[-1, 1]));
        // x^2 - 1 is already squarefree
        assert_eq!(poly(&[-1, 0, 1]).squarefree_part().unwrap(), poly(&[-1, 0, 1]));
        // x^3 -> x
        assert_eq!(poly(&[0, 0, 0, 1]).squarefree_part().unwrap(), poly(&[0, 1]));
        // nonzero constants collapse to 1
        assert_eq!(poly(&[5]).squarefree_part().unwrap(), UniPoly::one());
        assert_eq!(
            UniPoly::zero().squarefree_part().unwrap_err(),
            PolyError::ZeroPolynomial
        );
    }

    #[test]
    fn squarefree_part_is_monic_and_divides() {
        let p = poly(&[0, 0, 4, -8, 4]); // 4x^2 (x - 1)^2
        let q = p.squarefree_part().unwrap();
        assert!(q.is_monic());
        assert_eq!(q, poly(&[0, -1, 1])); // x(x - 1)
        let (_, r) = p.divmod(&q);
        assert!(r.is_zero());
    }

    #[test]
    fn eval_uses_exact_arithmetic() {
        let p = poly(&[-1, 0, 1]); // x^2 - 1
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval(&half), BigRational::new((-3).into(), 4.into()));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(poly(&[0, -2, 0, 1]).to_string(), "x^3 - 2*x");
        assert_eq!(poly(&[5]).to_string(), "5");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(poly(&[0, 1]).to_string(), "x");
        assert_eq!(poly(&[0, -1]).to_string(), "-x");
    }
}
