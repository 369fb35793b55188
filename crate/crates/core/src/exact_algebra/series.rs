use crate::algebra::Coefficient;
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};

/// Truncated power series in one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> PowerSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch { left: self.order(), right: other.order() });
        }
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(PowerSeries { coeffs: out })
    }
}

impl PowerSeries<Rational> {
    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible("0".into()));
        }
        let inv0 = Rational::one() / c0;
        let mut out: Vec<Rational> = vec![inv0.clone()];
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }
}
