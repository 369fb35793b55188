use crate::algebra::Coefficient;
use crate::error::{Error, Result};
use crate::rational::{binomial_q, factorial_q, format_rational, frac, parse_exact, pow, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::series::PowerSeries;

/// Linear functional on R[X] stored by its values on `1, X, ..., X^Nmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<C> {
    values: Vec<C>,
}

impl<C: Coefficient> Functional<C> {
    pub fn new(values: Vec<C>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a functional needs at least the value on 1".into()));
        }
        Ok(Functional { values })
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, n: usize) -> &C {
        &self.values[n]
    }

    /// The counit: 1 on the constant monomial, 0 elsewhere.
    pub fn counit(nmax: usize) -> Self {
        let mut v = vec![C::zero(); nmax + 1];
        v[0] = C::one();
        Functional { values: v }
    }

    pub fn is_unital(&self) -> bool {
        self.values[0].is_one()
    }

    pub fn is_null_at_one(&self) -> bool {
        self.values[0].is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nmax() != other.nmax() {
            return Err(Error::TruncationMismatch { left: self.nmax(), right: other.nmax() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let v = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone());
        Ok(Functional { values: v.collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let v = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() - b.clone());
        Ok(Functional { values: v.collect() })
    }

    pub fn scale(&self, c: &C) -> Self {
        Functional { values: self.values.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Convolution dual to the binomial coproduct.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.nmax();
        let mut out = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = C::zero();
            for k in 0..=m {
                let t = self.values[k].clone() * other.values[m - k].clone();
                acc = acc + t.scaled(&binomial_q(m as u32, k as u32));
            }
            out.push(acc);
        }
        Ok(Functional { values: out })
    }

    fn conv_powers(&self, kmax: usize) -> Vec<Self> {
        let mut pows = vec![Self::counit(self.nmax())];
        for k in 1..=kmax {
            let next = pows[k - 1].convolve(self).expect("same order");
            pows.push(next);
        }
        pows
    }

    /// Convolution inverse as the Neumann series in `eps - phi`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unital() {
            return Err(Error::NotInvertible(format!("{:?}", self.values[0])));
        }
        let n = self.nmax();
        let u = Self::counit(n).sub(self)?;
        let mut acc = Self::counit(n);
        for p in u.conv_powers(n).into_iter().skip(1) {
            acc = acc.add(&p)?;
        }
        Ok(acc)
    }

    pub fn exp_star(&self) -> Result<Self> {
        if !self.is_null_at_one() {
            return Err(Error::Domain("exp_star needs phi(1) = 0".into()));
        }
        let n = self.nmax();
        let mut acc = Functional { values: vec![C::zero(); n + 1] };
        for (k, p) in self.conv_powers(n).into_iter().enumerate() {
            acc = acc.add(&p.scale(&C::from_rational(&(Rational::one() / factorial_q(k as u32)))))?;
        }
        Ok(acc)
    }

    pub fn log_star(&self) -> Result<Self> {
        if !self.is_unital() {
            return Err(Error::Domain("log_star needs phi(1) = 1".into()));
        }
        let n = self.nmax();
        let u = self.sub(&Self::counit(n))?;
        let mut acc = Functional { values: vec![C::zero(); n + 1] };
        for (k, p) in u.conv_powers(n).into_iter().enumerate().skip(1) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&p.scale(&C::from_rational(&frac(sign, k as i64))))?;
        }
        Ok(acc)
    }

    /// Exponential generating series `sum phi(X^n) t^n / n!`.
    pub fn lambda(&self) -> PowerSeries<C> {
        let c = self
            .values
            .iter()
            .enumerate()
            .map(|(n, v)| v.scaled(&(Rational::one() / factorial_q(n as u32))))
            .collect();
        PowerSeries::new(c)
    }

    pub fn from_lambda(s: &PowerSeries<C>) -> Self {
        let values = s.coeffs().iter().enumerate().map(|(n, v)| v.scaled(&factorial_q(n as u32))).collect();
        Functional { values }
    }
}

impl Functional<Rational> {
    /// Centred Gaussian moments with the given variance.
    pub fn gaussian(variance: &Rational, nmax: usize) -> Self {
        let mut values = Vec::with_capacity(nmax + 1);
        for n in 0..=nmax {
            if n % 2 == 1 {
                values.push(Rational::zero());
            } else {
                let k = (n / 2) as u32;
                let dfact: Rational = (1..=k).map(|i| Rational::from_integer((2 * i - 1).into())).product();
                values.push(dfact * pow(variance, k));
            }
        }
        Functional { values }
    }
}

impl Serialize for Functional<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.values.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Functional<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let values = v.iter().map(|s| parse_exact(s)).collect::<Result<Vec<_>>>();
        let values = values.map_err(serde::de::Error::custom)?;
        Functional::new(values).map_err(serde::de::Error::custom)
    }
}
