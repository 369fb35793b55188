//! The symmetric algebra H = S(R[X]) with generators `X^n`, `n >= 1`.

use crate::algebra::{Coefficient, LinComb};
use crate::combinat::compositions;
use crate::error::{Error, Result};
use crate::exact_algebra::{Functional, PolyXY};
use crate::rational::{binomial_q, factorial, int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Commutative product `X^{n_1} . ... . X^{n_k}` stored as exponent multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymMonomial(BTreeMap<u32, u32>);

impl SymMonomial {
    pub fn unit() -> Self {
        SymMonomial(BTreeMap::new())
    }

    /// The generator `X^n`; `X^0` is the unit.
    pub fn generator(n: u32) -> Self {
        let mut m = BTreeMap::new();
        if n > 0 {
            m.insert(n, 1);
        }
        SymMonomial(m)
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        parts.iter().fold(Self::unit(), |acc, &p| acc.mul(&Self::generator(p)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, e) in &other.0 {
            *m.entry(*k).or_insert(0) += e;
        }
        SymMonomial(m)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Generator exponents with repetition, ascending.
    pub fn parts(&self) -> Vec<u32> {
        self.0.iter().flat_map(|(k, e)| std::iter::repeat(*k).take(*e as usize)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(k, e)| k * e).sum()
    }
}

pub type HElement = LinComb<SymMonomial, Rational>;
pub type HTensor = LinComb<(SymMonomial, SymMonomial), Rational>;

pub fn h_generator(n: u32) -> HElement {
    HElement::single(SymMonomial::generator(n), Rational::one())
}

pub fn h_mul(a: &HElement, b: &HElement) -> HElement {
    let mut out = HElement::zero();
    for (ma, qa) in a.iter() {
        for (mb, qb) in b.iter() {
            out.add_term(ma.mul(mb), qa * qb);
        }
    }
    out
}

fn tensor_mul(a: &HTensor, b: &HTensor) -> HTensor {
    let mut out = HTensor::zero();
    for ((l1, r1), q1) in a.iter() {
        for ((l2, r2), q2) in b.iter() {
            out.add_term((l1.mul(l2), r1.mul(r2)), q1 * q2);
        }
    }
    out
}

fn coproduct_generator(n: u32) -> HTensor {
    (0..=n)
        .map(|k| ((SymMonomial::generator(k), SymMonomial::generator(n - k)), binomial_q(n, k)))
        .collect()
}

/// Binomial coproduct on generators, extended multiplicatively.
pub fn coproduct_h(x: &HElement) -> HTensor {
    let mut out = HTensor::zero();
    for (m, q) in x.iter() {
        let mut t = HTensor::single((SymMonomial::unit(), SymMonomial::unit()), Rational::one());
        for p in m.parts() {
            t = tensor_mul(&t, &coproduct_generator(p));
        }
        out.add_scaled(&t, q);
    }
    out
}

/// Takeuchi antipode on a generator.
pub fn antipode_generator(n: u32) -> HElement {
    if n == 0 {
        return HElement::single(SymMonomial::unit(), Rational::one());
    }
    let nf = factorial(n);
    let mut out = HElement::zero();
    for comp in compositions(n) {
        let den: BigInt = comp.iter().map(|&p| factorial(p)).product();
        let sign = if comp.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(SymMonomial::from_parts(&comp), int(sign) * Rational::new(nf.clone(), den));
    }
    out
}

pub fn antipode_h(x: &HElement) -> HElement {
    let mut out = HElement::zero();
    for (m, q) in x.iter() {
        let mut t = HElement::single(SymMonomial::unit(), Rational::one());
        for p in m.parts() {
            t = h_mul(&t, &antipode_generator(p));
        }
        out.add_scaled(&t, q);
    }
    out
}

/// Multiplicative extension of a functional on R[X] to H.
pub fn mu_hat<C: Coefficient>(mu: &Functional<C>, x: &HElement) -> Result<C> {
    let mut acc = C::zero();
    for (m, q) in x.iter() {
        let mut t = C::from_rational(q);
        for p in m.parts() {
            if p as usize > mu.nmax() {
                return Err(Error::Domain(format!("moment of order {p} beyond Nmax {}", mu.nmax())));
            }
            t = t * mu.at(p as usize).clone();
        }
        acc = acc + t;
    }
    Ok(acc)
}

/// `(mu_hat o S_H (x) id) Delta_H (X^n)` read as a polynomial in X.
pub fn free_wick(mu: &Functional<Rational>, n: u32) -> Result<PolyXY<Rational>> {
    let delta = coproduct_h(&h_generator(n));
    let mut out = PolyXY::zero();
    for ((l, r), q) in delta.iter() {
        let parts = r.parts();
        let deg = match parts.len() {
            0 => 0,
            1 => parts[0],
            _ => unreachable!("right leg of the generator coproduct is a generator"),
        };
        let left = mu_hat(mu, &antipode_h(&HElement::single(l.clone(), Rational::one())))?;
        out = out + PolyXY::monomial(deg, 0, left * q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn antipode_fixtures() {
        let s1 = antipode_generator(1);
        assert_eq!(s1, HElement::single(SymMonomial::generator(1), int(-1)));
        let s2 = antipode_generator(2);
        assert_eq!(s2.get(&SymMonomial::generator(2)), int(-1));
        assert_eq!(s2.get(&SymMonomial::from_parts(&[1, 1])), int(2));
        assert_eq!(s2.len(), 2);
    }

    #[test]
    fn antipode_axiom() {
        for n in 1..=6 {
            let delta = coproduct_h(&h_generator(n));
            let mut acc = HElement::zero();
            for ((l, r), q) in delta.iter() {
                let sl = antipode_h(&HElement::single(l.clone(), Rational::one()));
                acc.add_scaled(&h_mul(&sl, &HElement::single(r.clone(), Rational::one())), q);
            }
            assert!(acc.is_zero(), "n={n}: {acc:?}");
        }
    }

    #[test]
    fn mu_hat_antipode_is_inverse() {
        let mu = Functional::new(vec![int(1), frac(1, 3), int(2), frac(-5, 2), int(7), int(1), int(0)]).unwrap();
        let inv = mu.inverse().unwrap();
        for n in 0..=6u32 {
            let v = mu_hat(&mu, &antipode_generator(n)).unwrap();
            assert_eq!(&v, inv.at(n as usize), "n={n}");
        }
    }
}
