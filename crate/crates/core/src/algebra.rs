//! Coefficient rings, sparse linear combinations and multivariate polynomials.

use crate::rational::{format_rational, to_f64, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A commutative ring containing the rationals.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn scaled(&self, q: &Rational) -> Self {
        self.clone() * Self::from_rational(q)
    }
}

impl Coefficient for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Coefficient for f64 {
    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }
}

/// Finitely supported map `K -> C` with zero coefficients removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord + Clone, C: Coefficient> Default for LinComb<K, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone + fmt::Debug, C: fmt::Debug> fmt::Debug for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone, C: Coefficient> LinComb<K, C> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn single(k: K, c: C) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let nv = v.clone() + c;
                if nv.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn get(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_term(k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LinComb<K, D> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    pub fn map_keys<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> LinComb<J, C> {
        let mut out = LinComb::zero();
        for (k, v) in self.iter() {
            out.add_term(f(k), v.clone());
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            if keep(k) {
                out.add_term(k.clone(), v.clone());
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, C> {
        self.terms
    }
}

impl<K: Ord + Clone, C: Coefficient> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + Clone, C: Coefficient> Add for LinComb<K, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl<K: Ord + Clone, C: Coefficient> Neg for LinComb<K, C> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl<K: Ord + Clone, C: Coefficient> Sub for LinComb<K, C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Monomial as a map from variable to positive exponent.
pub type Monomial<V> = BTreeMap<V, u32>;

/// Multivariate polynomial over the rationals in formal variables `V`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<V: Ord + Clone>(pub LinComb<Monomial<V>, Rational>);

impl<V: Ord + Clone + fmt::Debug> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<V: Ord + Clone> Poly<V> {
    pub fn var(v: V) -> Self {
        let mut m = Monomial::new();
        m.insert(v, 1);
        Poly(LinComb::single(m, Rational::one()))
    }

    pub fn constant(q: Rational) -> Self {
        Poly(LinComb::single(Monomial::new(), q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> Rational {
        self.0.get(m)
    }

    pub fn constant_term(&self) -> Rational {
        self.0.get(&Monomial::new())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Evaluates in any coefficient ring given values for the variables.
    pub fn eval<C: Coefficient>(&self, value: impl Fn(&V) -> C) -> C {
        let mut acc = C::zero();
        for (m, q) in self.terms() {
            let mut t = C::from_rational(q);
            for (v, e) in m {
                let x = value(v);
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self.terms().flat_map(|(m, _)| m.keys().cloned()).collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

fn mono_mul<V: Ord + Clone>(a: &Monomial<V>, b: &Monomial<V>) -> Monomial<V> {
    let mut m = a.clone();
    for (v, e) in b {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m
}

impl<V: Ord + Clone> Zero for Poly<V> {
    fn zero() -> Self {
        Poly(LinComb::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<V: Ord + Clone> One for Poly<V> {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl<V: Ord + Clone> Add for Poly<V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Poly(self.0 + rhs.0)
    }
}

impl<V: Ord + Clone> Sub for Poly<V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Poly(self.0 - rhs.0)
    }
}

impl<V: Ord + Clone> Neg for Poly<V> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly(-self.0)
    }
}

impl<V: Ord + Clone> Mul for Poly<V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = LinComb::zero();
        for (ma, qa) in self.terms() {
            for (mb, qb) in rhs.terms() {
                out.add_term(mono_mul(ma, mb), qa * qb);
            }
        }
        Poly(out)
    }
}

impl<V: Ord + Clone + fmt::Debug + Send + Sync> Coefficient for Poly<V> {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(q.clone())
    }
}

/// Renders a polynomial with a caller supplied variable printer.
pub fn render_poly<V: Ord + Clone>(p: &Poly<V>, var: impl Fn(&V) -> String, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, q)) in p.terms().enumerate() {
        let neg = q < &Rational::zero();
        let a = if neg { -q.clone() } else { q.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        for (v, e) in m {
            let s = var(v);
            factors.push(match (e, latex) {
                (1, _) => s,
                (_, true) => format!("{s}^{{{e}}}"),
                (_, false) => format!("{s}^{e}"),
            });
        }
        let coeff = if latex && !a.is_integer() {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        } else {
            format_rational(&a)
        };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else {
            if !a.is_one() {
                out.push_str(&coeff);
                out.push_str(if latex { " " } else { "*" });
            }
            out.push_str(&factors.join(if latex { " " } else { "*" }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn lincomb_cancels() {
        let mut a: LinComb<u8, Rational> = LinComb::single(1, int(2));
        a.add_term(1, int(-2));
        assert!(a.is_zero());
    }

    #[test]
    fn poly_ring_ops() {
        let x = Poly::var('x');
        let y = Poly::var('y');
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let q = x.clone() * x.clone() - y.clone() * y.clone();
        assert_eq!(p, q);
        let v: Rational = p.eval(|c| if *c == 'x' { int(3) } else { frac(1, 2) });
        assert_eq!(v, frac(35, 4));
        assert_eq!((x + Poly::one()).pow(3).constant_term(), int(1));
    }

    #[test]
    fn renders() {
        let x = Poly::var("x");
        let p = x.clone() * x.clone().scaled(&frac(-3, 2)) + Poly::constant(int(1));
        assert_eq!(render_poly(&p, |v| v.to_string(), false), "1 - 3/2*x^2");
    }
}
