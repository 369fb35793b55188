use crate::algebra::{Coefficient, LinComb};
use crate::rational::{format_rational, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in X and Y keyed by the exponent pair `(a, b)` of `X^a Y^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyXY<C: Coefficient>(pub LinComb<(u32, u32), C>);

impl<C: Coefficient> PolyXY<C> {
    pub fn monomial(a: u32, b: u32, c: C) -> Self {
        PolyXY(LinComb::single((a, b), c))
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, C::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn coefficient(&self, a: u32, b: u32) -> C {
        self.0.get(&(a, b))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.0.iter()
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PolyXY<D> {
        PolyXY(self.0.map_coeffs(f))
    }

    pub fn degree_x(&self) -> u32 {
        self.terms().map(|((a, _), _)| *a).max().unwrap_or(0)
    }

    /// Renders terms by descending X degree with a coefficient printer.
    pub fn render(&self, coeff: impl Fn(&C) -> String, latex: bool) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|((a1, b1), _), ((a2, b2), _)| a2.cmp(a1).then(b1.cmp(b2)));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|((a, b), c)| {
                let mut factors = Vec::new();
                for (sym, e) in [("X", *a), ("Y", *b)] {
                    match e {
                        0 => {}
                        1 => factors.push(sym.to_string()),
                        _ if latex => factors.push(format!("{sym}^{{{e}}}")),
                        _ => factors.push(format!("{sym}^{e}")),
                    }
                }
                let mono = factors.join(if latex { " " } else { "*" });
                let cs = coeff(c);
                match (cs.as_str(), mono.is_empty()) {
                    (_, true) => format!("({cs})"),
                    ("1", false) => mono,
                    ("-1", false) => format!("-{mono}"),
                    _ => format!("({cs}){}{mono}", if latex { " " } else { "*" }),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl PolyXY<Rational> {
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            x: u32,
            y: u32,
            coefficient: String,
        }
        let terms: Vec<Term> = self
            .terms()
            .map(|((a, b), c)| Term { x: *a, y: *b, coefficient: format_rational(c) })
            .collect();
        serde_json::to_value(terms).expect("serialisable")
    }
}

impl<C: Coefficient> Zero for PolyXY<C> {
    fn zero() -> Self {
        PolyXY(LinComb::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<C: Coefficient> One for PolyXY<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coefficient> Add for PolyXY<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        PolyXY(self.0 + rhs.0)
    }
}

impl<C: Coefficient> Sub for PolyXY<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        PolyXY(self.0 - rhs.0)
    }
}

impl<C: Coefficient> Neg for PolyXY<C> {
    type Output = Self;
    fn neg(self) -> Self {
        PolyXY(-self.0)
    }
}

impl<C: Coefficient> Mul for PolyXY<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = LinComb::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                out.add_term((a1 + a2, b1 + b2), c1.clone() * c2.clone());
            }
        }
        PolyXY(out)
    }
}

impl<C: Coefficient> Coefficient for PolyXY<C> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(C::from_rational(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn product_and_render() {
        let p = (PolyXY::<Rational>::x() + PolyXY::y()) * (PolyXY::x() - PolyXY::y());
        assert_eq!(p.coefficient(2, 0), int(1));
        assert_eq!(p.coefficient(1, 1), int(0));
        assert_eq!(p.render(format_rational, false), "X^2 + -Y^2");
    }
}
