use crate::algebra::{render_poly, Coefficient, Poly};
use crate::combinat::multiplicity_partitions;
use crate::rational::{factorial, Rational};
use num_bigint::BigInt;
use num_traits::One;

/// Arguments of a Bell polynomial: `x` for the first slot, `y_p` for slot `p >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BellVar {
    X,
    Y(u32),
}

/// `n! / prod_p (j_p! (p!)^{j_p})` for a multiplicity vector `js` (index `p - 1`).
pub fn partition_coefficient(n: u32, js: &[u32]) -> Rational {
    let mut den = BigInt::one();
    for (i, &j) in js.iter().enumerate() {
        let p = i as u32 + 1;
        den *= factorial(j) * num_traits::pow(factorial(p), j as usize);
    }
    Rational::new(factorial(n), den)
}

fn bell_poly(n: u32, k: Option<u32>) -> Poly<BellVar> {
    let mut out = Poly::constant(Rational::from_integer(0.into()));
    for js in multiplicity_partitions(n, k) {
        let mut term = Poly::constant(partition_coefficient(n, &js));
        for (i, &j) in js.iter().enumerate() {
            let v = if i == 0 { BellVar::X } else { BellVar::Y(i as u32 + 1) };
            term = term * Poly::var(v).pow(j);
        }
        out = out + term;
    }
    out
}

/// Complete Bell polynomial `B_n(x, y_2, ..., y_n)`.
pub fn bell_complete(n: u32) -> Poly<BellVar> {
    bell_poly(n, None)
}

/// Partial Bell polynomial `B_{n,k}`.
pub fn bell_partial(n: u32, k: u32) -> Poly<BellVar> {
    bell_poly(n, Some(k))
}

/// Evaluates `B_n` (or `B_{n,k}`) at `args[p - 1]` in any coefficient ring.
pub fn bell_eval<C: Coefficient>(n: u32, k: Option<u32>, args: &[C]) -> C {
    let mut acc = C::zero();
    for js in multiplicity_partitions(n, k) {
        let mut t = C::from_rational(&partition_coefficient(n, &js));
        for (i, &j) in js.iter().enumerate() {
            for _ in 0..j {
                t = t * args[i].clone();
            }
        }
        acc = acc + t;
    }
    acc
}

pub fn render_bell(p: &Poly<BellVar>, latex: bool) -> String {
    render_poly(
        p,
        |v| match (v, latex) {
            (BellVar::X, _) => "X".into(),
            (BellVar::Y(k), true) => format!("Y_{{{k}}}"),
            (BellVar::Y(k), false) => format!("Y{k}"),
        },
        latex,
    )
}

pub fn is_monic_in_x(p: &Poly<BellVar>, n: u32) -> bool {
    let mut m = crate::algebra::Monomial::new();
    m.insert(BellVar::X, n);
    p.coefficient(&m).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mono(parts: &[(BellVar, u32)]) -> crate::algebra::Monomial<BellVar> {
        parts.iter().cloned().collect()
    }

    #[test]
    fn b5_fixture() {
        use BellVar::*;
        let b = bell_complete(5);
        let expect = [
            (vec![(Y(5), 1)], 1),
            (vec![(Y(4), 1), (X, 1)], 5),
            (vec![(Y(2), 1), (Y(3), 1)], 10),
            (vec![(Y(3), 1), (X, 2)], 10),
            (vec![(Y(2), 2), (X, 1)], 15),
            (vec![(Y(2), 1), (X, 3)], 10),
            (vec![(X, 5)], 1),
        ];
        assert_eq!(b.terms().count(), expect.len());
        for (m, c) in expect {
            assert_eq!(b.coefficient(&mono(&m)), int(c));
        }
    }

    #[test]
    fn b53_fixture() {
        use BellVar::*;
        let b = bell_partial(5, 3);
        assert_eq!(b.terms().count(), 2);
        assert_eq!(b.coefficient(&mono(&[(X, 1), (Y(2), 2)])), int(15));
        assert_eq!(b.coefficient(&mono(&[(X, 2), (Y(3), 1)])), int(10));
    }

    #[test]
    fn eval_matches_poly() {
        let args: Vec<Rational> = (1..=6).map(|i| int(i * i - 3)).collect();
        let direct = bell_eval(6, None, &args);
        let via = bell_complete(6).eval(|v| match v {
            BellVar::X => args[0].clone(),
            BellVar::Y(k) => args[*k as usize - 1].clone(),
        });
        assert_eq!(direct, via);
    }
}
