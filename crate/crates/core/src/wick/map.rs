use super::bell::partition_coefficient;
use crate::algebra::{Coefficient, Poly};
use crate::combinat::multiplicity_partitions;
use crate::error::{Error, Result};
use crate::exact_algebra::{Functional, PolyXY};
use crate::rational::binomial_q;
use num_traits::Zero;

/// `W(X^n) = sum_k C(n,k) mu^{-1}(X^k) X^{n-k}` for moments `mu`.
pub fn wick_map<C: Coefficient>(moments: &Functional<C>, n: usize) -> Result<PolyXY<C>> {
    if n > moments.nmax() {
        return Err(Error::Domain(format!("n = {n} exceeds the moment order {}", moments.nmax())));
    }
    let inv = moments.inverse()?;
    let mut out = PolyXY::zero();
    for k in 0..=n {
        let c = inv.at(k).scaled(&binomial_q(n as u32, k as u32));
        out = out + PolyXY::monomial((n - k) as u32, 0, c);
    }
    Ok(out)
}

/// Bell form `B_n(X, -sigma_2 Y, ..., -sigma_n Y)` with `sigma_p` supplied by the caller.
pub fn wick_map_xy<C: Coefficient>(n: u32, sigma: impl Fn(u32) -> C) -> PolyXY<C> {
    let mut out = PolyXY::zero();
    for js in multiplicity_partitions(n, None) {
        let mut c = C::from_rational(&partition_coefficient(n, &js));
        let mut ys = 0;
        for (i, &j) in js.iter().enumerate().skip(1) {
            let s = -sigma(i as u32 + 1);
            for _ in 0..j {
                c = c * s.clone();
            }
            ys += j;
        }
        out = out + PolyXY::monomial(js.first().copied().unwrap_or(0), ys, c);
    }
    out
}

/// Formal symbol `sigma_p` in the Bell form.
pub type SigmaPoly = Poly<u32>;

pub fn wick_map_formal(n: u32) -> PolyXY<SigmaPoly> {
    wick_map_xy(n, Poly::var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, Rational};

    #[test]
    fn hermite_low_orders() {
        let s2 = frac(2, 3);
        let mu = Functional::gaussian(&s2, 4);
        let w2 = wick_map(&mu, 2).unwrap();
        assert_eq!(w2.coefficient(2, 0), int(1));
        assert_eq!(w2.coefficient(0, 0), -s2.clone());
        let w3 = wick_map(&mu, 3).unwrap();
        assert_eq!(w3.coefficient(1, 0), -int(3) * s2);
        assert!(wick_map(&mu, 5).is_err());
    }

    #[test]
    fn x4_formal_coefficients() {
        let w = wick_map_formal(4);
        let s2 = Poly::var(2u32);
        let s3 = Poly::var(3u32);
        assert_eq!(w.coefficient(0, 2), s2.clone() * s2.clone() * Poly::constant(int(3)));
        assert_eq!(w.coefficient(2, 1), s2 * Poly::constant(int(-6)));
        assert_eq!(w.coefficient(1, 1), s3 * Poly::constant(int(-4)));
        assert_eq!(w.coefficient(4, 0), Poly::constant(int(1)));
    }

    #[test]
    fn xy_form_with_y_one_is_moment_form() {
        let mu = Functional::new(vec![int(1), int(0), frac(1, 2), int(2), int(5), int(-1)]).unwrap();
        let kappa = mu.log_star().unwrap();
        for n in 0..=5u32 {
            let direct = wick_map(&mu, n as usize).unwrap();
            let bell: PolyXY<Rational> = wick_map_xy(n, |p| kappa.at(p as usize).clone());
            for a in 0..=n {
                let mut s = int(0);
                for ((x, _), c) in bell.terms() {
                    if *x == a {
                        s += c;
                    }
                }
                assert_eq!(s, direct.coefficient(a, 0), "n={n} a={a}");
            }
        }
    }
}
