use super::coproduct::{coproduct_mi_extended, y_generator};
use super::index::{MIPoly, MultiIndex};
use super::thresholds::n_star_m;
use crate::algebra::{Coefficient, Poly};
use crate::error::Result;
use crate::exact_algebra::PolyXY;
use crate::rational::Rational;
use crate::wick::wick_map_xy;
use num_traits::{One, Zero};
use std::fmt;

/// Formal scalars appearing in the multi-index counterterms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MiSymbol {
    /// The mass counterterm `sigma_p`.
    Sigma(u32),
    /// `Pi_M A_M` applied to one subdivergence.
    PiA(MultiIndex),
    /// The vacuum constant `g A P(X^n)`.
    Vacuum(u32),
}

impl fmt::Debug for MiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MiSymbol::Sigma(p) => write!(f, "sigma{p}"),
            MiSymbol::PiA(b) => write!(f, "PiA[{b:?}]"),
            MiSymbol::Vacuum(n) => write!(f, "vac{n}"),
        }
    }
}

pub type SymPoly = Poly<MiSymbol>;

/// `eta`: `X^a Y^b` goes to `z_4^a z_2^b`.
pub fn eta<C: Coefficient>(p: &PolyXY<C>) -> MIPoly<C> {
    let mut out = MIPoly::zero();
    for (&(a, b), c) in p.terms() {
        out.add_term(MultiIndex::from_pairs(&[(2, b), (4, a)]), c.clone());
    }
    out
}

/// `sigma_p = -Pi_M A_M (Y_p)` for divergent `p`, zero otherwise.
pub fn sigma_symbol(p: u32, d: &Rational) -> Result<SymPoly> {
    if p < 2 || p > n_star_m(d)? {
        return Ok(SymPoly::zero());
    }
    let mut s = SymPoly::zero();
    for (f, c) in y_generator(p).iter() {
        for b in f.indices() {
            s = s - SymPoly::var(MiSymbol::PiA(b.clone())) * SymPoly::constant(c.clone());
        }
    }
    Ok(s)
}

/// `Theta_M(z_4^n) = -sigma_n z_2 - (g A P(X^n)) 1`, kept symbolic.
pub fn theta_m(n: u32) -> MIPoly<SymPoly> {
    let mut out = MIPoly::zero();
    out.add_term(MultiIndex::z(2), -SymPoly::var(MiSymbol::Sigma(n)));
    out.add_term(MultiIndex::unit(), -SymPoly::var(MiSymbol::Vacuum(n)));
    out
}

/// `eta(W^(X^n))` with each `sigma_p` expanded into `Pi_M A_M` symbols.
pub fn middle_square_lhs(n: u32, d: &Rational) -> Result<MIPoly<SymPoly>> {
    let sig: Vec<SymPoly> = (0..=n).map(|p| sigma_symbol(p, d)).collect::<Result<_>>()?;
    Ok(eta(&wick_map_xy(n, |p| sig[p as usize].clone())))
}

/// `(Pi_M A_M (x) id) Delta+_M(z_4^n) - sigma_n z_2 + z_4^n`.
pub fn middle_square_rhs(n: u32, d: &Rational) -> Result<MIPoly<SymPoly>> {
    let mut out = MIPoly::zero();
    for ((l, r), c) in coproduct_mi_extended(n, d)?.iter() {
        let left = l
            .indices()
            .iter()
            .fold(SymPoly::one(), |acc, b| acc * SymPoly::var(MiSymbol::PiA(b.clone())));
        let right = r.indices().first().cloned().unwrap_or_default();
        out.add_term(right, left * SymPoly::constant(c.clone()));
    }
    out.add_term(MultiIndex::z(2), -sigma_symbol(n, d)?);
    out.add_term(MultiIndex::from_pairs(&[(4, n)]), SymPoly::one());
    Ok(out)
}
