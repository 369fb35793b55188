//! End-to-end check that the polynomial, multi-index and diagram renormalisations agree.

use crate::error::{Error, Result};
use crate::exact_algebra::{Functional, PolyXY};
use crate::feynman::{
    unit_sum, CharacterAntipode, DiagramSum, DiagramTensor, HopfContext, RandomCharacter,
};
use crate::multiindex::{
    coproduct_mi_closed, middle_square_lhs, middle_square_rhs, n_star_m, p_map, p_map_sum, p_map_tensor, y_generator,
    MITensor, MultiIndex,
};
use crate::rational::{format_rational, Rational};
use crate::wick::{free_wick, wick_map, wick_map_xy};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

pub const MAX_VERIFY_ORDER: u32 = 6;

/// Deliberate corruption of one coefficient, used to check that the pipeline can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Perturbation {
    #[default]
    None,
    /// Adds one to the first term of the graph coproduct.
    Ck,
    /// Adds one to the first term of the multi-index coproduct.
    Mi,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub d: Rational,
    pub nmax: u32,
    pub seed: u64,
    pub perturb: Perturbation,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub n: u32,
    pub left_square: bool,
    pub middle_square: bool,
    pub right_square: bool,
    pub paths_agree: bool,
    pub terms: usize,
    pub differences: Vec<String>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.left_square && self.middle_square && self.right_square && self.paths_agree
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    #[serde(serialize_with = "ser_rational")]
    pub d: Rational,
    pub seed: u64,
    pub perturb: Perturbation,
    pub orders: Vec<OrderReport>,
    pub passed: bool,
    pub runtime_ms: u128,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("verify d={} seed={}\n", format_rational(&self.d), self.seed);
        for o in &self.orders {
            let mark = |b: bool| if b { "ok" } else { "FAIL" };
            s.push_str(&format!(
                "n={} left={} middle={} right={} paths={} terms={}\n",
                o.n,
                mark(o.left_square),
                mark(o.middle_square),
                mark(o.right_square),
                mark(o.paths_agree),
                o.terms
            ));
            for d in &o.differences {
                s.push_str(&format!("  {d}\n"));
            }
        }
        s.push_str(if self.passed { "MATCH\n" } else { "MISMATCH\n" });
        s
    }
}

/// A centred rational moment sequence `1, 0, mu_2, ..., mu_n` drawn from `rng`.
pub fn random_centred_moments(rng: &mut ChaCha8Rng, n: usize) -> Functional<Rational> {
    let mut v = vec![Rational::one(), Rational::zero()];
    for _ in 2..=n.max(1) {
        let num: i64 = rng.gen_range(-40..=40);
        let den: i64 = rng.gen_range(1..=9);
        v.push(Rational::new(BigInt::from(num), BigInt::from(den)));
    }
    Functional::new(v).expect("nonempty")
}

fn collapse_y(p: &PolyXY<Rational>) -> PolyXY<Rational> {
    let mut out = PolyXY::zero();
    for (&(a, _), c) in p.terms() {
        out = out + PolyXY::monomial(a, 0, c.clone());
    }
    out
}

/// Free-algebra route, moment route and Bell form at `Y = 1` all agree.
pub fn left_square(mu: &Functional<Rational>, n: u32) -> Result<bool> {
    let free = free_wick(mu, n)?;
    let moments = wick_map(mu, n as usize)?;
    let kappa = mu.log_star()?;
    let bell = collapse_y(&wick_map_xy(n, |p| kappa.at(p as usize).clone()));
    Ok(free == moments && moments == bell)
}

fn perturb_first<K: Ord + Clone>(t: &mut crate::algebra::LinComb<K, Rational>) -> bool {
    let first = t.keys().next().cloned();
    match first {
        Some(k) => {
            t.add_term(k, Rational::one());
            true
        }
        None => false,
    }
}

/// `(P_M (x) P_M) Delta_M` against `Delta_CK o P_M` on `z_4^n`.
pub fn right_square(
    ctx: &HopfContext,
    n: u32,
    perturb: Perturbation,
) -> Result<(bool, DiagramTensor<Rational>, DiagramTensor<Rational>)> {
    let mut mi: MITensor<Rational> = coproduct_mi_closed(n, ctx.d())?;
    if perturb == Perturbation::Mi {
        perturb_first(&mut mi);
    }
    let left = p_map_tensor(&mi)?;
    let right = ctx.reduced_coproduct_sum(&p_map(&MultiIndex::from_pairs(&[(4, n)]))?);
    Ok((left == right, left, right))
}

/// Path through the Wick map: `P o W(X^n)` with `sigma_p = -g A~ P_M(Y_p)`.
pub fn path_wick(
    ca: &CharacterAntipode<'_, Rational, RandomCharacter>,
    n: u32,
) -> Result<DiagramSum<Rational>> {
    let nm = n_star_m(ca.context().d())?;
    let mut sigma = vec![Rational::zero(); n as usize + 1];
    for p in 2..=n.min(nm) {
        sigma[p as usize] = -ca.twisted_sum(&p_map_sum(&y_generator(p))?);
    }
    let w = wick_map_xy(n, |p| sigma[p as usize].clone());
    let mut out = DiagramSum::zero();
    for (&(a, b), c) in w.terms() {
        out.add_scaled(&p_map(&MultiIndex::from_pairs(&[(2, b), (4, a)]))?, c);
    }
    Ok(out)
}

/// Path through the graph coproduct: `((g A (x) id) Delta_CK + g Theta) P(X^n)`.
pub fn path_coproduct(
    ca: &CharacterAntipode<'_, Rational, RandomCharacter>,
    n: u32,
    perturb: Perturbation,
) -> Result<DiagramSum<Rational>> {
    let top = p_map(&MultiIndex::from_pairs(&[(4, n)]))?;
    let mut delta = ca.context().coproduct_sum(&top);
    if perturb == Perturbation::Ck {
        perturb_first(&mut delta);
    }
    let mut out = DiagramSum::zero();
    for ((l, r), c) in delta.iter() {
        let g = ca.antipode_forest(l) * c;
        out.add_term(r.clone(), g);
    }
    // Theta on z_4^n: the z_2 term vanishes under P_M, leaving the vacuum constant
    let vacuum = ca.antipode_sum(&top);
    out.add_scaled(&unit_sum(), &-vacuum);
    Ok(out)
}

fn describe(diff: &DiagramSum<Rational>) -> Vec<String> {
    diff.iter().take(10).map(|(f, c)| format!("{} * {:?}", format_rational(c), f)).collect()
}

pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.nmax > MAX_VERIFY_ORDER {
        return Err(Error::SizeLimit(format!("verify supports n <= {MAX_VERIFY_ORDER}, got {}", opts.nmax)));
    }
    let start = Instant::now();
    n_star_m(&opts.d)?;
    let ctx = HopfContext::new(opts.d.clone());
    let chi = RandomCharacter::new(opts.seed);
    let ca = CharacterAntipode::new(&ctx, &chi);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut orders = Vec::new();
    for n in 1..=opts.nmax {
        let mu = random_centred_moments(&mut rng, n as usize);
        let left = left_square(&mu, n)?;
        let middle = middle_square_lhs(n, &opts.d)? == middle_square_rhs(n, &opts.d)?;
        let (right, _, _) = right_square(&ctx, n, opts.perturb)?;
        let a = path_wick(&ca, n)?;
        let b = path_coproduct(&ca, n, opts.perturb)?;
        let diff = a.clone() - b;
        let mut differences = describe(&diff);
        if !right {
            differences.push("multi-index and graph coproducts differ".into());
        }
        orders.push(OrderReport {
            n,
            left_square: left,
            middle_square: middle,
            right_square: right,
            paths_agree: diff.is_zero(),
            terms: a.len(),
            differences,
        });
    }
    let passed = orders.iter().all(OrderReport::passed);
    Ok(VerifyReport {
        d: opts.d.clone(),
        seed: opts.seed,
        perturb: opts.perturb,
        orders,
        passed,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn run(d: Rational, nmax: u32, perturb: Perturbation) -> VerifyReport {
        verify(&VerifyOptions { d, nmax, seed: 3, perturb }).unwrap()
    }

    #[test]
    fn passes_at_three() {
        let r = run(int(3), 4, Perturbation::None);
        assert!(r.passed, "{}", r.render_text());
    }

    #[test]
    fn passes_with_cubic_families() {
        let r = run(frac(18, 5), 5, Perturbation::None);
        assert!(r.passed, "{}", r.render_text());
    }

    #[test]
    fn perturbations_are_caught() {
        assert!(!run(int(3), 3, Perturbation::Ck).passed);
        assert!(!run(int(3), 4, Perturbation::Mi).passed);
    }
}
