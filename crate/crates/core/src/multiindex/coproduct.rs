use super::index::{mi_sum_mul, mi_sum_pow, MIForest, MIPoly, MISum, MITensor, MultiIndex};
use super::thresholds::{family_members, n_star_m};
use crate::combinat::{multiplicity_partitions, weak_compositions};
use crate::error::{Error, Result};
use crate::rational::{factorial, factorial_q, int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `Y_2 = 16 z_3^2`, `Y_p = 6p z_2 z_4^{p-1} + 8p(p-1) z_3^2 z_4^{p-2}` for `p >= 3`.
pub fn y_generator(p: u32) -> MISum<Rational> {
    let mut s = MISum::zero();
    let pi = p as i64;
    if p == 2 {
        s.add_term(MIForest::single(MultiIndex::from_pairs(&[(3, 2)])), int(16));
    } else if p >= 3 {
        s.add_term(MIForest::single(MultiIndex::from_pairs(&[(2, 1), (4, p - 1)])), int(6 * pi));
        s.add_term(MIForest::single(MultiIndex::from_pairs(&[(3, 2), (4, p - 2)])), int(8 * pi * (pi - 1)));
    }
    s
}

/// `D = sum_k z_{k+1} d/dz_k` on polynomials in the `z_k`.
pub fn d_operator(p: &MIPoly<Rational>) -> MIPoly<Rational> {
    let mut out = MIPoly::zero();
    for (b, c) in p.iter() {
        for (k, e) in b.entries() {
            let nb = b.div(&MultiIndex::z(k)).expect("present").mul(&MultiIndex::z(k + 1));
            out.add_term(nb, c * int(e as i64));
        }
    }
    out
}

pub fn d_power(b: &MultiIndex, k: u32) -> MIPoly<Rational> {
    let mut p = MIPoly::single(b.clone(), Rational::one());
    for _ in 0..k {
        p = d_operator(&p);
    }
    p
}

/// Largest family size allowed on the left: divergent at `d` and at most `n - 2`.
fn p_cap(n: u32, d: Option<&Rational>, extended: bool) -> Result<u32> {
    let top = if extended { n.saturating_sub(1) } else { n.saturating_sub(2) };
    Ok(match d {
        Some(d) => top.min(n_star_m(d)?),
        None => top,
    })
}

fn bell_form(n: u32, cap: u32) -> MITensor<Rational> {
    let mut out = MITensor::zero();
    let nf = factorial_q(n);
    for js in multiplicity_partitions(n, None) {
        let k: u32 = js.iter().sum();
        if k < 2 || k > n - 1 {
            continue;
        }
        if js.iter().enumerate().skip(1).any(|(i, &j)| j > 0 && i as u32 + 1 > cap) {
            continue;
        }
        let j1 = js[0];
        let mut left = MISum::single(MIForest::unit(), Rational::one());
        for (i, &j) in js.iter().enumerate().skip(1) {
            if j == 0 {
                continue;
            }
            let p = i as u32 + 1;
            let y = y_generator(p).scale(&(Rational::one() / factorial_q(p)));
            let term = mi_sum_pow(&y, j).scale(&(Rational::one() / factorial_q(j)));
            left = mi_sum_mul(&left, &term);
        }
        let right = MIForest::single(MultiIndex::from_pairs(&[(2, k - j1), (4, j1)]));
        let c = &nf / factorial_q(j1);
        for (l, q) in left.iter() {
            out.add_term((l.clone(), right.clone()), q * &c);
        }
    }
    out
}

/// Closed Bell-polynomial form of the divergence-restricted reduced coproduct of `z_4^n`.
pub fn coproduct_mi_closed(n: u32, d: &Rational) -> Result<MITensor<Rational>> {
    Ok(bell_form(n, p_cap(n, Some(d), false)?))
}

/// Closed form with every family size up to `n - 2` kept, as for `d` just below 4.
pub fn coproduct_mi_closed_unrestricted(n: u32) -> MITensor<Rational> {
    bell_form(n, n.saturating_sub(2))
}

/// Extended coproduct with family sizes up to `n - 1`.
pub fn coproduct_mi_extended(n: u32, d: &Rational) -> Result<MITensor<Rational>> {
    Ok(bell_form(n, p_cap(n, Some(d), true)?))
}

/// Direct evaluation of the coproduct coefficients `E(forest, z^alpha, z^beta)` for `z_4^n`.
///
/// Sums over all left forests built from divergent family members, all
/// decompositions of `beta`, and all `k_i`. Only terms with `k_i = 2` and
/// `hat beta_i = z_4^{|beta_i|}` may contribute; anything else is reported as an error.
pub fn coproduct_mi_general(n: u32, d: &Rational) -> Result<MITensor<Rational>> {
    let members: Vec<MultiIndex> = (2..=n_star_m(d)?.min(n)).flat_map(family_members).collect();
    general_from_members(n, &members)
}

pub fn coproduct_mi_general_unrestricted(n: u32) -> Result<MITensor<Rational>> {
    let members: Vec<MultiIndex> = (2..=n).flat_map(family_members).collect();
    general_from_members(n, &members)
}

fn general_from_members(n: u32, members: &[MultiIndex]) -> Result<MITensor<Rational>> {
    let beta = MultiIndex::from_pairs(&[(4, n)]);
    let sm_beta = Rational::from_integer(beta.symmetry_factor());
    let mut out = MITensor::zero();
    let mut forests = Vec::new();
    multisets(members, 0, n, &mut Vec::new(), &mut forests);
    for forest in forests {
        let f = MIForest::from_indices(forest.iter().cloned());
        let sm_f = Rational::from_integer(f.symmetry_factor());
        let m = forest.len();
        for parts in decompositions(&beta, m + 1) {
            let alpha_hat = &parts[m];
            let mut coeff = Rational::one();
            let mut ks = Vec::with_capacity(m);
            for (bi, hat) in forest.iter().zip(&parts) {
                if hat.len() != bi.len() || hat.weight() < bi.weight() {
                    coeff = Rational::zero();
                    break;
                }
                let k = hat.weight() - bi.weight();
                let c = d_power(bi, k).get(hat);
                if c.is_zero() {
                    coeff = Rational::zero();
                    break;
                }
                coeff *= c;
                ks.push(k);
            }
            if coeff.is_zero() {
                continue;
            }
            let alpha = ks.iter().fold(alpha_hat.clone(), |a, &k| a.mul(&MultiIndex::z(k)));
            let mut falling = BigInt::one();
            for k in ks.iter().copied().collect::<std::collections::BTreeSet<_>>() {
                let c = ks.iter().filter(|&&x| x == k).count() as u32;
                let a = alpha.get(k);
                falling *= factorial(a) / factorial(a - c);
            }
            if !alpha.is_realisable() {
                continue;
            }
            let follows_rule = ks.iter().all(|&k| k == 2)
                && forest.iter().zip(&parts).all(|(bi, hat)| *hat == MultiIndex::from_pairs(&[(4, bi.len())]));
            if !follows_rule {
                return Err(Error::Domain(format!("unexpected coproduct contribution for {f:?} with k = {ks:?}")));
            }
            let sm_alpha = Rational::from_integer(alpha.symmetry_factor());
            let term = &sm_beta / (&sm_f * sm_alpha) * Rational::from_integer(falling) * coeff;
            out.add_term((f.clone(), MIForest::single(alpha)), term);
        }
    }
    Ok(out)
}

fn multisets(
    members: &[MultiIndex],
    start: usize,
    budget: u32,
    cur: &mut Vec<MultiIndex>,
    out: &mut Vec<Vec<MultiIndex>>,
) {
    for i in start..members.len() {
        let l = members[i].len();
        if l > budget {
            continue;
        }
        cur.push(members[i].clone());
        out.push(cur.clone());
        multisets(members, i, budget - l, cur, out);
        cur.pop();
    }
}

/// Ordered sequences of `parts` multi-indices whose product is `beta`.
fn decompositions(beta: &MultiIndex, parts: usize) -> Vec<Vec<MultiIndex>> {
    let mut acc: Vec<Vec<MultiIndex>> = vec![vec![MultiIndex::unit(); parts]];
    for (k, e) in beta.entries() {
        let mut next = Vec::new();
        for base in &acc {
            for comp in weak_compositions(e, parts) {
                let v: Vec<MultiIndex> = base
                    .iter()
                    .zip(&comp)
                    .map(|(b, &c)| b.mul(&MultiIndex::from_pairs(&[(k, c)])))
                    .collect();
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn z(p: &[(u32, u32)]) -> MultiIndex {
        MultiIndex::from_pairs(p)
    }

    #[test]
    fn y3() {
        let y = y_generator(3);
        assert_eq!(y.get(&MIForest::single(z(&[(2, 1), (4, 2)]))), int(18));
        assert_eq!(y.get(&MIForest::single(z(&[(3, 2), (4, 1)]))), int(48));
    }

    #[test]
    fn d_squared_selection() {
        for p in 3..7 {
            let a = d_power(&z(&[(2, 1), (4, p - 1)]), 2);
            assert_eq!(a.get(&z(&[(4, p)])), int(1));
            let b = d_power(&z(&[(3, 2), (4, p - 2)]), 2);
            assert_eq!(b.get(&z(&[(4, p)])), int(2));
        }
    }

    #[test]
    fn z4_to_the_4() {
        let t = coproduct_mi_closed(4, &int(3)).unwrap();
        let s = z(&[(3, 2)]);
        let sq = MIForest::from_indices([s.clone(), s.clone()]);
        assert_eq!(t.get(&(sq, MIForest::single(z(&[(2, 2)])))), int(24 * 32 * 16 * 16 / 256));
        assert_eq!(t.get(&(MIForest::single(s), MIForest::single(z(&[(2, 1), (4, 2)])))), int(24 * 4 * 16 / 16));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn general_matches_closed_small() {
        for n in 2..=5 {
            for d in [int(3), frac(7, 2), frac(39, 10)] {
                assert_eq!(coproduct_mi_general(n, &d).unwrap(), coproduct_mi_closed(n, &d).unwrap(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn extended_adds_one_term() {
        let d = frac(18, 5);
        let diff = coproduct_mi_extended(5, &d).unwrap() - coproduct_mi_closed(5, &d).unwrap();
        let mut expect = MITensor::zero();
        for (l, c) in y_generator(4).iter() {
            expect.add_term((l.clone(), MIForest::single(z(&[(2, 1), (4, 1)]))), c * int(5));
        }
        assert_eq!(diff, expect);
    }

    #[test]
    fn z4_to_the_5_layout() {
        let t = coproduct_mi_closed(5, &frac(18, 5)).unwrap();
        let y = |p| y_generator(p);
        let cases: [(u32, &[u32], &[(u32, u32)]); 4] = [
            (10, &[2, 3], &[(2, 2)]),
            (10, &[3], &[(2, 1), (4, 2)]),
            (15, &[2, 2], &[(2, 2), (4, 1)]),
            (10, &[2], &[(2, 1), (4, 3)]),
        ];
        let mut total = MITensor::zero();
        for (c, ps, right) in cases {
            let left = ps.iter().fold(MISum::single(MIForest::unit(), Rational::one()), |a, &p| mi_sum_mul(&a, &y(p)));
            for (l, q) in left.iter() {
                total.add_term((l.clone(), MIForest::single(z(right))), q * int(c as i64));
            }
        }
        assert_eq!(t, total);
    }
}
