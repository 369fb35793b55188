//! Independent brute-force oracles checked against the library, with frozen outputs.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use renorm::exact_algebra::{Functional, PolyXY};
use renorm::feynman::{enumerate_connected_graphs, named_graph, xy_arities, MultiGraph};
use renorm::rational::{binomial_q, frac, int, Rational};
use renorm::valuation::{pi_momentum, ValuationConfig};
use renorm::wick::{bell_eval, wick_map};
use std::collections::BTreeSet;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn matrix(g: &MultiGraph) -> Vec<Vec<u8>> {
    let n = g.n_vertices();
    (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { g.mult(i, j) }).collect()).collect()
}

fn brute_symmetry(m: &[Vec<u8>]) -> BigInt {
    let n = m.len();
    let autos = permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|i| (0..n).all(|j| m[p[i]][p[j]] == m[i][j])))
        .count();
    let mut s = BigInt::from(autos);
    for i in 0..n {
        for j in i + 1..n {
            s *= (1..=m[i][j] as u64).product::<u64>();
        }
    }
    s
}

fn min_key(m: &[Vec<u8>]) -> Vec<u8> {
    let n = m.len();
    permutations(n)
        .into_iter()
        .map(|p| (0..n).flat_map(|i| (0..n).map(|j| m[p[i]][p[j]]).collect::<Vec<_>>()).collect::<Vec<_>>())
        .min()
        .unwrap()
}

fn connected(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if m[v][w] > 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Every loop-free multigraph with the given degrees, by filling the upper triangle.
fn fill(m: &mut Vec<Vec<u8>>, rest: &mut Vec<u32>, pairs: &[(usize, usize)], idx: usize, out: &mut Vec<Vec<Vec<u8>>>) {
    if idx == pairs.len() {
        if rest.iter().all(|&r| r == 0) {
            out.push(m.clone());
        }
        return;
    }
    let (i, j) = pairs[idx];
    for k in 0..=rest[i].min(rest[j]) {
        m[i][j] = k as u8;
        m[j][i] = k as u8;
        rest[i] -= k;
        rest[j] -= k;
        fill(m, rest, pairs, idx + 1, out);
        rest[i] += k;
        rest[j] += k;
    }
    m[i][j] = 0;
    m[j][i] = 0;
}

fn brute_classes(arities: &[u32]) -> Vec<Vec<Vec<u8>>> {
    let n = arities.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut all = Vec::new();
    fill(&mut vec![vec![0; n]; n], &mut arities.to_vec(), &pairs, 0, &mut all);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for m in all.into_iter().filter(|m| connected(m)) {
        if seen.insert(min_key(&m)) {
            reps.push(m);
        }
    }
    reps
}

fn to_graph(m: &[Vec<u8>]) -> MultiGraph {
    let n = m.len();
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).filter(move |&j| m[i][j] > 0).map(move |j| (i, j, m[i][j])))
        .collect();
    MultiGraph::from_edges(n, &edges).unwrap().canonical()
}

fn arity_cases() -> Vec<Vec<u32>> {
    let mut v = vec![vec![3, 3], vec![3, 3, 4, 4], vec![2, 2, 4], vec![3, 3, 4], vec![2, 3, 3, 4]];
    for n in 2..=4 {
        v.push(xy_arities(n, 0));
    }
    for (n, m) in [(1, 2), (2, 1), (2, 2), (3, 1), (1, 3)] {
        v.push(xy_arities(n, m));
    }
    v
}

#[test]
fn isomorphism_classes_match_brute_force() {
    for ar in arity_cases() {
        let brute: BTreeSet<MultiGraph> = brute_classes(&ar).iter().map(|m| to_graph(m)).collect();
        let lib: BTreeSet<MultiGraph> = enumerate_connected_graphs(&ar).unwrap().into_iter().collect();
        assert_eq!(brute, lib, "arities {ar:?}");
    }
}

#[test]
fn frozen_class_counts() {
    let count = |ar: &[u32]| brute_classes(ar).len();
    assert_eq!(count(&[3, 3]), 1);
    assert_eq!(count(&[3, 3, 4, 4]), 5);
    assert_eq!(count(&xy_arities(2, 0)), 1);
    assert_eq!(count(&xy_arities(3, 0)), 1);
    assert_eq!(count(&xy_arities(4, 0)), 3);
}

#[test]
fn symmetry_factors_match_brute_force() {
    for ar in arity_cases() {
        for g in enumerate_connected_graphs(&ar).unwrap() {
            assert_eq!(g.symmetry_factor(), brute_symmetry(&matrix(&g)), "{g:?}");
        }
    }
}

#[test]
fn frozen_symmetry_factors() {
    let frozen = [
        ("doubleedge", 4),
        ("sunset", 12),
        ("fourfold", 48),
        ("sunsetplus", 12),
        ("sunsetring", 144),
        ("doubletriangle", 48),
        ("triangle", 6),
        ("eye", 4),
    ];
    for (name, s) in frozen {
        let g = named_graph(name).unwrap();
        assert_eq!(brute_symmetry(&matrix(&g)), BigInt::from(s), "{name}");
        assert_eq!(g.symmetry_factor(), BigInt::from(s), "{name}");
    }
}

fn naive_sunset(cfg: &ValuationConfig) -> f64 {
    let n = cfg.cutoff as i32;
    let mut ks = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                let k = [a, b, c];
                if cfg.norm.contains(k, cfg.cutoff) {
                    ks.push(k);
                }
            }
        }
    }
    let mut total = 0.0;
    for k1 in &ks {
        for k2 in &ks {
            let k3 = [-k1[0] - k2[0], -k1[1] - k2[1], -k1[2] - k2[2]];
            if cfg.norm.contains(k3, cfg.cutoff) {
                total += cfg.propagator(*k1) * cfg.propagator(*k2) * cfg.propagator(k3);
            }
        }
    }
    total
}

#[test]
fn sunset_momentum_matches_naive_loop() {
    for (d, n) in [(int(3), 1), (int(3), 3), (frac(7, 2), 2), (frac(5, 2), 4)] {
        let cfg = ValuationConfig::new(d, n).unwrap();
        let lib = pi_momentum(&named_graph("sunset").unwrap(), &cfg).unwrap();
        let naive = naive_sunset(&cfg);
        assert!((lib - naive).abs() <= 1e-12 * naive.abs(), "N={n}: {lib} vs {naive}");
    }
}

#[test]
fn frozen_sunset_values() {
    let cfg = ValuationConfig::new(frac(7, 2), 2).unwrap();
    let v = naive_sunset(&cfg);
    let lib = pi_momentum(&named_graph("sunset").unwrap(), &cfg).unwrap();
    assert!((v - lib).abs() < 1e-12 * v);
    assert!((v - FROZEN_SUNSET_72_N2).abs() < 1e-9 * v, "{v}");
}

const FROZEN_SUNSET_72_N2: f64 = 1.050689513964863;

/// `B_{n+1} = sum_i C(n, i) B_{n-i} x_{i+1}` with `B_0 = 1`.
fn bell_by_recursion(nmax: usize, args: &[Rational]) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for n in 0..nmax {
        let mut s = Rational::zero();
        for i in 0..=n {
            s += binomial_q(n as u32, i as u32) * &b[n - i] * &args[i];
        }
        b.push(s);
    }
    b
}

#[test]
fn bell_matches_recursion() {
    let args: Vec<Rational> = (1..=10).map(|i| frac(3 * i - 7, i + 1)).collect();
    let rec = bell_by_recursion(10, &args);
    for n in 0..=10u32 {
        assert_eq!(bell_eval(n, None, &args), rec[n as usize], "n={n}");
    }
    let ones = vec![Rational::one(); 10];
    let bell_numbers = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    for (n, b) in bell_numbers.iter().enumerate() {
        assert_eq!(bell_by_recursion(10, &ones)[n], int(*b));
        assert_eq!(bell_eval(n as u32, None, &ones), int(*b));
    }
}

fn hermite(n: usize, var: &Rational) -> Vec<PolyXY<Rational>> {
    let x = PolyXY::x();
    let mut h = vec![PolyXY::constant(Rational::one()), x.clone()];
    for k in 1..n {
        let next = x.clone() * h[k].clone() - PolyXY::constant(var * int(k as i64)) * h[k - 1].clone();
        h.push(next);
    }
    h
}

#[test]
fn wick_of_gaussian_is_hermite() {
    for var in [int(1), frac(2, 3), frac(7, 5)] {
        let mu = Functional::gaussian(&var, 10);
        let h = hermite(10, &var);
        for n in 0..=10 {
            assert_eq!(wick_map(&mu, n).unwrap(), h[n], "n={n} var={var}");
        }
    }
    let he4 = &hermite(4, &int(1))[4];
    assert_eq!(he4.coefficient(4, 0), int(1));
    assert_eq!(he4.coefficient(2, 0), int(-6));
    assert_eq!(he4.coefficient(0, 0), int(3));
}
