use super::config::ValuationConfig;
use super::green::{green_on_grid, GreenTable};
use crate::error::{Error, Result};
use crate::feynman::{GraphCharacter, MultiGraph};
use rayon::prelude::*;
use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

pub const MAX_XSPACE_VERTICES: usize = 4;
pub const MAX_MOMENTUM_LOOPS: usize = 3;
/// Default cap on the number of summand evaluations for one graph.
pub const DEFAULT_BUDGET: f64 = 4e8;

/// Pairwise summation with a fixed tree shape.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Smallest grid on which the x-space sum of `g` is free of aliasing: `maxdeg N + 1`.
pub fn alias_free_grid(g: &MultiGraph, cutoff: u32) -> usize {
    let maxdeg = g.arities().into_iter().max().unwrap_or(0) as usize;
    (maxdeg.max(2) * cutoff as usize + 1).max(1)
}

/// `Pi_N(G)` by the uniform-grid quadrature with one vertex pinned at the origin.
pub fn pi_xspace(g: &MultiGraph, green: &GreenTable) -> Result<f64> {
    let v = g.n_vertices();
    if v > MAX_XSPACE_VERTICES {
        return Err(Error::SizeLimit(format!("x-space sum supports at most {MAX_XSPACE_VERTICES} vertices, got {v}")));
    }
    if !g.is_connected() {
        return Err(Error::Domain("valuation needs a connected graph".into()));
    }
    if v == 1 {
        return Ok(1.0);
    }
    let m = green.grid();
    let mut powers: HashMap<u8, Vec<f64>> = HashMap::new();
    let mut closing: Vec<Vec<(usize, u8)>> = vec![Vec::new(); v];
    for (i, j, k) in g.edge_list() {
        powers.entry(k).or_insert_with(|| green.values().iter().map(|x| x.powi(k as i32)).collect());
        closing[i.max(j)].push((i.min(j), k));
    }
    let points = m * m * m;
    let partial: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|p1| {
            let mut pos = vec![[0usize; 3]; v];
            pos[1] = green.point(p1);
            let w = closing[1].iter().fold(1.0, |acc, &(i, k)| acc * powers[&k][green.index(green.diff(pos[1], pos[i]))]);
            if w == 0.0 {
                return 0.0;
            }
            w * xspace_level(2, &mut pos, &closing, &powers, green)
        })
        .collect();
    Ok(pairwise_sum(&partial) / (points as f64).powi(v as i32 - 1))
}

fn xspace_level(
    level: usize,
    pos: &mut [[usize; 3]],
    closing: &[Vec<(usize, u8)>],
    powers: &HashMap<u8, Vec<f64>>,
    green: &GreenTable,
) -> f64 {
    if level == pos.len() {
        return 1.0;
    }
    let m = green.grid();
    let tables: Vec<(&[f64], usize)> = closing[level].iter().map(|&(i, k)| (powers[&k].as_slice(), i)).collect();
    let mut acc = 0.0;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let p = [a, b, c];
                let mut w = 1.0;
                for &(t, i) in &tables {
                    w *= t[green.index(green.diff(p, pos[i]))];
                }
                if w == 0.0 {
                    continue;
                }
                if level + 1 == pos.len() {
                    acc += w;
                } else {
                    pos[level] = p;
                    acc += w * xspace_level(level + 1, pos, closing, powers, green);
                }
            }
        }
    }
    acc
}

/// Loop structure of a multigraph: chord momenta are free, tree edges carry signed sums.
struct LoopBasis {
    chords: usize,
    tree: Vec<Vec<i32>>,
}

fn loop_basis(g: &MultiGraph) -> LoopBasis {
    let n = g.n_vertices();
    let mut edges = Vec::new();
    for (i, j, k) in g.edge_list() {
        for _ in 0..k {
            edges.push((i, j));
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; edges.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for (e, &(a, b)) in edges.iter().enumerate() {
            let w = if a == u { b } else if b == u { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((u, e));
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let chords: Vec<usize> = (0..edges.len()).filter(|&e| !in_tree[e]).collect();
    let tree_edges: Vec<usize> = (0..edges.len()).filter(|&e| in_tree[e]).collect();
    let mut tree = vec![vec![0i32; chords.len()]; tree_edges.len()];
    let path_to_root = |mut v: usize| {
        let mut p = Vec::new();
        while let Some((u, e)) = parent[v] {
            p.push((e, u, v));
            v = u;
        }
        p
    };
    for (c, &ce) in chords.iter().enumerate() {
        // chord carries k from a to b; it returns from b to a through the tree
        let (a, b) = edges[ce];
        for (e, from, to) in path_to_root(b) {
            let t = tree_edges.iter().position(|&x| x == e).unwrap();
            tree[t][c] += if edges[e] == (to, from) { 1 } else { -1 };
        }
        for (e, from, to) in path_to_root(a) {
            let t = tree_edges.iter().position(|&x| x == e).unwrap();
            tree[t][c] -= if edges[e] == (to, from) { 1 } else { -1 };
        }
    }
    LoopBasis { chords: chords.len(), tree }
}

/// `Pi_N(G)` as a sum over independent loop momenta in the cutoff ball.
pub fn pi_momentum(g: &MultiGraph, cfg: &ValuationConfig) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::Domain("valuation needs a connected graph".into()));
    }
    let basis = loop_basis(g);
    let l = basis.chords;
    if l > MAX_MOMENTUM_LOOPS {
        return Err(Error::SizeLimit(format!("momentum sum supports at most {MAX_MOMENTUM_LOOPS} loops, got {l}")));
    }
    let modes = cfg.modes();
    let r = (l.max(1) as i32) * cfg.cutoff as i32;
    let w = (2 * r + 1) as usize;
    let mut table = vec![0.0; w * w * w];
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                table[(((a + r) as usize) * w + (b + r) as usize) * w + (c + r) as usize] = cfg.propagator([a, b, c]);
            }
        }
    }
    let lookup = |k: [i32; 3]| table[(((k[0] + r) as usize) * w + (k[1] + r) as usize) * w + (k[2] + r) as usize];
    let props: Vec<f64> = modes.iter().map(|k| cfg.propagator(*k)).collect();
    let tree_value = |ks: &[[i32; 3]]| -> f64 {
        basis.tree.iter().fold(1.0, |acc, coeffs| {
            let mut q = [0i32; 3];
            for (c, &s) in coeffs.iter().enumerate() {
                for a in 0..3 {
                    q[a] += s * ks[c][a];
                }
            }
            acc * lookup(q)
        })
    };
    if l == 0 {
        return Ok(tree_value(&[]));
    }
    let partial: Vec<f64> = (0..modes.len())
        .into_par_iter()
        .map(|i0| {
            let mut ks = vec![modes[i0]; l];
            momentum_level(1, &mut ks, props[i0], &modes, &props, &tree_value)
        })
        .collect();
    Ok(pairwise_sum(&partial))
}

fn momentum_level(
    level: usize,
    ks: &mut [[i32; 3]],
    weight: f64,
    modes: &[[i32; 3]],
    props: &[f64],
    tree_value: &dyn Fn(&[[i32; 3]]) -> f64,
) -> f64 {
    if level == ks.len() {
        return weight * tree_value(ks);
    }
    let mut acc = 0.0;
    for (k, p) in modes.iter().zip(props) {
        ks[level] = *k;
        acc += momentum_level(level + 1, ks, weight * p, modes, props, tree_value);
    }
    acc
}

/// How a valuation was (or would be) computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Momentum,
    XSpace { grid: usize, exact: bool },
}

/// The `Pi_N` character with automatic backend choice and per-graph memoisation.
///
/// Exact methods are preferred: the momentum sum, or the x-space sum on an
/// alias-free grid, whichever is cheaper. Otherwise the x-space quadrature on the
/// configured grid is used.
pub struct PiEvaluator {
    cfg: ValuationConfig,
    budget: f64,
    tables: Mutex<HashMap<usize, Arc<GreenTable>>>,
    memo: Mutex<HashMap<MultiGraph, f64>>,
}

impl PiEvaluator {
    pub fn new(cfg: ValuationConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(PiEvaluator { cfg, budget: DEFAULT_BUDGET, tables: Mutex::new(HashMap::new()), memo: Mutex::new(HashMap::new()) })
    }

    pub fn with_budget(mut self, budget: f64) -> Self {
        self.budget = budget;
        self
    }

    pub fn config(&self) -> &ValuationConfig {
        &self.cfg
    }

    pub fn green(&self, grid: usize) -> Arc<GreenTable> {
        let mut t = self.tables.lock().unwrap();
        t.entry(grid).or_insert_with(|| Arc::new(green_on_grid(&self.cfg, grid))).clone()
    }

    pub fn method(&self, g: &MultiGraph) -> Result<Method> {
        let v = g.n_vertices();
        let e = g.n_edges() as f64;
        let loops = g.loops().max(0) as usize;
        let ball = self.cfg.modes().len() as f64;
        let mom = if loops <= MAX_MOMENTUM_LOOPS { Some(ball.powi(loops as i32) * e) } else { None };
        let xcost = |grid: usize| {
            if v <= MAX_XSPACE_VERTICES {
                Some((grid as f64).powi(3 * (v as i32 - 1)) * e)
            } else {
                None
            }
        };
        let af = alias_free_grid(g, self.cfg.cutoff).max(self.cfg.grid);
        let mut best: Option<(f64, Method)> = None;
        if let Some(c) = mom {
            best = Some((c, Method::Momentum));
        }
        if let Some(c) = xcost(af) {
            if best.map_or(true, |(b, _)| c < b) {
                best = Some((c, Method::XSpace { grid: af, exact: true }));
            }
        }
        match best {
            Some((c, m)) if c <= self.budget => Ok(m),
            _ => match xcost(self.cfg.grid) {
                Some(c) if c <= self.budget => Ok(Method::XSpace { grid: self.cfg.grid, exact: af == self.cfg.grid }),
                _ => Err(Error::SizeLimit(format!(
                    "graph with {v} vertices and {loops} loops exceeds the numeric budget at N = {}",
                    self.cfg.cutoff
                ))),
            },
        }
    }

    pub fn value(&self, g: &MultiGraph) -> Result<f64> {
        let g = g.canonical();
        if let Some(v) = self.memo.lock().unwrap().get(&g) {
            return Ok(*v);
        }
        let v = match self.method(&g)? {
            Method::Momentum => pi_momentum(&g, &self.cfg)?,
            Method::XSpace { grid, .. } => pi_xspace(&g, &self.green(grid))?,
        };
        self.memo.lock().unwrap().insert(g, v);
        Ok(v)
    }

    /// Checks that every graph in the list can be valuated within budget.
    pub fn feasible<'a>(&self, gs: impl IntoIterator<Item = &'a MultiGraph>) -> Result<()> {
        for g in gs {
            self.method(g)?;
        }
        Ok(())
    }
}

impl GraphCharacter<f64> for PiEvaluator {
    /// NaN when the graph exceeds the numeric bounds; use [`PiEvaluator::value`] to get the error.
    fn value(&self, g: &MultiGraph) -> f64 {
        PiEvaluator::value(self, g).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feynman::named_graph;
    use crate::rational::{frac, int};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn parseval_double_edge() {
        let cfg = ValuationConfig::new(frac(7, 2), 3).unwrap();
        let direct: f64 = cfg.modes().iter().map(|k| cfg.propagator(*k).powi(2)).sum();
        let g = named_graph("doubleedge").unwrap();
        let x = pi_xspace(&g, &green_on_grid(&cfg, cfg.grid)).unwrap();
        assert!(rel(x, direct) < 1e-10);
        assert!(rel(pi_momentum(&g, &cfg).unwrap(), direct) < 1e-12);
    }

    #[test]
    fn sunset_backends_agree_on_alias_free_grid() {
        let cfg = ValuationConfig::new(int(3), 2).unwrap();
        let g = named_graph("sunset").unwrap();
        let x = pi_xspace(&g, &green_on_grid(&cfg, alias_free_grid(&g, 2))).unwrap();
        assert!(rel(x, pi_momentum(&g, &cfg).unwrap()) < 1e-10);
    }

    #[test]
    fn zero_cutoff_sunset() {
        let mut cfg = ValuationConfig::new(frac(5, 2), 0).unwrap();
        cfg.m = 2.0;
        let v = pi_momentum(&named_graph("sunset").unwrap(), &cfg).unwrap();
        assert!(rel(v, 2f64.powf(-6.0 * cfg.s)) < 1e-14);
    }

    #[test]
    fn three_vertex_graph_agrees() {
        let cfg = ValuationConfig::new(int(3), 1).unwrap();
        let g = named_graph("sunsetplus").unwrap();
        let x = pi_xspace(&g, &green_on_grid(&cfg, alias_free_grid(&g, 1))).unwrap();
        assert!(rel(x, pi_momentum(&g, &cfg).unwrap()) < 1e-10);
    }

    #[test]
    fn pairwise_is_exact_on_small_ints() {
        let xs: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 5050.0);
    }
}
