use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default bound on the vertex count accepted from outside the crate.
pub const MAX_VERTICES: usize = 10;

/// Loop-free undirected multigraph given by its edge multiplicities.
///
/// Multiplicities are stored column by column over the strict upper triangle,
/// so the entry for `i < j` sits at `j (j - 1) / 2 + i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiGraph {
    n: usize,
    m: Vec<u8>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 3]>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        MultiGraph { n, m: vec![0; n * n.saturating_sub(1) / 2] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u8)]) -> Result<Self> {
        Self::from_edges_limited(n, edges, MAX_VERTICES)
    }

    pub fn from_edges_limited(n: usize, edges: &[(usize, usize, u8)], limit: usize) -> Result<Self> {
        if n > limit {
            return Err(Error::SizeLimit(format!("{n} vertices exceeds the limit of {limit}")));
        }
        let mut g = Self::empty(n);
        for &(i, j, k) in edges {
            if i == j {
                return Err(Error::Parse(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::Parse(format!("edge ({i},{j}) out of range for {n} vertices")));
            }
            g.add_edges(i, j, k);
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn mult(&self, i: usize, j: usize) -> u8 {
        if i == j {
            0
        } else {
            self.m[idx(i, j)]
        }
    }

    pub fn add_edges(&mut self, i: usize, j: usize, k: u8) {
        assert!(i != j, "self-loops are not allowed");
        self.m[idx(i, j)] += k;
    }

    pub fn remove_edges(&mut self, i: usize, j: usize, k: u8) {
        self.m[idx(i, j)] -= k;
    }

    pub fn n_edges(&self) -> u32 {
        self.m.iter().map(|&x| x as u32).sum()
    }

    pub fn arity(&self, v: usize) -> u32 {
        (0..self.n).map(|u| self.mult(u, v) as u32).sum()
    }

    pub fn arities(&self) -> Vec<u32> {
        (0..self.n).map(|v| self.arity(v)).collect()
    }

    /// `(i, j, multiplicity)` with `i < j` and nonzero multiplicity.
    pub fn edge_list(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let k = self.mult(i, j);
                if k > 0 {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.components().len() == 1
    }

    /// Vertex sets of the connected components, each ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for u in 0..self.n {
                    if !seen[u] && self.mult(u, v) > 0 {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// First Betti number of a connected graph.
    pub fn loops(&self) -> i64 {
        self.n_edges() as i64 - self.n as i64 + self.components().len() as i64
    }

    /// `d (|V| - 1) - (d - 2) |E|`.
    pub fn degree(&self, d: &Rational) -> Rational {
        let v = Rational::from_integer(BigInt::from(self.n as i64 - 1));
        let e = Rational::from_integer(BigInt::from(self.n_edges()));
        d * v - (d - Rational::from_integer(2.into())) * e
    }

    /// Subgraph induced on `vs`, relabelled in the given order.
    pub fn induced(&self, vs: &[usize]) -> MultiGraph {
        let mut g = Self::empty(vs.len());
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate().skip(a + 1) {
                let k = self.mult(u, v);
                if k > 0 {
                    g.add_edges(a, b, k);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiGraph {
        let mut g = Self::empty(self.n);
        for (i, j, k) in self.edge_list() {
            g.add_edges(perm[i], perm[j], k);
        }
        g
    }

    pub fn canonical(&self) -> MultiGraph {
        self.canonical_with_automorphisms().0
    }

    pub fn is_canonical(&self) -> bool {
        &self.canonical() == self
    }

    /// Canonical representative together with the number of vertex
    /// permutations fixing the multiplicity matrix.
    pub fn canonical_with_automorphisms(&self) -> (MultiGraph, u64) {
        let n = self.n;
        if n <= 1 {
            return (self.clone(), 1);
        }
        let color = self.refined_colors();
        let mut pos_color = color.clone();
        pos_color.sort_unstable();
        let mut s = Search {
            g: self,
            color: &color,
            pos_color: &pos_color,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            cur: Vec::with_capacity(self.m.len()),
            best: None,
            count: 0,
        };
        s.go(0);
        let best = s.best.expect("at least one ordering");
        (MultiGraph { n, m: best }, s.count)
    }

    /// `S_F`: vertex automorphisms times the factorials of edge multiplicities.
    pub fn symmetry_factor(&self) -> BigInt {
        let (_, aut) = self.canonical_with_automorphisms();
        let mut s = BigInt::from(aut);
        for &k in &self.m {
            s *= factorial(k as u32);
        }
        s
    }

    /// Colour refinement started from the arities; colour ids are isomorphism invariant.
    fn refined_colors(&self) -> Vec<usize> {
        let n = self.n;
        let ar = self.arities();
        let mut distinct = ar.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut color: Vec<usize> = ar.iter().map(|a| distinct.binary_search(a).unwrap()).collect();
        let mut classes = distinct.len();
        loop {
            let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(usize, u8)> = (0..n)
                        .filter(|&u| u != v && self.mult(u, v) > 0)
                        .map(|u| (color[u], self.mult(u, v)))
                        .collect();
                    nb.sort_unstable();
                    (color[v], nb)
                })
                .collect();
            let mut d = sigs.clone();
            d.sort();
            d.dedup();
            let next: Vec<usize> = sigs.iter().map(|s| d.binary_search(s).unwrap()).collect();
            if d.len() == classes {
                return next;
            }
            classes = d.len();
            color = next;
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges = self.edge_list().into_iter().map(|(i, j, k)| [i, j, k as usize]).collect();
        serde_json::to_value(GraphJson { vertices: self.n, edges }).expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Self::from_json_limited(v, MAX_VERTICES)
    }

    pub fn from_json_limited(v: &serde_json::Value, limit: usize) -> Result<Self> {
        let g: GraphJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("graph: {e}")))?;
        let mut edges = Vec::new();
        for [i, j, k] in g.edges {
            let k = u8::try_from(k).map_err(|_| Error::Parse(format!("multiplicity {k} too large")))?;
            edges.push((i, j, k));
        }
        Self::from_edges_limited(g.vertices, &edges, limit)
    }

    pub fn to_latex(&self) -> String {
        let e: Vec<String> = self.edge_list().iter().map(|(i, j, k)| format!("{i}{j}^{{{k}}}")).collect();
        format!("\\Gamma_{{{}}}[{}]", self.n, e.join(","))
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}[", self.n)?;
        for (c, (i, j, k)) in self.edge_list().into_iter().enumerate() {
            if c > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}-{j}")?;
            if k > 1 {
                write!(f, "x{k}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

struct Search<'a> {
    g: &'a MultiGraph,
    color: &'a [usize],
    pos_color: &'a [usize],
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<Vec<u8>>,
    count: u64,
}

impl Search<'_> {
    // Maximal flattened matrix over colour-respecting orderings; equal leaves are automorphisms.
    fn go(&mut self, p: usize) {
        let n = self.g.n;
        if p == n {
            match &self.best {
                Some(b) if *b == self.cur => self.count += 1,
                Some(b) if *b > self.cur => {}
                _ => {
                    self.best = Some(self.cur.clone());
                    self.count = 1;
                }
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.color[v] != self.pos_color[p] {
                continue;
            }
            let len = self.cur.len();
            for q in 0..p {
                let k = self.g.mult(self.perm[q], v);
                self.cur.push(k);
            }
            let keep = match &self.best {
                Some(b) => self.cur[..] >= b[..self.cur.len()],
                None => true,
            };
            if keep {
                self.used[v] = true;
                self.perm.push(v);
                self.go(p + 1);
                self.perm.pop();
                self.used[v] = false;
            }
            self.cur.truncate(len);
        }
    }
}

/// Named graphs used throughout the examples and the command line.
pub fn named_graph(name: &str) -> Option<MultiGraph> {
    let g = |n, e: &[(usize, usize, u8)]| MultiGraph::from_edges(n, e).expect("valid").canonical();
    Some(match name.to_ascii_lowercase().as_str() {
        "doubleedge" | "fgii" => g(2, &[(0, 1, 2)]),
        "sunset" | "fgiii" => g(2, &[(0, 1, 3)]),
        "fourfold" | "fgiv" => g(2, &[(0, 1, 4)]),
        "sunsetplus" | "fgiiiplus" => g(3, &[(0, 1, 3), (0, 2, 1), (1, 2, 1)]),
        "sunsetring" => g(4, &[(0, 1, 3), (2, 3, 3), (0, 2, 1), (1, 3, 1)]),
        "doubletriangle" => g(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]),
        "triangle" => g(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
        "eye" => g(3, &[(0, 1, 2), (0, 2, 1), (1, 2, 1)]),
        _ => return None,
    })
}

pub const GRAPH_NAMES: &[&str] =
    &["doubleedge", "sunset", "fourfold", "sunsetplus", "sunsetring", "doubletriangle", "triangle", "eye"];
