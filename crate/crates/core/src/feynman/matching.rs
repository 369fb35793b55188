use super::forest::{DiagramSum, GraphForest};
use super::graph::MultiGraph;
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_bigint::BigInt;
use std::collections::HashMap;

pub const MAX_LEGS: u32 = 20;

/// Result of pairing all legs of a set of vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchingCounts {
    /// Connected graphs weighted by the number of matchings producing them.
    pub connected: DiagramSum<Rational>,
    /// All graphs, as forests of their components.
    pub full: DiagramSum<Rational>,
}

/// Brute-force Wick contraction of `X^n Y^m` with quartic and quadratic vertices.
pub fn matchings_oracle(n: u32, m: u32) -> Result<MatchingCounts> {
    matchings_for_arities(&super::xy_arities(n, m))
}

/// Enumerates perfect matchings of labelled legs, discarding pairings inside one vertex,
/// and groups the resulting graphs by isomorphism class.
pub fn matchings_for_arities(arities: &[u32]) -> Result<MatchingCounts> {
    let legs: u32 = arities.iter().sum();
    if legs > MAX_LEGS {
        return Err(Error::SizeLimit(format!("{legs} legs exceeds the limit of {MAX_LEGS}")));
    }
    let owner: Vec<usize> = arities
        .iter()
        .enumerate()
        .flat_map(|(v, &a)| std::iter::repeat(v).take(a as usize))
        .collect();
    let nv = arities.len();
    let mut labelled: HashMap<Vec<u8>, u64> = HashMap::new();
    if legs % 2 == 0 {
        let mut state = State {
            owner: &owner,
            used: vec![false; owner.len()],
            mat: vec![0u8; nv * nv],
            nv,
            out: &mut labelled,
        };
        state.go();
    }
    let mut connected = DiagramSum::zero();
    let mut full = DiagramSum::zero();
    for (mat, count) in labelled {
        let mut edges = Vec::new();
        for i in 0..nv {
            for j in i + 1..nv {
                if mat[i * nv + j] > 0 {
                    edges.push((i, j, mat[i * nv + j]));
                }
            }
        }
        let g = MultiGraph::from_edges_limited(nv, &edges, usize::MAX)?;
        let c = Rational::from_integer(BigInt::from(count));
        let forest = GraphForest::from_graph(&g);
        if g.is_connected() {
            connected.add_term(forest.clone(), c.clone());
        }
        full.add_term(forest, c);
    }
    Ok(MatchingCounts { connected, full })
}

struct State<'a> {
    owner: &'a [usize],
    used: Vec<bool>,
    mat: Vec<u8>,
    nv: usize,
    out: &'a mut HashMap<Vec<u8>, u64>,
}

impl State<'_> {
    fn go(&mut self) {
        let Some(a) = self.used.iter().position(|u| !u) else {
            match self.out.get_mut(&self.mat) {
                Some(c) => *c += 1,
                None => {
                    self.out.insert(self.mat.clone(), 1);
                }
            }
            return;
        };
        self.used[a] = true;
        let va = self.owner[a];
        for b in a + 1..self.owner.len() {
            let vb = self.owner[b];
            if self.used[b] || vb == va {
                continue;
            }
            self.used[b] = true;
            let (i, j) = (va.min(vb), va.max(vb));
            self.mat[i * self.nv + j] += 1;
            self.go();
            self.mat[i * self.nv + j] -= 1;
            self.used[b] = false;
        }
        self.used[a] = false;
    }
}
