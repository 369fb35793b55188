use super::graph::{MultiGraph, MAX_VERTICES};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

type Cache = Mutex<HashMap<Vec<u32>, Vec<MultiGraph>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All connected loop-free multigraphs whose vertex arities form the given multiset,
/// up to isomorphism, as sorted canonical representatives.
pub fn enumerate_connected_graphs(arities: &[u32]) -> Result<Vec<MultiGraph>> {
    let mut key = arities.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    if key.len() > MAX_VERTICES {
        return Err(Error::SizeLimit(format!("{} vertices exceeds the limit of {MAX_VERTICES}", key.len())));
    }
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let out = enumerate_uncached(&key);
    cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

fn enumerate_uncached(arities: &[u32]) -> Vec<MultiGraph> {
    let n = arities.len();
    if n == 0 || arities.iter().sum::<u32>() % 2 == 1 {
        return Vec::new();
    }
    if n == 1 {
        return if arities[0] == 0 { vec![MultiGraph::empty(1)] } else { Vec::new() };
    }
    let mut found = BTreeSet::new();
    let mut g = MultiGraph::empty(n);
    let mut rem: Vec<u32> = arities.to_vec();
    fill(0, 1, &mut g, &mut rem, &mut found);
    found.into_iter().collect()
}

fn fill(i: usize, j: usize, g: &mut MultiGraph, rem: &mut [u32], found: &mut BTreeSet<MultiGraph>) {
    let n = rem.len();
    if i == n - 1 {
        if rem[i] == 0 && g.is_connected() {
            found.insert(g.canonical());
        }
        return;
    }
    if j == n {
        if rem[i] == 0 {
            fill(i + 1, i + 2, g, rem, found);
        }
        return;
    }
    let later: u32 = rem[j..].iter().sum();
    if rem[i] > later {
        return;
    }
    let top = rem[i].min(rem[j]);
    for k in 0..=top {
        rem[i] -= k;
        rem[j] -= k;
        if k > 0 {
            g.add_edges(i, j, k as u8);
        }
        fill(i, j + 1, g, rem, found);
        if k > 0 {
            g.remove_edges(i, j, k as u8);
        }
        rem[i] += k;
        rem[j] += k;
    }
}

/// Vertex arity multiset of the graphs in `P(X^n Y^m)`.
pub fn xy_arities(n: u32, m: u32) -> Vec<u32> {
    let mut v = vec![4; n as usize];
    v.extend(std::iter::repeat(2).take(m as usize));
    v
}
