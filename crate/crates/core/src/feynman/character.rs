use super::graph::MultiGraph;
use super::hopf::GraphCharacter;
use crate::algebra::Poly;
use crate::rational::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::collections::HashMap;

/// Pseudo-random nonzero rational per canonical graph, reproducible from a seed.
#[derive(Clone, Debug)]
pub struct RandomCharacter {
    seed: u64,
}

impl RandomCharacter {
    pub fn new(seed: u64) -> Self {
        RandomCharacter { seed }
    }
}

impl GraphCharacter<Rational> for RandomCharacter {
    fn value(&self, g: &MultiGraph) -> Rational {
        let g = g.canonical();
        let mut h = Sha256::new();
        h.update(self.seed.to_le_bytes());
        h.update((g.n_vertices() as u64).to_le_bytes());
        for (i, j, k) in g.edge_list() {
            h.update([i as u8, j as u8, k]);
        }
        let mut rng = ChaCha8Rng::from_seed(h.finalize().into());
        let mut num: i64 = rng.gen_range(1..=97);
        if rng.gen_bool(0.5) {
            num = -num;
        }
        let den: i64 = rng.gen_range(1..=13);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Formal character sending each graph to its own indeterminate.
#[derive(Clone, Debug, Default)]
pub struct FormalCharacter;

impl GraphCharacter<Poly<MultiGraph>> for FormalCharacter {
    fn value(&self, g: &MultiGraph) -> Poly<MultiGraph> {
        Poly::var(g.canonical())
    }
}

/// Character given by an explicit table; missing graphs evaluate to zero.
#[derive(Clone, Debug, Default)]
pub struct TableCharacter {
    pub values: HashMap<MultiGraph, Rational>,
}

impl GraphCharacter<Rational> for TableCharacter {
    fn value(&self, g: &MultiGraph) -> Rational {
        self.values.get(&g.canonical()).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feynman::named_graph;

    #[test]
    fn random_is_reproducible_and_relabel_invariant() {
        let g = named_graph("sunsetplus").unwrap();
        let h = g.permuted(&[2, 0, 1]);
        let a = RandomCharacter::new(7);
        assert_eq!(a.value(&g), a.value(&h));
        assert_ne!(a.value(&g), RandomCharacter::new(8).value(&g));
        assert!(a.value(&g) != Rational::default());
    }
}
