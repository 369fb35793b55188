use super::forest::{graph_sum, sum_mul, tensor_mul, unit_sum, DiagramSum, DiagramTensor, GraphForest};
use super::graph::MultiGraph;
use crate::algebra::Coefficient;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// One term `forest (x) quotient` of the reduced coproduct of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub forest: GraphForest,
    pub quotient: MultiGraph,
    pub count: u64,
}

/// Divergence-restricted Hopf algebra of vacuum graphs at a fixed dimension.
///
/// Coproducts and antipodes are memoised per canonical graph.
pub struct HopfContext {
    d: Rational,
    coproducts: Mutex<HashMap<MultiGraph, Arc<Vec<Extraction>>>>,
    antipodes: Mutex<HashMap<MultiGraph, DiagramSum<Rational>>>,
}

impl HopfContext {
    pub fn new(d: Rational) -> Self {
        HopfContext { d, coproducts: Mutex::new(HashMap::new()), antipodes: Mutex::new(HashMap::new()) }
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_divergent(&self, g: &MultiGraph) -> bool {
        !g.degree(&self.d).is_positive()
    }

    pub fn is_divergent_forest(&self, f: &GraphForest) -> bool {
        f.graphs().iter().all(|g| self.is_divergent(g))
    }

    /// Vertex sets (as bitmasks) of proper connected induced subgraphs with at
    /// least two vertices and non-positive degree.
    pub fn divergent_subsets(&self, g: &MultiGraph) -> Vec<u32> {
        let n = g.n_vertices();
        let full = (1u32 << n) - 1;
        let mut out = Vec::new();
        for mask in 1..full {
            if mask.count_ones() < 2 {
                continue;
            }
            let vs = bits(mask);
            let sub = g.induced(&vs);
            if sub.is_connected() && self.is_divergent(&sub) {
                out.push(mask);
            }
        }
        out
    }

    /// Reduced coproduct of a connected graph: all nonempty families of pairwise
    /// vertex-disjoint divergent subgraphs, each contracted to one vertex.
    ///
    /// Components are induced on their vertex sets: any other choice would leave
    /// a self-loop in the quotient, and such graphs vanish under Wick ordering.
    pub fn reduced_coproduct(&self, g: &MultiGraph) -> Arc<Vec<Extraction>> {
        let g = g.canonical();
        if let Some(v) = self.coproducts.lock().unwrap().get(&g) {
            return v.clone();
        }
        let subsets = self.divergent_subsets(&g);
        let mut acc: HashMap<(GraphForest, MultiGraph), u64> = HashMap::new();
        let mut chosen = Vec::new();
        disjoint_families(&subsets, 0, 0, &mut chosen, &mut |fam| {
            let forest = GraphForest::from_graphs(fam.iter().map(|&m| g.induced(&bits(m))));
            let quotient = contract(&g, fam).canonical();
            *acc.entry((forest, quotient)).or_insert(0) += 1;
        });
        let mut v: Vec<Extraction> =
            acc.into_iter().map(|((forest, quotient), count)| Extraction { forest, quotient, count }).collect();
        v.sort_by(|a, b| (&a.forest, &a.quotient).cmp(&(&b.forest, &b.quotient)));
        let v = Arc::new(v);
        self.coproducts.lock().unwrap().insert(g, v.clone());
        v
    }

    pub fn reduced_coproduct_tensor(&self, g: &MultiGraph) -> DiagramTensor<Rational> {
        let mut t = DiagramTensor::zero();
        for e in self.reduced_coproduct(g).iter() {
            t.add_term(
                (e.forest.clone(), GraphForest::single(e.quotient.clone())),
                Rational::from_integer(BigInt::from(e.count)),
            );
        }
        t
    }

    /// Full coproduct of a forest, extended multiplicatively.
    pub fn coproduct_forest(&self, f: &GraphForest) -> DiagramTensor<Rational> {
        let mut t = DiagramTensor::single((GraphForest::unit(), GraphForest::unit()), Rational::one());
        for g in f.graphs() {
            let mut dg = self.reduced_coproduct_tensor(g);
            let single = GraphForest::single(g.clone());
            dg.add_term((single.clone(), GraphForest::unit()), Rational::one());
            dg.add_term((GraphForest::unit(), single), Rational::one());
            t = tensor_mul(&t, &dg);
        }
        t
    }

    /// Reduced coproduct of a forest: the full one minus the two primitive terms.
    pub fn reduced_coproduct_forest(&self, f: &GraphForest) -> DiagramTensor<Rational> {
        let mut t = self.coproduct_forest(f);
        if !f.is_unit() {
            t.add_term((f.clone(), GraphForest::unit()), -Rational::one());
            t.add_term((GraphForest::unit(), f.clone()), -Rational::one());
        }
        t
    }

    pub fn coproduct_sum(&self, s: &DiagramSum<Rational>) -> DiagramTensor<Rational> {
        let mut out = DiagramTensor::zero();
        for (f, c) in s.iter() {
            out.add_scaled(&self.coproduct_forest(f), c);
        }
        out
    }

    pub fn reduced_coproduct_sum(&self, s: &DiagramSum<Rational>) -> DiagramTensor<Rational> {
        let mut out = DiagramTensor::zero();
        for (f, c) in s.iter() {
            out.add_scaled(&self.reduced_coproduct_forest(f), c);
        }
        out
    }

    /// `A(G) = -G - sum A(forest) . (G / forest)` over the reduced coproduct.
    pub fn antipode(&self, g: &MultiGraph) -> DiagramSum<Rational> {
        let g = g.canonical();
        if let Some(v) = self.antipodes.lock().unwrap().get(&g) {
            return v.clone();
        }
        let mut out = graph_sum(&g, -Rational::one());
        for e in self.reduced_coproduct(&g).iter() {
            let af = self.antipode_forest(&e.forest);
            let term = sum_mul(&af, &graph_sum(&e.quotient, Rational::one()));
            out.add_scaled(&term, &-Rational::from_integer(BigInt::from(e.count)));
        }
        self.antipodes.lock().unwrap().insert(g, out.clone());
        out
    }

    pub fn antipode_forest(&self, f: &GraphForest) -> DiagramSum<Rational> {
        f.graphs().iter().fold(unit_sum(), |acc, g| sum_mul(&acc, &self.antipode(g)))
    }

    pub fn antipode_sum(&self, s: &DiagramSum<Rational>) -> DiagramSum<Rational> {
        let mut out = DiagramSum::zero();
        for (f, c) in s.iter() {
            out.add_scaled(&self.antipode_forest(f), c);
        }
        out
    }

    /// Antipode multiplied by the indicator of non-positive degree.
    pub fn twisted_antipode(&self, g: &MultiGraph) -> DiagramSum<Rational> {
        if self.is_divergent(g) {
            self.antipode(g)
        } else {
            DiagramSum::zero()
        }
    }
}

pub(crate) fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn disjoint_families(
    subsets: &[u32],
    start: usize,
    used: u32,
    chosen: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    for i in start..subsets.len() {
        let s = subsets[i];
        if s & used != 0 {
            continue;
        }
        chosen.push(s);
        f(chosen);
        disjoint_families(subsets, i + 1, used | s, chosen, f);
        chosen.pop();
    }
}

/// Contracts each vertex set in `family` to a single vertex, keeping multi-edges.
pub fn contract(g: &MultiGraph, family: &[u32]) -> MultiGraph {
    let n = g.n_vertices();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for &m in family {
        for v in bits(m) {
            label[v] = next;
        }
        next += 1;
    }
    for l in label.iter_mut() {
        if *l == usize::MAX {
            *l = next;
            next += 1;
        }
    }
    let mut q = MultiGraph::empty(next);
    for (i, j, k) in g.edge_list() {
        if label[i] != label[j] {
            q.add_edges(label[i], label[j], k);
        }
    }
    q
}

/// Multiplicative map from connected canonical graphs to a coefficient ring.
pub trait GraphCharacter<C: Coefficient>: Sync {
    fn value(&self, g: &MultiGraph) -> C;

    fn forest_value(&self, f: &GraphForest) -> C {
        f.graphs().iter().fold(C::one(), |acc, g| acc * self.value(g))
    }

    fn sum_value(&self, s: &DiagramSum<Rational>) -> C {
        let mut acc = C::zero();
        for (f, c) in s.iter() {
            acc = acc + self.forest_value(f).scaled(c);
        }
        acc
    }
}

/// Scalar evaluation of `chi o A` by the antipode recursion, memoised per graph.
pub struct CharacterAntipode<'a, C: Coefficient, X: GraphCharacter<C>> {
    ctx: &'a HopfContext,
    chi: &'a X,
    memo: Mutex<HashMap<MultiGraph, C>>,
}

impl<'a, C: Coefficient, X: GraphCharacter<C>> CharacterAntipode<'a, C, X> {
    pub fn new(ctx: &'a HopfContext, chi: &'a X) -> Self {
        CharacterAntipode { ctx, chi, memo: Mutex::new(HashMap::new()) }
    }

    pub fn context(&self) -> &HopfContext {
        self.ctx
    }

    pub fn character(&self) -> &X {
        self.chi
    }

    pub fn antipode(&self, g: &MultiGraph) -> C {
        let g = g.canonical();
        if let Some(v) = self.memo.lock().unwrap().get(&g) {
            return v.clone();
        }
        let mut acc = -self.chi.value(&g);
        for e in self.ctx.reduced_coproduct(&g).iter() {
            let t = self.antipode_forest(&e.forest) * self.chi.value(&e.quotient);
            acc = acc - t.scaled(&Rational::from_integer(BigInt::from(e.count)));
        }
        self.memo.lock().unwrap().insert(g, acc.clone());
        acc
    }

    pub fn antipode_forest(&self, f: &GraphForest) -> C {
        f.graphs().iter().fold(C::one(), |acc, g| acc * self.antipode(g))
    }

    pub fn antipode_sum(&self, s: &DiagramSum<Rational>) -> C {
        let mut acc = C::zero();
        for (f, c) in s.iter() {
            acc = acc + self.antipode_forest(f).scaled(c);
        }
        acc
    }

    pub fn twisted(&self, g: &MultiGraph) -> C {
        if self.ctx.is_divergent(g) {
            self.antipode(g)
        } else {
            C::zero()
        }
    }

    pub fn twisted_forest(&self, f: &GraphForest) -> C {
        f.graphs().iter().fold(C::one(), |acc, g| acc * self.twisted(g))
    }

    pub fn twisted_sum(&self, s: &DiagramSum<Rational>) -> C {
        let mut acc = C::zero();
        for (f, c) in s.iter() {
            acc = acc + self.twisted_forest(f).scaled(c);
        }
        acc
    }

    /// `(chi A~ (x) chi) Delta_CK (G)` evaluated term by term.
    pub fn bphz_valuation(&self, g: &MultiGraph) -> C {
        let delta = self.ctx.coproduct_forest(&GraphForest::single(g.clone()));
        let mut acc = C::zero();
        for ((l, r), c) in delta.iter() {
            let t = self.twisted_forest(l) * self.chi.forest_value(r);
            acc = acc + t.scaled(c);
        }
        acc
    }
}
