use super::graph::MultiGraph;
use crate::algebra::{Coefficient, LinComb};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_exact, Rational};
use serde_json::{json, Value};
use std::fmt;

/// Commutative product of connected canonical graphs; the empty forest is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GraphForest(Vec<MultiGraph>);

impl GraphForest {
    pub fn unit() -> Self {
        GraphForest(Vec::new())
    }

    pub fn single(g: MultiGraph) -> Self {
        GraphForest(vec![g.canonical()])
    }

    pub fn from_graphs(gs: impl IntoIterator<Item = MultiGraph>) -> Self {
        let mut v: Vec<MultiGraph> = gs.into_iter().map(|g| g.canonical()).collect();
        v.sort();
        GraphForest(v)
    }

    /// Splits an arbitrary graph into canonical connected components.
    pub fn from_graph(g: &MultiGraph) -> Self {
        Self::from_graphs(g.components().iter().map(|c| g.induced(c)))
    }

    pub fn graphs(&self) -> &[MultiGraph] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        GraphForest(v)
    }

    pub fn degree(&self, d: &Rational) -> Rational {
        self.0.iter().map(|g| g.degree(d)).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|g| g.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("forest must be an array".into()))?;
        let gs = arr.iter().map(MultiGraph::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_graphs(gs))
    }
}

impl fmt::Debug for GraphForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("{g:?}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

pub type DiagramSum<C> = LinComb<GraphForest, C>;
pub type DiagramTensor<C> = LinComb<(GraphForest, GraphForest), C>;

pub fn graph_sum<C: Coefficient>(g: &MultiGraph, c: C) -> DiagramSum<C> {
    DiagramSum::single(GraphForest::single(g.clone()), c)
}

pub fn unit_sum<C: Coefficient>() -> DiagramSum<C> {
    DiagramSum::single(GraphForest::unit(), C::one())
}

pub fn sum_mul<C: Coefficient>(a: &DiagramSum<C>, b: &DiagramSum<C>) -> DiagramSum<C> {
    let mut out = DiagramSum::zero();
    for (fa, ca) in a.iter() {
        for (fb, cb) in b.iter() {
            out.add_term(fa.mul(fb), ca.clone() * cb.clone());
        }
    }
    out
}

pub fn tensor_mul<C: Coefficient>(a: &DiagramTensor<C>, b: &DiagramTensor<C>) -> DiagramTensor<C> {
    let mut out = DiagramTensor::zero();
    for ((l1, r1), c1) in a.iter() {
        for ((l2, r2), c2) in b.iter() {
            out.add_term((l1.mul(l2), r1.mul(r2)), c1.clone() * c2.clone());
        }
    }
    out
}

pub fn sum_to_json(s: &DiagramSum<Rational>) -> Value {
    Value::Array(
        s.iter()
            .map(|(f, c)| json!({"coefficient": format_rational(c), "forest": f.to_json()}))
            .collect(),
    )
}

pub fn sum_from_json(v: &Value) -> Result<DiagramSum<Rational>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("diagram sum must be an array".into()))?;
    let mut out = DiagramSum::zero();
    for t in arr {
        let c = t["coefficient"].as_str().ok_or_else(|| Error::Parse("missing coefficient".into()))?;
        out.add_term(GraphForest::from_json(&t["forest"])?, parse_exact(c)?);
    }
    Ok(out)
}

pub fn tensor_to_json(s: &DiagramTensor<Rational>) -> Value {
    Value::Array(
        s.iter()
            .map(|((l, r), c)| json!({"coefficient": format_rational(c), "left": l.to_json(), "right": r.to_json()}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feynman::named_graph;
    use crate::rational::int;

    #[test]
    fn forest_product_commutes() {
        let a = GraphForest::single(named_graph("sunset").unwrap());
        let b = GraphForest::single(named_graph("doubleedge").unwrap());
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&GraphForest::unit()), a);
    }

    #[test]
    fn sum_json_round_trip() {
        let mut s = graph_sum(&named_graph("sunset").unwrap(), int(6));
        s.add_term(GraphForest::unit(), int(-1));
        assert_eq!(sum_from_json(&sum_to_json(&s)).unwrap(), s);
    }
}
