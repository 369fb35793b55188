use crate::algebra::{Coefficient, LinComb};
use crate::error::{Error, Result};
use crate::feynman::{GraphForest, MultiGraph};
use crate::rational::{factorial, format_rational, Rational};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt;

/// Monomial `z^beta = prod_k z_k^{beta(k)}`: a multiset of vertex arities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(BTreeMap<u32, u32>);

impl MultiIndex {
    pub fn unit() -> Self {
        MultiIndex(BTreeMap::new())
    }

    pub fn z(k: u32) -> Self {
        Self::from_pairs(&[(k, 1)])
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &(k, e) in pairs {
            if e > 0 {
                *m.entry(k).or_insert(0) += e;
            }
        }
        MultiIndex(m)
    }

    pub fn from_arities(arities: &[u32]) -> Self {
        let mut m = BTreeMap::new();
        for &k in arities {
            *m.entry(k).or_insert(0) += 1;
        }
        MultiIndex(m)
    }

    pub fn get(&self, k: u32) -> u32 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(k, e)| (*k, *e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, e) in &other.0 {
            *m.entry(*k).or_insert(0) += e;
        }
        MultiIndex(m)
    }

    /// `self - other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut m = self.0.clone();
        for (k, e) in &other.0 {
            let cur = m.get_mut(k)?;
            if *cur < *e {
                return None;
            }
            *cur -= e;
            if *cur == 0 {
                m.remove(k);
            }
        }
        Some(MultiIndex(m))
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of vertices `|beta|`.
    pub fn len(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of legs `sum_k k beta(k)`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(k, e)| k * e).sum()
    }

    pub fn arities(&self) -> Vec<u32> {
        self.0.iter().flat_map(|(k, e)| std::iter::repeat(*k).take(*e as usize)).collect()
    }

    /// `d (|beta| - 1) - (d - 2)/2 sum_k k beta(k)`.
    pub fn degree(&self, d: &Rational) -> Rational {
        let two = Rational::from_integer(2.into());
        let v = Rational::from_integer(BigInt::from(self.len() as i64 - 1));
        let w = Rational::from_integer(BigInt::from(self.weight()));
        d * v - (d - &two) / two * w
    }

    /// `S_M = prod_k beta(k)! (k!)^{beta(k)}`.
    pub fn symmetry_factor(&self) -> BigInt {
        self.0
            .iter()
            .map(|(k, e)| factorial(*e) * num_traits::pow(factorial(*k), *e as usize))
            .product()
    }

    /// Whether some connected loop-free multigraph has exactly these arities.
    pub fn is_realisable(&self) -> bool {
        let v = self.len();
        let w = self.weight();
        if v == 0 || w % 2 == 1 {
            return false;
        }
        if v == 1 {
            return w == 0;
        }
        let max = self.0.keys().next_back().copied().unwrap_or(0);
        self.get(0) == 0 && 2 * max <= w && w / 2 >= v - 1
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, e) in &self.0 {
            m.insert(k.to_string(), json!(e));
        }
        json!({ "beta": m })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v["beta"].as_object().ok_or_else(|| Error::Parse("multi-index needs a \"beta\" object".into()))?;
        let mut pairs = Vec::new();
        for (k, e) in obj {
            let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad arity {k:?}")))?;
            let e = e.as_u64().ok_or_else(|| Error::Parse("exponents must be integers".into()))? as u32;
            pairs.push((k, e));
        }
        Ok(Self::from_pairs(&pairs))
    }

    pub fn render(&self, latex: bool) -> String {
        if self.is_unit() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, e)| match (latex, e) {
                (true, 1) => format!("z_{{{k}}}"),
                (true, _) => format!("z_{{{k}}}^{{{e}}}"),
                (false, 1) => format!("z{k}"),
                (false, _) => format!("z{k}^{e}"),
            })
            .collect();
        parts.join(if latex { " " } else { "" })
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// Commutative forest product of nonempty multi-indices; empty is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MIForest(Vec<MultiIndex>);

impl MIForest {
    pub fn unit() -> Self {
        MIForest(Vec::new())
    }

    pub fn single(b: MultiIndex) -> Self {
        if b.is_unit() {
            Self::unit()
        } else {
            MIForest(vec![b])
        }
    }

    pub fn from_indices(v: impl IntoIterator<Item = MultiIndex>) -> Self {
        let mut v: Vec<MultiIndex> = v.into_iter().filter(|b| !b.is_unit()).collect();
        v.sort();
        MIForest(v)
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        MIForest(v)
    }

    pub fn degree(&self, d: &Rational) -> Rational {
        self.0.iter().map(|b| b.degree(d)).sum()
    }

    /// `prod_i r_i! S_M(beta_i)^{r_i}` over distinct factors with multiplicity `r_i`.
    pub fn symmetry_factor(&self) -> BigInt {
        let mut s = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let mut r = 1;
            while i + r < self.0.len() && self.0[i + r] == self.0[i] {
                r += 1;
            }
            s *= factorial(r as u32) * num_traits::pow(self.0[i].symmetry_factor(), r);
            i += r;
        }
        s
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|b| b.to_json()).collect())
    }

    pub fn render(&self, latex: bool) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self.0.iter().map(|b| b.render(latex)).collect();
        parts.join(if latex { " \\cdot " } else { " . " })
    }
}

impl fmt::Debug for MIForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

pub type MISum<C> = LinComb<MIForest, C>;
pub type MITensor<C> = LinComb<(MIForest, MIForest), C>;
/// Ordinary polynomial in the variables `z_k`.
pub type MIPoly<C> = LinComb<MultiIndex, C>;

pub fn mi_sum_mul<C: Coefficient>(a: &MISum<C>, b: &MISum<C>) -> MISum<C> {
    let mut out = MISum::zero();
    for (fa, ca) in a.iter() {
        for (fb, cb) in b.iter() {
            out.add_term(fa.mul(fb), ca.clone() * cb.clone());
        }
    }
    out
}

pub fn mi_sum_pow<C: Coefficient>(a: &MISum<C>, e: u32) -> MISum<C> {
    let mut acc = MISum::single(MIForest::unit(), C::one());
    for _ in 0..e {
        acc = mi_sum_mul(&acc, a);
    }
    acc
}

/// Counting map: the multiset of vertex arities.
pub fn counting_map(g: &MultiGraph) -> MultiIndex {
    MultiIndex::from_arities(&g.arities())
}

pub fn counting_map_forest(f: &GraphForest) -> MIForest {
    MIForest::from_indices(f.graphs().iter().map(counting_map))
}

pub fn tensor_to_json(t: &MITensor<Rational>) -> Value {
    Value::Array(
        t.iter()
            .map(|((l, r), c)| {
                let right = match r.indices() {
                    [] => MultiIndex::unit().to_json(),
                    [b] => b.to_json(),
                    _ => r.to_json(),
                };
                json!({"coefficient": format_rational(c), "left": l.to_json(), "right": right})
            })
            .collect(),
    )
}

pub fn sum_to_json(s: &MISum<Rational>) -> Value {
    Value::Array(s.iter().map(|(f, c)| json!({"coefficient": format_rational(c), "forest": f.to_json()})).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn degree_examples() {
        let b = MultiIndex::from_pairs(&[(3, 2), (4, 1)]);
        let d = frac(7, 2);
        assert_eq!(b.degree(&d), int(10) - int(3) * d);
        assert_eq!(MultiIndex::from_pairs(&[(3, 2)]).degree(&int(3)), int(0));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(MultiIndex::from_pairs(&[(3, 2)]).symmetry_factor(), BigInt::from(72));
        for n in 1..5u32 {
            let expect = factorial(n) * num_traits::pow(BigInt::from(24), n as usize);
            assert_eq!(MultiIndex::from_pairs(&[(4, n)]).symmetry_factor(), expect);
        }
        let z = MultiIndex::from_pairs(&[(3, 2)]);
        let f = MIForest::from_indices([z.clone(), z]);
        assert_eq!(f.symmetry_factor(), BigInt::from(2 * 72 * 72));
    }

    #[test]
    fn realisability() {
        assert!(!MultiIndex::from_pairs(&[(2, 1), (4, 1)]).is_realisable());
        assert!(!MultiIndex::z(2).is_realisable());
        assert!(MultiIndex::from_pairs(&[(2, 2)]).is_realisable());
        assert!(MultiIndex::from_pairs(&[(2, 1), (4, 2)]).is_realisable());
        assert!(!MultiIndex::from_pairs(&[(3, 1), (4, 1)]).is_realisable());
    }

    #[test]
    fn json_round_trip() {
        let b = MultiIndex::from_pairs(&[(2, 1), (4, 3)]);
        assert_eq!(b.to_json(), json!({"beta": {"2": 1, "4": 3}}));
        assert_eq!(MultiIndex::from_json(&b.to_json()).unwrap(), b);
    }
}
