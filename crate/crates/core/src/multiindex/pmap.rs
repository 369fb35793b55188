use super::index::{MIForest, MISum, MITensor, MultiIndex};
use crate::algebra::Coefficient;
use crate::error::Result;
use crate::feynman::{enumerate_connected_graphs, sum_mul, unit_sum, DiagramSum, DiagramTensor, GraphForest};
use crate::rational::Rational;

/// `P_M(z^beta) = sum_{Phi(G) = beta} (S_M / S_F) G`.
pub fn p_map(beta: &MultiIndex) -> Result<DiagramSum<Rational>> {
    if beta.is_unit() {
        return Ok(unit_sum());
    }
    let sm = beta.symmetry_factor();
    let mut out = DiagramSum::zero();
    for g in enumerate_connected_graphs(&beta.arities())? {
        let c = Rational::new(sm.clone(), g.symmetry_factor());
        out.add_term(GraphForest::single(g), c);
    }
    Ok(out)
}

pub fn p_map_forest(f: &MIForest) -> Result<DiagramSum<Rational>> {
    let mut acc = unit_sum();
    for b in f.indices() {
        acc = sum_mul(&acc, &p_map(b)?);
    }
    Ok(acc)
}

pub fn p_map_sum<C: Coefficient>(s: &MISum<C>) -> Result<DiagramSum<C>> {
    let mut out = DiagramSum::zero();
    for (f, c) in s.iter() {
        for (g, q) in p_map_forest(f)?.iter() {
            out.add_term(g.clone(), c.scaled(q));
        }
    }
    Ok(out)
}

/// `(P_M (x) P_M)` applied to a tensor.
pub fn p_map_tensor<C: Coefficient>(t: &MITensor<C>) -> Result<DiagramTensor<C>> {
    let mut out = DiagramTensor::zero();
    for ((l, r), c) in t.iter() {
        let pl = p_map_forest(l)?;
        let pr = p_map_forest(r)?;
        for (gl, ql) in pl.iter() {
            for (gr, qr) in pr.iter() {
                out.add_term((gl.clone(), gr.clone()), c.scaled(&(ql * qr)));
            }
        }
    }
    Ok(out)
}
