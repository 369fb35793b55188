use super::config::ValuationConfig;
use super::pi::{PiEvaluator, MAX_MOMENTUM_LOOPS, MAX_XSPACE_VERTICES};
use crate::error::{Error, Result};
use crate::feynman::{DiagramSum, GraphForest, HopfContext, MultiGraph};
use crate::multiindex::{n_star_e, n_star_m, p_map, p_map_sum, y_generator, MultiIndex};
use crate::rational::{factorial, to_f64, Rational};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

/// Largest vertex count any numeric backend can handle.
fn vertex_cap() -> u32 {
    MAX_XSPACE_VERTICES.max(MAX_MOMENTUM_LOOPS) as u32
}

fn graphs_of(s: &DiagramSum<Rational>) -> BTreeSet<MultiGraph> {
    s.keys().flat_map(|f| f.graphs().iter().cloned()).collect()
}

/// `Pi_N` applied to an exact combination of forests.
pub fn evaluate_sum(ev: &PiEvaluator, s: &DiagramSum<Rational>) -> Result<f64> {
    let gs = graphs_of(s);
    ev.feasible(gs.iter())?;
    let mut terms = Vec::with_capacity(s.len());
    for (f, c) in s.iter() {
        let mut v = to_f64(c);
        for g in f.graphs() {
            v *= ev.value(g)?;
        }
        terms.push(v);
    }
    Ok(super::pi::pairwise_sum(&terms))
}

fn forest_graph_count(f: &GraphForest) -> usize {
    f.graphs().len()
}

/// `Pi_N A (D)` for an exact diagram sum, after a cheap size pre-check on the top graphs.
fn antipode_value(ctx: &HopfContext, ev: &PiEvaluator, top: &DiagramSum<Rational>) -> Result<f64> {
    let a = ctx.antipode_sum(top);
    debug_assert!(a.keys().all(|f| forest_graph_count(f) >= 1));
    evaluate_sum(ev, &a)
}

/// `sigma_n(N) = -Pi_N A P_M(Y_n)` for `2 <= n <= n*_m(d)`.
pub fn sigma_numeric(n: u32, ctx: &HopfContext, ev: &PiEvaluator) -> Result<f64> {
    let nm = n_star_m(ctx.d())?;
    if n < 2 || n > nm {
        return Err(Error::Domain(format!("sigma_n is defined for 2 <= n <= {nm}, got {n}")));
    }
    if n > vertex_cap() {
        return Err(Error::SizeLimit(format!("Y_{n} has {n}-vertex diagrams, beyond the numeric backends")));
    }
    let top = p_map_sum(&y_generator(n))?;
    Ok(-antipode_value(ctx, ev, &top)?)
}

/// `Pi_N A P(X^n)`.
pub fn vacuum_numeric(n: u32, ctx: &HopfContext, ev: &PiEvaluator) -> Result<f64> {
    if n > vertex_cap() {
        return Err(Error::SizeLimit(format!("P(X^{n}) has {n}-vertex diagrams, beyond the numeric backends")));
    }
    let top = p_map(&MultiIndex::from_pairs(&[(4, n)]))?;
    antipode_value(ctx, ev, &top)
}

/// `(-alpha)^n / n!`.
pub fn alpha_weight(alpha: f64, n: u32) -> f64 {
    (-alpha).powi(n as i32) / factorial(n).to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Gap {
    pub quantity: String,
    pub n: u32,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogzOrder {
    pub n: u32,
    /// Orders up to `n*_e` cancel exactly against the energy counterterm.
    pub cancelled: bool,
    /// `Pi_N A P(X^n)` at the configured cutoff.
    pub value: Option<f64>,
    /// The same at twice the cutoff.
    pub value_doubled: Option<f64>,
    pub relative_change: Option<f64>,
    /// `-((-alpha)^n / n!) Pi_N A P(X^n)`, zero when cancelled.
    pub contribution: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Thresholds {
    pub n_star_e: u32,
    pub n_star_m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountertermReport {
    pub config: ValuationConfig,
    pub alpha: f64,
    pub thresholds: Thresholds,
    pub sigma: BTreeMap<u32, f64>,
    /// `Pi_N A P(X^n)` for the orders entering the energy counterterm.
    pub vacuum: BTreeMap<u32, f64>,
    pub beta: f64,
    pub gamma: f64,
    pub logz: BTreeMap<u32, LogzOrder>,
    pub gaps: Vec<Gap>,
    pub runtime_ms: u128,
}

impl CountertermReport {
    pub fn is_complete(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

fn record<T>(gaps: &mut Vec<Gap>, quantity: &str, n: u32, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::SizeLimit(_)) => {
            gaps.push(Gap { quantity: quantity.into(), n, reason: e.to_string() });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Per-order renormalised log-partition terms with an N versus 2N stability check.
pub fn logz_expansion(cfg: &ValuationConfig, alpha: f64, nmax: u32) -> Result<(BTreeMap<u32, LogzOrder>, Vec<Gap>)> {
    let ctx = HopfContext::new(cfg.d.clone());
    let ne = n_star_e(&cfg.d)?;
    let ev = PiEvaluator::new(cfg.clone())?;
    let ev2 = PiEvaluator::new(cfg.with_cutoff(2 * cfg.cutoff))?;
    let mut out = BTreeMap::new();
    let mut gaps = Vec::new();
    for n in 1..=nmax {
        if n <= ne {
            out.insert(
                n,
                LogzOrder {
                    n,
                    cancelled: true,
                    value: None,
                    value_doubled: None,
                    relative_change: None,
                    contribution: Some(0.0),
                },
            );
            continue;
        }
        let v = record(&mut gaps, "logz", n, vacuum_numeric(n, &ctx, &ev))?;
        let v2 = match v {
            Some(_) => record(&mut gaps, "logz_doubled", n, vacuum_numeric(n, &ctx, &ev2))?,
            None => None,
        };
        let relative_change = match (v, v2) {
            (Some(a), Some(b)) if a != 0.0 => Some((b - a).abs() / a.abs()),
            (Some(a), Some(b)) if a == b => Some(0.0),
            _ => None,
        };
        let contribution = v.map(|x| -alpha_weight(alpha, n) * x);
        out.insert(n, LogzOrder { n, cancelled: false, value: v, value_doubled: v2, relative_change, contribution });
    }
    Ok((out, gaps))
}

/// Mass and energy counterterms plus the log-partition orders up to `logz_order`.
pub fn counterterms(cfg: &ValuationConfig, alpha: f64, logz_order: u32) -> Result<CountertermReport> {
    let start = Instant::now();
    let ctx = HopfContext::new(cfg.d.clone());
    let ev = PiEvaluator::new(cfg.clone())?;
    let ne = n_star_e(&cfg.d)?;
    let nm = n_star_m(&cfg.d)?;
    let mut gaps = Vec::new();
    let mut sigma = BTreeMap::new();
    for n in 2..=nm {
        if let Some(v) = record(&mut gaps, "sigma", n, sigma_numeric(n, &ctx, &ev))? {
            sigma.insert(n, v);
        }
    }
    let mut vacuum = BTreeMap::new();
    for n in 2..=ne {
        if let Some(v) = record(&mut gaps, "vacuum", n, vacuum_numeric(n, &ctx, &ev))? {
            vacuum.insert(n, v);
        }
    }
    let beta = sigma.iter().map(|(&n, s)| alpha_weight(alpha, n) * s).sum();
    let gamma = -vacuum.iter().map(|(&n, v)| alpha_weight(alpha, n) * v).sum::<f64>();
    let (logz, more) = if logz_order > 0 { logz_expansion(cfg, alpha, logz_order)? } else { Default::default() };
    gaps.extend(more);
    Ok(CountertermReport {
        config: cfg.clone(),
        alpha,
        thresholds: Thresholds { n_star_e: ne, n_star_m: nm },
        sigma,
        vacuum,
        beta,
        gamma,
        logz,
        gaps,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feynman::named_graph;
    use crate::rational::{frac, int};

    #[test]
    fn sigma2_at_three_is_a_multiple_of_the_sunset() {
        let cfg = ValuationConfig::new(int(3), 2).unwrap();
        let ctx = HopfContext::new(int(3));
        let ev = PiEvaluator::new(cfg).unwrap();
        let s2 = sigma_numeric(2, &ctx, &ev).unwrap();
        let sunset = ev.value(&named_graph("sunset").unwrap()).unwrap();
        assert!((s2 - 96.0 * sunset).abs() < 1e-12 * s2.abs());
        assert!(sigma_numeric(3, &ctx, &ev).is_err());
    }

    #[test]
    fn report_at_three() {
        let cfg = ValuationConfig::new(int(3), 1).unwrap();
        let r = counterterms(&cfg, 0.1, 0).unwrap();
        assert_eq!(r.sigma.keys().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(r.vacuum.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert!((r.beta - 0.005 * r.sigma[&2]).abs() < 1e-15);
        assert!(r.is_complete());
    }

    #[test]
    fn large_thresholds_are_reported_as_gaps() {
        let cfg = ValuationConfig::new(frac(39, 10), 1).unwrap();
        let r = counterterms(&cfg, 0.1, 0).unwrap();
        assert_eq!(r.thresholds.n_star_m, 20);
        assert!(r.gaps.iter().any(|g| g.quantity == "sigma" && g.n == 20));
        assert!(r.sigma.contains_key(&2));
    }

    #[test]
    fn zero_coupling_logz_vanishes() {
        let cfg = ValuationConfig::new(frac(5, 2), 1).unwrap();
        let (t, _) = logz_expansion(&cfg, 0.0, 2).unwrap();
        assert!(t[&1].cancelled);
        assert_eq!(t[&2].contribution, Some(0.0));
    }
}
