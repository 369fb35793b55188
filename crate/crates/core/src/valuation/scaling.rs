use super::config::ValuationConfig;
use super::pi::{Method, PiEvaluator};
use crate::error::{Error, Result};
use crate::feynman::MultiGraph;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ScalingPoint {
    #[serde(rename = "N")]
    pub cutoff: u32,
    pub value: f64,
    pub method: String,
}

/// `Pi_N(G)` for each cutoff in turn; the grid follows `2N + 1` unless fixed in `base`.
pub fn scaling_series(g: &MultiGraph, base: &ValuationConfig, cutoffs: &[u32]) -> Result<Vec<ScalingPoint>> {
    let mut out = Vec::new();
    for &n in cutoffs {
        let ev = PiEvaluator::new(base.with_cutoff(n))?;
        let method = match ev.method(g)? {
            Method::Momentum => "momentum".to_string(),
            Method::XSpace { grid, exact } => format!("xspace(M={grid}{})", if exact { "" } else { ",approx" }),
        };
        out.push(ScalingPoint { cutoff: n, value: ev.value(g)?, method });
    }
    Ok(out)
}

/// Least-squares line `y = a + b x`, returning `(b, a, R^2)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Domain("a fit needs at least two points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let b = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok((b, my - b * mx, r2))
}

/// Slope of `log |Pi_N|` against `log N`.
pub fn loglog_slope(points: &[ScalingPoint]) -> Result<f64> {
    let xs: Vec<f64> = points.iter().map(|p| (p.cutoff as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.value.abs().ln()).collect();
    Ok(linear_fit(&xs, &ys)?.0)
}

/// Fit of `Pi_N` against `log N`: `(slope, intercept, R^2)`.
pub fn log_fit(points: &[ScalingPoint]) -> Result<(f64, f64, f64)> {
    let xs: Vec<f64> = points.iter().map(|p| (p.cutoff as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.value).collect();
    linear_fit(&xs, &ys)
}

pub fn to_csv(points: &[ScalingPoint]) -> String {
    let mut s = String::from("N,value,method\n");
    for p in points {
        s.push_str(&format!("{},{},{}\n", p.cutoff, p.value, p.method));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_a_line() {
        let (b, a, r2) = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((b - 2.0).abs() < 1e-14 && (a - 1.0).abs() < 1e-14 && (r2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn csv_header() {
        let p = ScalingPoint { cutoff: 2, value: 1.5, method: "momentum".into() };
        assert!(to_csv(&[p]).starts_with("N,value,method\n2,"));
    }
}
