use crate::error::{Error, Result};
use crate::rational::{frac, int, to_f64, Rational};
use serde::{Deserialize, Serialize};

/// Norm used to truncate Fourier modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CutoffNorm {
    #[default]
    L1,
    L2,
    Linf,
}

impl CutoffNorm {
    pub fn contains(&self, k: [i32; 3], n: u32) -> bool {
        let n = n as i64;
        let [a, b, c] = k.map(|x| (x as i64).abs());
        match self {
            CutoffNorm::L1 => a + b + c <= n,
            CutoffNorm::L2 => a * a + b * b + c * c <= n * n,
            CutoffNorm::Linf => a.max(b).max(c) <= n,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(CutoffNorm::L1),
            "l2" => Ok(CutoffNorm::L2),
            "linf" => Ok(CutoffNorm::Linf),
            _ => Err(Error::Parse(format!("unknown cutoff norm {s:?}"))),
        }
    }
}

/// Numeric parameters of the regularised valuation on the three-torus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValuationConfig {
    #[serde(with = "crate::rational::as_string")]
    pub d: Rational,
    pub m: f64,
    #[serde(rename = "N")]
    pub cutoff: u32,
    pub s: f64,
    #[serde(rename = "M")]
    pub grid: usize,
    pub norm: CutoffNorm,
}

impl ValuationConfig {
    /// Defaults: `m = 1`, `s = (7 - d)/4`, `M = 2N + 1`, l1 cutoff.
    pub fn new(d: Rational, cutoff: u32) -> Result<Self> {
        if d <= int(2) || d >= int(4) {
            return Err(Error::Domain(format!("valuations need d in (2, 4), got {d}")));
        }
        let s = to_f64(&((int(7) - &d) * frac(1, 4)));
        Ok(ValuationConfig { d, m: 1.0, cutoff, s, grid: 2 * cutoff as usize + 1, norm: CutoffNorm::L1 })
    }

    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        let grid = if self.grid == 2 * self.cutoff as usize + 1 { 2 * cutoff as usize + 1 } else { self.grid };
        ValuationConfig { cutoff, grid, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0) || !(self.m > 0.0) {
            return Err(Error::Domain("s and m must be positive".into()));
        }
        if self.grid < 2 * self.cutoff as usize + 1 {
            return Err(Error::Aliasing { grid: self.grid, cutoff: self.cutoff as usize });
        }
        Ok(())
    }

    /// `(4 pi^2 |k|_2^2 + m^2)^{-s}` inside the cutoff ball, zero outside.
    pub fn propagator(&self, k: [i32; 3]) -> f64 {
        if !self.norm.contains(k, self.cutoff) {
            return 0.0;
        }
        let k2: f64 = k.iter().map(|&x| (x as f64) * (x as f64)).sum();
        (4.0 * std::f64::consts::PI.powi(2) * k2 + self.m * self.m).powf(-self.s)
    }

    /// All modes kept by the cutoff.
    pub fn modes(&self) -> Vec<[i32; 3]> {
        let n = self.cutoff as i32;
        let mut out = Vec::new();
        for a in -n..=n {
            for b in -n..=n {
                for c in -n..=n {
                    if self.norm.contains([a, b, c], self.cutoff) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }
}
