use super::config::ValuationConfig;
use crate::error::Result;
use std::f64::consts::PI;

/// Truncated Green function tabulated on the uniform `M^3` grid of the unit torus.
#[derive(Clone, Debug)]
pub struct GreenTable {
    grid: usize,
    values: Vec<f64>,
}

impl GreenTable {
    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn index(&self, p: [usize; 3]) -> usize {
        (p[0] * self.grid + p[1]) * self.grid + p[2]
    }

    pub fn at(&self, p: [usize; 3]) -> f64 {
        self.values[self.index(p)]
    }

    /// Grid point of `p - q` (componentwise mod `M`).
    pub fn diff(&self, p: [usize; 3], q: [usize; 3]) -> [usize; 3] {
        let m = self.grid;
        [(p[0] + m - q[0]) % m, (p[1] + m - q[1]) % m, (p[2] + m - q[2]) % m]
    }

    pub fn point(&self, i: usize) -> [usize; 3] {
        let m = self.grid;
        [i / (m * m), (i / m) % m, i % m]
    }
}

/// `G(x) = sum_{k in cutoff ball} cos(2 pi k.x) prop(k)` on the configured grid.
pub fn green_truncated(cfg: &ValuationConfig) -> Result<GreenTable> {
    cfg.validate()?;
    Ok(green_on_grid(cfg, cfg.grid))
}

/// As [`green_truncated`] with an explicit grid size, which must still be at least `2N + 1`.
pub fn green_on_grid(cfg: &ValuationConfig, grid: usize) -> GreenTable {
    let n = cfg.cutoff as i32;
    let w = (2 * n + 1) as usize;
    let m = grid;
    // the propagator is even in every component, so only cosines survive
    let cos: Vec<Vec<f64>> = (-n..=n)
        .map(|k| (0..m).map(|x| (2.0 * PI * k as f64 * x as f64 / m as f64).cos()).collect())
        .collect();
    let mut a1 = vec![0.0; w * w * m];
    for i in 0..w {
        for j in 0..w {
            for l in 0..w {
                let p = cfg.propagator([i as i32 - n, j as i32 - n, l as i32 - n]);
                if p == 0.0 {
                    continue;
                }
                for x in 0..m {
                    a1[(i * w + j) * m + x] += p * cos[l][x];
                }
            }
        }
    }
    let mut a2 = vec![0.0; w * m * m];
    for i in 0..w {
        for j in 0..w {
            for y in 0..m {
                let c = cos[j][y];
                for x in 0..m {
                    a2[(i * m + y) * m + x] += c * a1[(i * w + j) * m + x];
                }
            }
        }
    }
    let mut values = vec![0.0; m * m * m];
    for i in 0..w {
        for z in 0..m {
            let c = cos[i][z];
            for yx in 0..m * m {
                values[z * m * m + yx] += c * a2[i * m * m + yx];
            }
        }
    }
    GreenTable { grid: m, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn zero_cutoff_is_constant() {
        let cfg = ValuationConfig::new(int(3), 0).unwrap();
        let g = green_on_grid(&cfg, 5);
        assert!(g.values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn matches_direct_sum_and_is_even() {
        let cfg = ValuationConfig::new(frac(7, 2), 2).unwrap();
        let g = green_truncated(&cfg).unwrap();
        let m = g.grid();
        for i in [0, 7, 31, 77, 124] {
            let p = g.point(i);
            let direct: f64 = cfg
                .modes()
                .iter()
                .map(|k| {
                    let phase: f64 = (0..3).map(|a| k[a] as f64 * p[a] as f64 / m as f64).sum();
                    (2.0 * PI * phase).cos() * cfg.propagator(*k)
                })
                .sum();
            assert!((g.at(p) - direct).abs() < 1e-12);
            let neg = g.diff([0, 0, 0], p);
            assert!((g.at(p) - g.at(neg)).abs() < 1e-14);
        }
    }
}
