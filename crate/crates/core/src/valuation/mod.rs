//! Regularised valuations on the three-torus and the counterterm series built from them.

mod config;
mod counterterms;
mod green;
mod pi;
mod scaling;

pub use config::{CutoffNorm, ValuationConfig};
pub use counterterms::{
    alpha_weight, counterterms, evaluate_sum, logz_expansion, sigma_numeric, vacuum_numeric, CountertermReport, Gap,
    LogzOrder, Thresholds,
};
pub use green::{green_on_grid, green_truncated, GreenTable};
pub use pi::{
    alias_free_grid, pairwise_sum, pi_momentum, pi_xspace, Method, PiEvaluator, DEFAULT_BUDGET, MAX_MOMENTUM_LOOPS,
    MAX_XSPACE_VERTICES,
};
pub use scaling::{linear_fit, log_fit, loglog_slope, scaling_series, to_csv, ScalingPoint};
