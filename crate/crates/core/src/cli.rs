//! Command-line front end.

use crate::error::{Error, Result};
use crate::exact_algebra::Functional;
use crate::feynman::resolve_graph;
use crate::multiindex::{
    coproduct_mi_closed, coproduct_mi_extended, coproduct_mi_general, n_star_e, tensor_to_json, MITensor,
};
use crate::rational::{format_rational, parse_exact, parse_rational, Rational};
use crate::valuation::{
    counterterms, log_fit, loglog_slope, pi_momentum, pi_xspace, scaling_series, to_csv, CutoffNorm, Method,
    PiEvaluator, ValuationConfig, DEFAULT_BUDGET,
};
use crate::verify::{verify, Perturbation, VerifyOptions};
use crate::wick::{bell_complete, bell_partial, render_bell, render_formal, wick_map, wick_map_formal};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;

pub const EXIT_MISMATCH: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "renorm", version, about = "Wick renormalisation of the vacuum phi^4 model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Auto,
    Xspace,
    Momentum,
}

#[derive(clap::Args, Debug, Clone)]
pub struct NumericArgs {
    /// Dimension; decimals such as 3.9 are accepted here.
    #[arg(long)]
    pub d: String,
    /// Fourier cutoff.
    #[arg(long = "N", default_value_t = 4)]
    pub cutoff: u32,
    /// Grid points per torus axis (default 2N+1).
    #[arg(long = "M")]
    pub grid: Option<usize>,
    /// Mass.
    #[arg(long = "m", default_value_t = 1.0)]
    pub mass: f64,
    /// Propagator exponent (default (7-d)/4).
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value = "l1")]
    pub norm: String,
    /// Cap on summand evaluations per graph.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: f64,
}

impl NumericArgs {
    pub fn config(&self) -> Result<ValuationConfig> {
        let mut cfg = ValuationConfig::new(parse_rational(&self.d)?, self.cutoff)?;
        cfg.m = self.mass;
        if let Some(s) = self.s {
            cfg.s = s;
        }
        if let Some(m) = self.grid {
            cfg.grid = m;
        }
        cfg.norm = CutoffNorm::parse(&self.norm)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complete or partial Bell polynomial.
    Bell {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Wick map of X^n, formal in sigma or for given moments.
    Wick {
        #[arg(long)]
        n: u32,
        /// Comma separated moments mu(1), mu(X), mu(X^2), ...
        #[arg(long)]
        moments: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduced multi-index coproduct of z_4^n.
    Coproduct {
        #[arg(long)]
        n: u32,
        /// Dimension as an exact rational such as 18/5.
        #[arg(long)]
        d: String,
        /// Recompute term by term and compare with the closed form.
        #[arg(long)]
        oracle: bool,
        /// Allow family sizes up to n-1.
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that the polynomial, multi-index and graph renormalisations agree.
    Verify {
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of consecutive seeds to run.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, hide = true, default_value = "none")]
        perturb: String,
    },
    /// Mass and energy counterterms and the renormalised log-partition orders.
    Counterterms {
        #[command(flatten)]
        num: NumericArgs,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        /// Highest log-partition order (default n*_e + 1, at most 4).
        #[arg(long)]
        logz_order: Option<u32>,
    },
    /// Regularised valuation of one graph.
    Valuate {
        /// Registry name or inline JSON.
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        num: NumericArgs,
        #[arg(long, value_enum, default_value_t = Backend::Auto)]
        backend: Backend,
    },
    /// Valuations over a list of cutoffs.
    Scaling {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        d: String,
        /// Comma separated cutoffs.
        #[arg(long = "N", default_value = "2,4,8,16")]
        cutoffs: String,
        #[arg(long = "m", default_value_t = 1.0)]
        mass: f64,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Rendered output and exit code of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad list entry {t:?}"))))
        .collect()
}

fn json_text(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn render_tensor(t: &MITensor<Rational>, latex: bool) -> String {
    if t.is_zero() {
        return "0\n".into();
    }
    let mut s = String::new();
    for ((l, r), c) in t.iter() {
        if latex {
            s.push_str(&format!("{} \\; {} \\otimes {} \\\\\n", format_rational(c), l.render(true), r.render(true)));
        } else {
            s.push_str(&format!("{}  {} (x) {}\n", format_rational(c), l.render(false), r.render(false)));
        }
    }
    s
}

fn cmd_coproduct(n: u32, d: &str, oracle: bool, extended: bool, format: Format) -> Result<Outcome> {
    if n > 10 || (oracle && n > 8) {
        return Err(Error::SizeLimit(format!("coproduct supports n <= 10 (n <= 8 with --oracle), got {n}")));
    }
    let d = parse_exact(d)?;
    let t = if extended { coproduct_mi_extended(n, &d)? } else { coproduct_mi_closed(n, &d)? };
    let status = if oracle {
        if extended {
            return Err(Error::Parse("--oracle compares the restricted coproduct; drop --extended".into()));
        }
        Some(matches!(coproduct_mi_general(n, &d), Ok(o) if o == t))
    } else {
        None
    };
    let mut text = match format {
        Format::Json => json_text(json!({
            "n": n,
            "d": format_rational(&d),
            "terms": tensor_to_json(&t),
            "oracle": status.map(|m| if m { "MATCH" } else { "MISMATCH" }),
        })),
        Format::Latex => render_tensor(&t, true),
        _ => render_tensor(&t, false),
    };
    if format != Format::Json {
        if let Some(m) = status {
            text.push_str(if m { "MATCH\n" } else { "MISMATCH\n" });
        }
    }
    Ok(Outcome { text, code: if status == Some(false) { EXIT_MISMATCH } else { 0 } })
}

fn cmd_verify(nmax: u32, d: &str, seed: u64, seeds: u64, format: Format, perturb: &str) -> Result<Outcome> {
    let d = parse_exact(d)?;
    let perturb = match perturb {
        "none" => Perturbation::None,
        "ck" => Perturbation::Ck,
        "mi" => Perturbation::Mi,
        p => return Err(Error::Parse(format!("unknown perturbation {p:?}"))),
    };
    let mut reports = Vec::new();
    for s in seed..seed + seeds.max(1) {
        reports.push(verify(&VerifyOptions { d: d.clone(), nmax, seed: s, perturb })?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => json_text(json!({
            "passed": passed,
            "runs": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })),
        _ => reports.iter().map(|r| r.render_text()).collect(),
    };
    Ok(Outcome { text, code: if passed { 0 } else { EXIT_MISMATCH } })
}

fn cmd_valuate(graph: &str, num: &NumericArgs, backend: Backend) -> Result<Outcome> {
    let g = resolve_graph(graph)?;
    let cfg = num.config()?;
    let ev = PiEvaluator::new(cfg.clone())?.with_budget(num.budget);
    let (value, method) = match backend {
        Backend::Auto => {
            let m = ev.method(&g)?;
            (ev.value(&g)?, format!("{m:?}"))
        }
        Backend::Momentum => (pi_momentum(&g, &cfg)?, format!("{:?}", Method::Momentum)),
        Backend::Xspace => {
            (pi_xspace(&g, &ev.green(cfg.grid))?, format!("{:?}", Method::XSpace { grid: cfg.grid, exact: false }))
        }
    };
    Ok(Outcome::ok(json_text(json!({
        "graph": g.to_json(),
        "degree": format_rational(&g.degree(&cfg.d)),
        "value": value,
        "method": method,
        "config": serde_json::to_value(&cfg).expect("json"),
    }))))
}

fn cmd_scaling(graph: &str, d: &str, cutoffs: &str, mass: f64, s: Option<f64>, format: Format) -> Result<Outcome> {
    let g = resolve_graph(graph)?;
    let ns: Vec<u32> = parse_list(cutoffs)?;
    if ns.is_empty() {
        return Err(Error::Parse("need at least one cutoff".into()));
    }
    let mut cfg = ValuationConfig::new(parse_rational(d)?, ns[0])?;
    cfg.m = mass;
    if let Some(s) = s {
        cfg.s = s;
    }
    let pts = scaling_series(&g, &cfg, &ns)?;
    let text = match format {
        Format::Json => {
            let fit = if pts.len() >= 2 { Some((loglog_slope(&pts)?, log_fit(&pts)?)) } else { None };
            json_text(json!({
                "graph": g.to_json(),
                "degree": format_rational(&g.degree(&cfg.d)),
                "points": serde_json::to_value(&pts).expect("json"),
                "loglog_slope": fit.map(|f| f.0),
                "log_fit": fit.map(|f| json!({"slope": f.1 .0, "intercept": f.1 .1, "r2": f.1 .2})),
            }))
        }
        _ => to_csv(&pts),
    };
    Ok(Outcome::ok(text))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Bell { n, k, format } => {
            if *n > 30 {
                return Err(Error::SizeLimit(format!("bell supports n <= 30, got {n}")));
            }
            if let Some(k) = k {
                if k > n {
                    return Err(Error::Domain(format!("need k <= n, got k = {k}, n = {n}")));
                }
            }
            let p = match k {
                Some(k) => bell_partial(*n, *k),
                None => bell_complete(*n),
            };
            Ok(Outcome::ok(match format {
                Format::Json => json_text(json!({"n": n, "k": k, "text": render_bell(&p, false), "latex": render_bell(&p, true)})),
                Format::Latex => render_bell(&p, true) + "\n",
                _ => render_bell(&p, false) + "\n",
            }))
        }
        Command::Wick { n, moments, format } => {
            if *n > 30 {
                return Err(Error::SizeLimit(format!("wick supports n <= 30, got {n}")));
            }
            let latex = *format == Format::Latex;
            match moments {
                Some(m) => {
                    let vals: Vec<Rational> = m.split(',').map(parse_exact).collect::<Result<_>>()?;
                    let w = wick_map(&Functional::new(vals)?, *n as usize)?;
                    Ok(Outcome::ok(match format {
                        Format::Json => json_text(json!({"n": n, "terms": w.to_json()})),
                        _ => w.render(format_rational, latex) + "\n",
                    }))
                }
                None => {
                    let w = wick_map_formal(*n);
                    Ok(Outcome::ok(match format {
                        Format::Json => json_text(json!({"n": n, "text": render_formal(&w, false)})),
                        _ => render_formal(&w, latex) + "\n",
                    }))
                }
            }
        }
        Command::Coproduct { n, d, oracle, extended, format } => cmd_coproduct(*n, d, *oracle, *extended, *format),
        Command::Verify { nmax, d, seed, seeds, format, perturb } => {
            cmd_verify(*nmax, d, *seed, *seeds, *format, perturb)
        }
        Command::Counterterms { num, alpha, logz_order } => {
            let cfg = num.config()?;
            let order = match logz_order {
                Some(o) => *o,
                None => (n_star_e(&cfg.d)? + 1).min(4),
            };
            let r = counterterms(&cfg, *alpha, order)?;
            Ok(Outcome::ok(json_text(r.to_json())))
        }
        Command::Valuate { graph, num, backend } => cmd_valuate(graph, num, *backend),
        Command::Scaling { graph, d, cutoffs, mass, s, format } => cmd_scaling(graph, d, cutoffs, *mass, *s, *format),
    }
}

/// Sizes the rayon pool from `RENORM_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("RENORM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: {}", Error::Io(e.to_string()));
                    return 2;
                }
            } else {
                print!("{}", out.text);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<Outcome> {
        let mut v = vec!["renorm"];
        v.extend_from_slice(args);
        execute(&Cli::try_parse_from(v).unwrap())
    }

    #[test]
    fn bell_zero_is_one() {
        assert_eq!(exec(&["bell", "--n", "0"]).unwrap().text, "1\n");
    }

    #[test]
    fn symbolic_commands_reject_decimals() {
        let e = exec(&["coproduct", "--n", "4", "--d", "3.0"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn empty_coproduct_below_three() {
        assert_eq!(exec(&["coproduct", "--n", "2", "--d", "5/2"]).unwrap().text, "0\n");
    }
}
