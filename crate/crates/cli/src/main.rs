//! `korenblum`: certify, refute and bound the Korenblum radius for weighted
//! Bergman spaces from the command line.

mod report;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use korenblum::certifier::{self, CertifyOptions};
use korenblum::refuter::{self, RefuteOptions};
use korenblum::{Error, Execution, Polynomial, RadialWeight};
use serde::{Deserialize, Serialize};

use report::{render, render_table, sig12, Format};

const SWEEP_HEADER: [&str; 5] = ["p", "c_certified", "c_star_upper", "witness_found_at_c_star", "status"];

#[derive(Parser, Debug)]
#[command(name = "korenblum", version, about = "Korenblum domination principle for weighted Bergman spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Weight as inline JSON or a path to a JSON file.
    #[arg(long, default_value = r#"{"kind":"constant","level":1}"#)]
    weight: String,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
    tol: f64,
    /// Report format (JSON by default, CSV for sweep).
    #[arg(long, value_enum)]
    output: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weighted Bergman norm of a polynomial.
    Norm {
        #[command(flatten)]
        common: Common,
        /// Coefficients as "a0,a1,..." or polynomial JSON.
        #[arg(long)]
        poly: String,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
    /// Integral means along a list of radii.
    Means {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        radii: Vec<f64>,
    },
    /// Largest certified radius on the scan grid.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = certifier::DEFAULT_GRID)]
        grid: usize,
    },
    /// Searches the lifted family for a norm reversal.
    Refute {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        /// Family degree (default: smallest n with n(1 - p) > 2).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Upper bound on the radius from the monomial pair.
    Bound {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
    /// Certified radius against the monomial bound across exponents.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = certifier::DEFAULT_GRID)]
        grid: usize,
    },
    /// Checks random dominating pairs against the norm inequality.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        p: Vec<f64>,
        /// Radius (default: the certified radius).
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = certifier::DEFAULT_GRID)]
        grid: usize,
    },
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct NormReport {
    p: f64,
    norm: f64,
    norm_pow: f64,
    est_error: f64,
    weight: RadialWeight,
    poly: Polynomial,
}

fn load_weight(source: &str) -> Result<RadialWeight> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(Path::new(source)).with_context(|| format!("reading weight file {source}"))?
    };
    Ok(RadialWeight::from_json(&text)?)
}

fn parse_poly(source: &str) -> Result<Polynomial> {
    if source.trim_start().starts_with('{') {
        Ok(Polynomial::from_json(source)?)
    } else {
        Ok(Polynomial::parse_shorthand(source)?)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {tol}")).into());
    }
    Ok(())
}

fn sweep_rows(w: &RadialWeight, ps: &[f64], tol: f64, grid: usize) -> Result<Vec<Vec<String>>> {
    if ps.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
        return Err(Error::Domain("sweep exponents must be positive".into()).into());
    }
    let opts = CertifyOptions { quad_tol: tol, grid, exec: Execution::default() };
    let certified = if ps.iter().any(|&p| p >= 1.0) { Some(certifier::certify_with(w, &opts)) } else { None };
    let mut rows = Vec::with_capacity(ps.len());
    for &p in ps {
        let mut status = Vec::new();
        let c_certified = match (&certified, p >= 1.0) {
            (Some(Ok(cert)), true) => sig12(cert.c),
            (Some(Err(e)), true) => {
                status.push(format!("certify: {e}"));
                String::new()
            }
            _ => String::new(),
        };
        let (c_star, found) = match refuter::monomial_upper_bound(p, w, tol) {
            Ok(ub) if p < 1.0 => match refuter::find_counterexample(p, ub.c_star, w, tol) {
                Ok(_) => (sig12(ub.c_star), "true".to_string()),
                Err(e) if e.is_negative_result() => (sig12(ub.c_star), "false".to_string()),
                Err(e) => {
                    status.push(format!("refute: {e}"));
                    (sig12(ub.c_star), String::new())
                }
            },
            Ok(ub) => (sig12(ub.c_star), ub.verified().to_string()),
            Err(e) => {
                status.push(format!("bound: {e}"));
                (String::new(), String::new())
            }
        };
        let status = if status.is_empty() { "ok".to_string() } else { status.join("; ") };
        rows.push(vec![sig12(p), c_certified, c_star, found, status]);
    }
    Ok(rows)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Norm { common, poly, p } => {
            check_tol(common.tol)?;
            let w = load_weight(&common.weight)?;
            let f = parse_poly(&poly)?;
            let est = f.norm_pow(&w, p, common.tol)?;
            let rep = NormReport {
                p,
                norm: est.value.powf(1.0 / p),
                norm_pow: est.value,
                est_error: est.error,
                weight: w,
                poly: f,
            };
            render(&rep, common.output.unwrap_or(Format::Json))
        }
        Command::Means { common, poly, p, radii } => {
            check_tol(common.tol)?;
            let f = parse_poly(&poly)?;
            let prof = f.mean_profile(p, &radii, common.tol)?;
            render(&prof, common.output.unwrap_or(Format::Json))
        }
        Command::Certify { common, grid } => {
            check_tol(common.tol)?;
            let w = load_weight(&common.weight)?;
            let cert = certifier::certify_with(
                &w,
                &CertifyOptions { quad_tol: common.tol, grid, exec: Execution::default() },
            )?;
            render(&cert, common.output.unwrap_or(Format::Json))
        }
        Command::Refute { common, p, c, n } => {
            check_tol(common.tol)?;
            let w = load_weight(&common.weight)?;
            let opts = RefuteOptions { quad_tol: common.tol, n, exec: Execution::default() };
            let wit = refuter::find_counterexample_with(p, c, &w, &opts)?;
            render(&wit, common.output.unwrap_or(Format::Json))
        }
        Command::Bound { common, p } => {
            check_tol(common.tol)?;
            let w = load_weight(&common.weight)?;
            let ub = refuter::monomial_upper_bound(p, &w, common.tol)?;
            render(&ub, common.output.unwrap_or(Format::Json))
        }
        Command::Sweep { common, p, grid } => {
            check_tol(common.tol)?;
            let w = load_weight(&common.weight)?;
            let rows = sweep_rows(&w, &p, common.tol, grid)?;
            render_table(&SWEEP_HEADER, &rows, common.output.unwrap_or(Format::Csv))
        }
        Command::Verify { common, p, c, samples, seed, grid } => {
            check_tol(common.tol)?;
            let w = load_weight(&common.weight)?;
            let c = match c {
                Some(c) => c,
                None => {
                    certifier::certify_with(
                        &w,
                        &CertifyOptions { quad_tol: common.tol, grid, exec: Execution::default() },
                    )?
                    .c
                }
            };
            if !(c > 0.0 && c < 1.0) {
                bail!(Error::Domain(format!("radius c must lie in (0, 1), got {c}")));
            }
            let summary = certifier::empirical_check(&w, c, &p, samples, seed, common.tol, Execution::default())?;
            let out = render(&summary, common.output.unwrap_or(Format::Json))?;
            if !summary.violations.is_empty() {
                print!("{out}");
                bail!(Violations(summary.violations.len()));
            }
            Ok(out)
        }
    }
}

/// Random pairs whose norms came out reversed.
#[derive(Debug)]
struct Violations(usize);

impl std::fmt::Display for Violations {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} dominating pairs violate the norm inequality", self.0)
    }
}

impl std::error::Error for Violations {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Violations>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_negative_result() => 1,
        Some(Error::QuadratureDivergence { .. } | Error::MonotonicityViolation { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
