//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p korenblum --test acceptance --release`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use korenblum::certifier::{self, check_domination, empirical_check, random_pairs, CertifyOptions};
use korenblum::quad::{self, Tolerance};
use korenblum::refuter::{self, RefuteOptions};
use korenblum::{schuster, Error, Execution, Polynomial, RadialWeight};

const QUAD_TOL: f64 = 1e-9;

/// Certified radius for `w ≡ 1` on the default 64-point grid, from the
/// 30-digit scan oracle.
const CERTIFIED_C_UNWEIGHTED: f64 = 0.20648798096369728;
const CERTIFIED_OUTER_UNWEIGHTED: f64 = 0.04586854968207488;
/// Best witness of the ε-scan at (p, c, w) = (0.5, 0.9, 1), from the same
/// oracle (hypergeometric circle means, 30-digit quadrature).
const WITNESS_EPSILON: f64 = 0.45;
const WITNESS_GAP: f64 = 0.008285435936472872;
const WITNESS_NORM_F: f64 = 0.20581630013400374;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: korenblum::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn schuster_limit() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=9 {
        let rho = i as f64 / 10.0;
        let h = lib(schuster::eval_h(rho, 1e-5))?.h.ok_or("H undefined")?;
        worst = worst.max((h - 2.0 * rho / (1.0 - rho * rho)).abs());
    }
    ensure(worst <= 1e-3, format!("max deviation {worst:e}"))?;
    Ok(format!("max |H - 2ρ/(1-ρ²)| = {worst:.3e}"))
}

fn schuster_oracle() -> Outcome {
    let mut checked = 0;
    for j in 1..=20 {
        let c = 0.25 * j as f64 / 21.0;
        for i in 1..=20 {
            let rho = c + (1.0 - c) * i as f64 / 21.0;
            let f = lib(schuster::eval_f(rho, c))?;
            let truth = common::schuster_f_exact(rho, c);
            ensure(common::within_relative(f, &truth, 12), format!("mismatch at rho = {rho}, c = {c}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} grid points within 1e-12 of exact rational evaluation"))
}

fn certification_exists() -> Outcome {
    let w = RadialWeight::unweighted();
    let cert = lib(certifier::certify(&w, QUAD_TOL, 64))?;
    ensure(cert.c >= 0.01, format!("certified c = {} below 0.01", cert.c))?;
    ensure(cert.margin > 2.0 * QUAD_TOL, format!("margin {} too small", cert.margin))?;
    ensure((cert.c - CERTIFIED_C_UNWEIGHTED).abs() <= 1e-12, format!("c = {} differs from oracle", cert.c))?;
    ensure(
        (cert.outer - CERTIFIED_OUTER_UNWEIGHTED).abs() <= 1e-8,
        format!("outer = {} differs from oracle {CERTIFIED_OUTER_UNWEIGHTED}", cert.outer),
    )?;
    let fine = lib(certifier::scan_point(&w, cert.c, QUAD_TOL / 10.0))?;
    let drift = (fine.margin - cert.margin).abs();
    ensure(drift <= QUAD_TOL, format!("margin moved by {drift:e} under refinement"))?;
    Ok(format!("c = {:.6}, margin = {:.6e}, refinement drift = {drift:.1e}", cert.c, cert.margin))
}

fn empirical_domination_sweep() -> Outcome {
    let weights = [RadialWeight::unweighted(), lib(RadialWeight::standard(1.0))?, lib(RadialWeight::step(0.5))?];
    let counts = [167, 167, 166];
    let ps = [1.0, 1.5, 2.0, 4.0];
    let mut trials = 0;
    let mut conclusive = 0;
    for (k, (w, count)) in weights.iter().zip(counts).enumerate() {
        let c = lib(certifier::certify(w, QUAD_TOL, 64))?.c;
        let summary = lib(empirical_check(w, c, &ps, count, 2024 + k as u64, QUAD_TOL, Execution::default()))?;
        if let Some(v) = summary.violations.first() {
            return Err(format!("violation for {:?}: {:?}", w.kind(), v));
        }
        trials += summary.trials;
        conclusive += summary.conclusive;
    }
    ensure(conclusive == trials, format!("only {conclusive}/{trials} pairs showed sampled domination"))?;
    Ok(format!("{trials} dominating pairs, 0 violations"))
}

fn refutation() -> Outcome {
    let w = RadialWeight::unweighted();
    let wit = lib(refuter::find_counterexample(0.5, 0.9, &w, QUAD_TOL))?;
    ensure(wit.n == 5, format!("n = {}", wit.n))?;
    ensure(wit.gap > 1e-6, format!("gap = {:e}", wit.gap))?;
    ensure(wit.domination_checked, "domination not checked")?;
    ensure(wit.epsilon == WITNESS_EPSILON, format!("epsilon = {} differs from oracle", wit.epsilon))?;
    ensure((wit.gap - WITNESS_GAP).abs() <= 1e-8, format!("gap = {} differs from oracle", wit.gap))?;
    ensure((wit.norm_f - WITNESS_NORM_F).abs() <= 1e-8, "norm_f differs from oracle")?;
    let (f, g) = wit.pair();
    let fine = QUAD_TOL / 10.0;
    let nf = lib(f.weighted_norm(&w, 0.5, fine))?;
    let ng = lib(g.weighted_norm(&w, 0.5, fine))?;
    ensure(nf - ng > 2.0 * fine, "witness does not revalidate")?;
    ensure(((nf - ng) - wit.gap).abs() <= 2.0 * QUAD_TOL, "gap unstable under refinement")?;
    ensure(lib(check_domination(&f, &g, 0.9, (128, 512)))?.conclusive, "domination fails on finer grid")?;
    Ok(format!("n = {}, ε = {}, gap = {:.6e}", wit.n, wit.epsilon, wit.gap))
}

fn sufficiency_chain() -> Outcome {
    let w = RadialWeight::unweighted();
    let (p, n) = (0.5, 5);
    let mut holds = 0;
    let mut min_gap = f64::INFINITY;
    for i in 0..10 {
        let c = 0.5 + 0.05 * i as f64;
        for j in 1..=10 {
            let eps = c * j as f64 / 20.0;
            let fi = lib(refuter::check_final_inequality(p, c, &w, n, eps, QUAD_TOL))?;
            if !fi.holds {
                continue;
            }
            holds += 1;
            let (f, g) = certifier::lifted_pair(n, c, eps);
            let gap = lib(f.weighted_norm(&w, p, QUAD_TOL))? - lib(g.weighted_norm(&w, p, QUAD_TOL))?;
            ensure(gap > 0.0, format!("sufficient condition holds but norms do not reverse at c = {c}, ε = {eps}"))?;
            min_gap = min_gap.min(gap);
        }
    }
    ensure(holds > 0, "sufficient condition never held on the grid")?;
    Ok(format!("{holds}/100 grid points satisfy the condition, all reverse (min gap {min_gap:.2e})"))
}

fn monomial_bound() -> Outcome {
    let w = RadialWeight::unweighted();
    let bound = lib(refuter::monomial_upper_bound(2.0, &w, QUAD_TOL))?;
    // m(2)/m(0) = (2/4)/1 for w ≡ 1
    ensure((bound.c_star - (2.0f64 / 4.0).sqrt()).abs() <= 1e-6, format!("c* = {}", bound.c_star))?;
    ensure(bound.verified(), "monomial witness not verified")?;
    let one = lib(Polynomial::from_real(&[1.0]))?;
    let g = lib(Polynomial::from_real(&[0.0, 1.0 / 0.71]))?;
    ensure(lib(check_domination(&one, &g, 0.71, (64, 256)))?.conclusive, "1 ≤ |z|/0.71 fails on annulus")?;
    let ng = lib(g.weighted_norm(&w, 2.0, QUAD_TOL))?;
    ensure(ng < 1.0, format!("‖z/0.71‖₂ = {ng}"))?;
    Ok(format!("c* = {:.9}, ‖z/0.71‖₂ = {ng:.9}", bound.c_star))
}

fn exact_norms() -> Outcome {
    let w = RadialWeight::unweighted();
    let mut worst: f64 = 0.0;
    for n in 1..=5 {
        for p in [0.5, 1.0, 2.0, 3.0] {
            let got = lib(Polynomial::monomial(n).weighted_norm(&w, p, QUAD_TOL))?;
            let want = (2.0 / (n as f64 * p + 2.0)).powf(1.0 / p);
            worst = worst.max((got - want).abs() / want);
        }
    }
    ensure(worst <= 1e-9, format!("monomial relative error {worst:e}"))?;
    let weights = [
        (RadialWeight::unweighted(), Box::new(|s: f64| 2.0 / (s + 2.0)) as Box<dyn Fn(f64) -> f64>),
        (lib(RadialWeight::standard(1.0))?, Box::new(|s| common::standard_moment(1.0, s))),
        (lib(RadialWeight::step(0.5))?, Box::new(|s| (1.0 - 0.5f64.powf(s + 2.0)) * 2.0 / (s + 2.0))),
    ];
    let mut src = common::PolySource::new(88);
    let mut worst_parseval: f64 = 0.0;
    for k in 0..100 {
        let f = src.polynomial(8);
        let (w, m) = &weights[k % 3];
        let quad = lib(f.norm_pow(w, 2.0, 1e-10))?.value;
        let oracle = common::parseval_norm_sq(&f, m);
        worst_parseval = worst_parseval.max((quad - oracle).abs() / oracle);
    }
    ensure(worst_parseval <= 1e-8, format!("Parseval relative error {worst_parseval:e}"))?;
    Ok(format!("monomials {worst:.1e}, Parseval {worst_parseval:.1e} (relative)"))
}

fn step_weight_example() -> Outcome {
    // both sides must be well below the 1e-12 agreement being checked
    const FINE_TOL: f64 = 1e-12;
    let r = 0.5;
    let w = lib(RadialWeight::step(r))?;
    let mut src = common::PolySource::new(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = src.polynomial(8);
        for p in [0.5, 1.0, 2.0] {
            let full = lib(f.norm_pow(&w, p, FINE_TOL))?.value;
            let rel = 0.5 * p.min(1.0) * FINE_TOL;
            // |f|^p has kinks at the moduli of the zeros
            let mut cuts: Vec<f64> = f.roots().iter().map(|z| z.norm()).filter(|&m| m > r && m < 1.0).collect();
            cuts.extend([r, 1.0]);
            cuts.sort_by(f64::total_cmp);
            let mut restricted = 0.0;
            for span in cuts.windows(2) {
                restricted += lib(quad::integrate(
                    |s| 2.0 * s * f.mean_pow(s, p, 0.1 * rel).value,
                    span[0],
                    span[1],
                    Tolerance { abs: f64::MIN_POSITIVE, rel },
                ))?
                .value;
            }
            worst = worst.max((full - restricted).abs() / restricted.abs().max(f64::MIN_POSITIVE));
        }
    }
    ensure(worst <= 1e-12, format!("restriction mismatch {worst:e}"))?;
    let pairs = random_pairs(r, &[0.5, 1.0, 2.0], 100, 77);
    for pair in &pairs {
        let rep = lib(certifier::verify_instance(&pair.f, &pair.g, &w, pair.p, r, QUAD_TOL))?;
        ensure(rep.dominates, format!("pair {:?} not dominating", pair.family))?;
        ensure(rep.principle_holds, format!("norm inequality fails for {:?} at p = {}", pair.family, pair.p))?;
    }
    Ok(format!("restriction error {worst:.1e}, {} pairs hold at c = R", pairs.len()))
}

fn p_at_least_one_immunity() -> Outcome {
    let w = RadialWeight::unweighted();
    let c = lib(certifier::certify_with(&w, &CertifyOptions::default()))?.c;
    let mut scans = 0;
    for p in [1.0, 2.0, 4.0] {
        for n in [5, 10, 20, 40] {
            let opts = RefuteOptions { quad_tol: QUAD_TOL, n: Some(n), exec: Execution::default() };
            match refuter::find_counterexample_with(p, c, &w, &opts) {
                Err(Error::NoWitnessFound { .. }) => scans += 1,
                Ok(wit) => return Err(format!("witness at p = {p}, n = {n}: gap {:e}", wit.gap)),
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("{scans} ε-scans at c = {c:.6} found no witness"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Schuster limit", budget: Duration::from_secs(1), run: schuster_limit },
        Criterion { id: 2, name: "Schuster oracle agreement", budget: Duration::from_secs(10), run: schuster_oracle },
        Criterion {
            id: 3,
            name: "certification exists (w = 1)",
            budget: Duration::from_secs(30),
            run: certification_exists,
        },
        Criterion {
            id: 4,
            name: "empirical domination sweep",
            budget: Duration::from_secs(300),
            run: empirical_domination_sweep,
        },
        Criterion { id: 5, name: "refutation for p = 1/2", budget: Duration::from_secs(30), run: refutation },
        Criterion { id: 6, name: "sufficiency chain", budget: Duration::from_secs(120), run: sufficiency_chain },
        Criterion { id: 7, name: "monomial upper bound", budget: Duration::from_secs(5), run: monomial_bound },
        Criterion { id: 8, name: "exact norms and Parseval", budget: Duration::from_secs(60), run: exact_norms },
        Criterion { id: 9, name: "step weight", budget: Duration::from_secs(60), run: step_weight_example },
        Criterion { id: 10, name: "p >= 1 immunity", budget: Duration::from_secs(120), run: p_at_least_one_immunity },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for crit in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (crit.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= crit.budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over time budget {:?}", crit.budget)),
            Err(reason) => ("FAIL", reason),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("[{status}] criterion {:>2} {:<32} {:>8.2?}  {detail}", crit.id, crit.name, elapsed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
