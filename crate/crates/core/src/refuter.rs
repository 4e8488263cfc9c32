//! Explicit failures of domination.
//!
//! For `0 < p < 1` the pair `f = c^n (z^n + ε^n)/(c^n + ε^n)`, `g = z^n`
//! satisfies `|f| ≤ |g|` on `c ≤ |z| < 1`, yet for `n(1 − p) > 2` and small
//! `ε` it has `‖f‖ > ‖g‖` whenever the weight stays positive near the origin.
//! For every `p`, the pair `1`, `z/c` refutes any `c` above
//! `(m(p)/m(0))^{1/p}`, bounding the Korenblum radius away from 1.

use serde::{Deserialize, Serialize};

use crate::analytic::Polynomial;
use crate::certifier::{check_domination_with, lifted_pair, DEFAULT_DOMINATION_GRID};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::quad::{self, Estimate, Tolerance};
use crate::weights::{RadialWeight, WeightKind};

/// Number of halvings `ε_j = c·2^{−j}` tried by the scan.
pub const EPSILON_STEPS: u32 = 48;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleWitness {
    pub p: f64,
    pub c: f64,
    pub n: usize,
    pub epsilon: f64,
    pub norm_f: f64,
    pub norm_g: f64,
    pub gap: f64,
    pub domination_checked: bool,
}

impl CounterexampleWitness {
    pub fn pair(&self) -> (Polynomial, Polynomial) {
        lifted_pair(self.n, self.c, self.epsilon)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RefuteOptions {
    pub quad_tol: f64,
    /// Overrides the smallest `n` with `n(1 − p) > 2`.
    pub n: Option<usize>,
    pub exec: Execution,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions { quad_tol: 1e-9, n: None, exec: Execution::default() }
    }
}

/// Smallest integer `n` with `n(1 − p) > 2`.
pub fn choose_n(p: f64) -> Result<usize> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("counterexample family needs 0 < p < 1, got {p}")));
    }
    let q = 1.0 - p;
    let mut n = ((2.0 / q).floor() as usize).max(1);
    while n as f64 * q <= 2.0 {
        n += 1;
    }
    while n > 1 && (n - 1) as f64 * q > 2.0 {
        n -= 1;
    }
    Ok(n)
}

/// One point of the `ε` scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonSample {
    pub j: u32,
    pub epsilon: f64,
    pub norm_f: f64,
    pub norm_g: f64,
    pub gap: f64,
}

/// Weighted norms of the lifted pair for `ε = c·2^{−j}`, `j = 1..=48`.
pub fn epsilon_scan(
    p: f64,
    c: f64,
    w: &RadialWeight,
    n: usize,
    quad_tol: f64,
    exec: Execution,
) -> Result<Vec<EpsilonSample>> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("exponent p must be positive, got {p}")));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("radius c must lie in (0, 1), got {c}")));
    }
    if n == 0 {
        return Err(Error::Domain("family degree n must be positive".into()));
    }
    let norm_g = Polynomial::monomial(n).weighted_norm(w, p, quad_tol)?;
    let js: Vec<u32> = (1..=EPSILON_STEPS).collect();
    exec.map(&js, |&j| {
        let epsilon = c * 0.5f64.powi(j as i32);
        let (f, _) = lifted_pair(n, c, epsilon);
        let norm_f = f.weighted_norm(w, p, quad_tol)?;
        Ok(EpsilonSample { j, epsilon, norm_f, norm_g, gap: norm_f - norm_g })
    })
    .into_iter()
    .collect()
}

pub fn find_counterexample(p: f64, c: f64, w: &RadialWeight, quad_tol: f64) -> Result<CounterexampleWitness> {
    find_counterexample_with(p, c, w, &RefuteOptions { quad_tol, ..Default::default() })
}

/// Scans `ε` for the lifted pair and returns the largest norm reversal.
///
/// Without an `n` override `p` must lie in `(0, 1)`; with one, any `p > 0` is
/// scanned, which is how the family is probed where no witness should exist.
pub fn find_counterexample_with(
    p: f64,
    c: f64,
    w: &RadialWeight,
    opts: &RefuteOptions,
) -> Result<CounterexampleWitness> {
    let n = match opts.n {
        Some(n) => n,
        None => choose_n(p)?,
    };
    let scan = epsilon_scan(p, c, w, n, opts.quad_tol, opts.exec)?;
    let mut best = scan[0];
    for s in &scan[1..] {
        if s.gap > best.gap {
            best = *s;
        }
    }
    let no_witness = || Error::NoWitnessFound { best_gap: best.gap, hint: w.liminf_at_origin_hint() };
    if !(best.gap > 2.0 * opts.quad_tol) {
        return Err(no_witness());
    }
    let (f, g) = lifted_pair(n, c, best.epsilon);
    let dom = check_domination_with(&f, &g, c, DEFAULT_DOMINATION_GRID, opts.exec)?;
    if !dom.conclusive {
        return Err(no_witness());
    }
    Ok(CounterexampleWitness {
        p,
        c,
        n,
        epsilon: best.epsilon,
        norm_f: best.norm_f,
        norm_g: best.norm_g,
        gap: best.gap,
        domination_checked: true,
    })
}

/// Both sides of the sufficient condition
/// `∫₀¹ (1 − r^{np}) 2r w(εr) dr > (p/c^n) ε^{n(1−p)−2} ∫₀¹ 2r w(r) r^{np} dr`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalInequality {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn check_final_inequality(
    p: f64,
    c: f64,
    w: &RadialWeight,
    n: usize,
    epsilon: f64,
    quad_tol: f64,
) -> Result<FinalInequality> {
    choose_n(p)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("radius c must lie in (0, 1), got {c}")));
    }
    if !(epsilon > 0.0 && epsilon < c) {
        return Err(Error::Domain(format!("epsilon must lie in (0, c), got {epsilon}")));
    }
    let excess = n as f64 * (1.0 - p) - 2.0;
    if !(excess > 0.0) {
        return Err(Error::Domain(format!("need n(1 - p) > 2, got n = {n}, p = {p}")));
    }
    let np = n as f64 * p;
    let lhs = dilated_integral(w, epsilon, |r| (1.0 - r.powf(np)) * 2.0 * r, quad_tol)?.value;
    let moment = w.moment(np, quad_tol)?.value;
    let rhs = p / c.powi(n as i32) * epsilon.powf(excess) * moment;
    Ok(FinalInequality { lhs, rhs, holds: lhs > rhs + 2.0 * quad_tol })
}

/// `∫₀¹ h(r) w(εr) dr`, split where the dilated weight has kinks or jumps.
fn dilated_integral<H: Fn(f64) -> f64>(w: &RadialWeight, epsilon: f64, h: H, quad_tol: f64) -> Result<Estimate> {
    let mut cuts = vec![0.0];
    match w.kind() {
        WeightKind::Step { inner_radius } => cuts.push(inner_radius / epsilon),
        WeightKind::Table { knots, .. } => cuts.extend(knots.iter().map(|k| k / epsilon)),
        _ => {}
    }
    cuts.retain(|&x| x < 1.0);
    cuts.push(1.0);
    cuts.dedup();
    let tol = Tolerance::absolute(quad_tol / (cuts.len() - 1) as f64);
    let mut total = Estimate::ZERO;
    for span in cuts.windows(2) {
        total = total + quad::integrate(|r| h(r) * w.eval(epsilon * r), span[0], span[1], tol)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusUpperBound {
    pub p: f64,
    /// `(m(p)/m(0))^{1/p}`.
    pub c_star: f64,
    pub witness_c: f64,
    /// `‖1‖_{p,w}`.
    pub norm_one: f64,
    /// `‖z / witness_c‖_{p,w}`.
    pub norm_scaled: f64,
    /// `1 ≤ |z|/witness_c` on the sampled annulus.
    pub dominates: bool,
    /// `norm_scaled < norm_one`.
    pub reversed: bool,
}

impl RadiusUpperBound {
    pub fn verified(&self) -> bool {
        self.dominates && self.reversed
    }
}

/// Upper bound on the Korenblum radius from the pair `f = 1`, `g = z/c`.
pub fn monomial_upper_bound(p: f64, w: &RadialWeight, quad_tol: f64) -> Result<RadiusUpperBound> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("exponent p must be positive, got {p}")));
    }
    let ratio = w.moment(p, quad_tol)?.value / w.mass(quad_tol)?;
    let c_star = ratio.powf(1.0 / p);
    let witness_c = (c_star * (1.0 + 1e-3)).min(1.0 - 1e-9);
    let one = Polynomial::from_real(&[1.0])?;
    let scaled = Polynomial::from_real(&[0.0, 1.0 / witness_c])?;
    let norm_one = one.weighted_norm(w, p, quad_tol)?;
    let norm_scaled = scaled.weighted_norm(w, p, quad_tol)?;
    let dom = check_domination_with(&one, &scaled, witness_c, DEFAULT_DOMINATION_GRID, Execution::Sequential)?;
    Ok(RadiusUpperBound {
        p,
        c_star,
        witness_c,
        norm_one,
        norm_scaled,
        dominates: dom.conclusive,
        reversed: norm_scaled < norm_one,
    })
}
