//! Certification of admissible radii and checks of individual domination
//! instances.
//!
//! A radius `c` is certified when
//!
//! ```text
//! ∫₀^c 2 r w(r) dr  ≤  ∫_c^1 ρ w(ρ) / H(ρ, c) dρ
//! ```
//!
//! with `H` the Schuster majorant. The inequality does not involve `p`, so a
//! certified radius is admissible for every `p ≥ 1` at once.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::Polynomial;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::quad::{Estimate, Tolerance};
use crate::schuster::{self, C_LIMIT};
use crate::weights::RadialWeight;

pub const DEFAULT_GRID: usize = 64;
pub const MIN_GRID: usize = 32;
/// Lower end of the geometric radius grid.
pub const C_FLOOR: f64 = 1e-6;
pub const DEFAULT_DOMINATION_GRID: (usize, usize) = (64, 256);
/// Sampled radii stop this far short of the unit circle.
const EDGE_GAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusCertificate {
    pub c: f64,
    pub inner: f64,
    pub outer: f64,
    pub margin: f64,
    pub quad_tol: f64,
    pub weight: RadialWeight,
}

/// Both sides of the certification inequality at one grid radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub c: f64,
    pub inner: f64,
    pub outer: f64,
    pub margin: f64,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationScan {
    pub points: Vec<ScanPoint>,
    pub certificate: Option<RadiusCertificate>,
}

impl CertificationScan {
    /// Admissible radii form an interval, so everything at or below the
    /// certified radius is admissible.
    pub fn admissible(&self, c: f64) -> bool {
        self.certificate.as_ref().is_some_and(|cert| c > 0.0 && c <= cert.c)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub quad_tol: f64,
    pub grid: usize,
    pub exec: Execution,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { quad_tol: 1e-9, grid: DEFAULT_GRID, exec: Execution::default() }
    }
}

/// `grid` radii spaced geometrically strictly inside `(C_FLOOR, 1/4)`.
pub fn radius_grid(grid: usize) -> Vec<f64> {
    let ratio = C_LIMIT / C_FLOOR;
    (1..=grid).map(|k| C_FLOOR * ratio.powf(k as f64 / (grid + 1) as f64)).collect()
}

/// `∫_c^1 ρ w(ρ) / H(ρ, c) dρ`, with `1/H = 0` where the bound is vacuous.
pub fn outer_integral(w: &RadialWeight, c: f64, quad_tol: f64) -> Result<Estimate> {
    if !(c > 0.0 && c < C_LIMIT) {
        return Err(Error::Domain(format!("certification radius must lie in (0, 1/4), got {c}")));
    }
    w.integrate(|rho| rho * schuster::bound_unchecked(rho, c).reciprocal(), c, 1.0, Tolerance::absolute(quad_tol))
}

/// Evaluates both sides of the certification inequality at `c`.
pub fn scan_point(w: &RadialWeight, c: f64, quad_tol: f64) -> Result<ScanPoint> {
    let outer = outer_integral(w, c, quad_tol)?.value;
    let inner = w.inner_mass(c, quad_tol)?;
    let margin = outer - inner;
    Ok(ScanPoint { c, inner, outer, margin, passes: margin > 2.0 * quad_tol })
}

/// Scans the whole radius grid and picks the largest passing radius.
pub fn certify_scan(w: &RadialWeight, opts: &CertifyOptions) -> Result<CertificationScan> {
    if opts.grid < MIN_GRID {
        return Err(Error::Domain(format!("certification grid needs at least {MIN_GRID} points, got {}", opts.grid)));
    }
    if !(opts.quad_tol > 0.0) {
        return Err(Error::Domain("quadrature tolerance must be positive".into()));
    }
    let radii = radius_grid(opts.grid);
    let points = opts.exec.map(&radii, |&c| scan_point(w, c, opts.quad_tol)).into_iter().collect::<Result<Vec<_>>>()?;
    let certificate = points.iter().rev().find(|pt| pt.passes).map(|pt| RadiusCertificate {
        c: pt.c,
        inner: pt.inner,
        outer: pt.outer,
        margin: pt.margin,
        quad_tol: opts.quad_tol,
        weight: w.clone(),
    });
    Ok(CertificationScan { points, certificate })
}

/// Returns the largest grid radius that satisfies the certification
/// inequality with margin above `2·quad_tol`.
pub fn certify(w: &RadialWeight, quad_tol: f64, grid: usize) -> Result<RadiusCertificate> {
    certify_with(w, &CertifyOptions { quad_tol, grid, ..Default::default() })
}

pub fn certify_with(w: &RadialWeight, opts: &CertifyOptions) -> Result<RadiusCertificate> {
    let scan = certify_scan(w, opts)?;
    let best_margin = scan.points.iter().map(|pt| pt.margin).fold(f64::NEG_INFINITY, f64::max);
    scan.certificate.ok_or(Error::NoCertificate { best_margin })
}

/// Sampled comparison of `|f|` and `|g|` on the annulus `c ≤ |z| < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub c: f64,
    /// Minimum of `|g| − |f|` over the sample grid.
    pub min_gap: f64,
    pub grid: (usize, usize),
    /// Rounding allowance on the sampled moduli.
    pub roundoff: f64,
    /// `min_gap ≥ −roundoff`; sampled evidence, not proof.
    pub conclusive: bool,
}

pub fn check_domination(f: &Polynomial, g: &Polynomial, c: f64, grid: (usize, usize)) -> Result<DominationReport> {
    check_domination_with(f, g, c, grid, Execution::default())
}

pub fn check_domination_with(
    f: &Polynomial,
    g: &Polynomial,
    c: f64,
    grid: (usize, usize),
    exec: Execution,
) -> Result<DominationReport> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("annulus radius must lie in (0, 1), got {c}")));
    }
    let (n_radii, n_angles) = grid;
    if n_radii < 16 || n_angles < 16 {
        return Err(Error::Domain(format!("domination grid must be at least 16x16, got {n_radii}x{n_angles}")));
    }
    let hi = (1.0 - EDGE_GAP).max(c);
    let radii: Vec<f64> = (0..n_radii).map(|i| c + (hi - c) * i as f64 / (n_radii - 1) as f64).collect();
    let rows = exec.map(&radii, |&r| {
        let mut gap = f64::INFINITY;
        for k in 0..n_angles {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n_angles as f64);
            gap = gap.min(g.eval(z).norm() - f.eval(z).norm());
        }
        let scale = f.abs_bound(r) + g.abs_bound(r);
        (gap, scale)
    });
    let min_gap = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let scale = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let terms = (f.coeffs().len() + g.coeffs().len()).max(1) as f64;
    let roundoff = 8.0 * terms * f64::EPSILON * scale;
    Ok(DominationReport { c, min_gap, grid, roundoff, conclusive: min_gap >= -roundoff })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub dominates: bool,
    pub norm_f: f64,
    pub norm_g: f64,
    pub principle_holds: bool,
}

/// Checks annulus domination and compares the weighted norms of `f` and `g`.
pub fn verify_instance(
    f: &Polynomial,
    g: &Polynomial,
    w: &RadialWeight,
    p: f64,
    c: f64,
    tol: f64,
) -> Result<InstanceReport> {
    let dom = check_domination_with(f, g, c, DEFAULT_DOMINATION_GRID, Execution::Sequential)?;
    let norm_f = f.weighted_norm(w, p, tol)?;
    let norm_g = g.weighted_norm(w, p, tol)?;
    Ok(InstanceReport { dominates: dom.conclusive, norm_f, norm_g, principle_holds: norm_f <= norm_g + 2.0 * tol })
}

/// How the dominated function of a random pair was built from `g`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PairFamily {
    /// `f = z^k g`.
    InnerFactor { k: usize },
    /// `f = ((z + a)/2) g` with `|a| ≤ 1`.
    HalfShift { a: (f64, f64) },
    /// `f = c^n (z^n + ε^n)/(c^n + ε^n)`, `g = z^n`.
    Lifted { n: usize, epsilon: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomPair {
    pub family: PairFamily,
    pub p: f64,
    pub f: Polynomial,
    pub g: Polynomial,
}

/// Draws `count` dominating pairs at radius `c` from a seeded generator.
pub fn random_pairs(c: f64, ps: &[f64], count: usize, seed: u64) -> Vec<RandomPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = ps[rng.gen_range(0..ps.len())];
            let (family, f, g) = match rng.gen_range(0..3) {
                0 => {
                    let g = random_polynomial(&mut rng, 8);
                    let k = rng.gen_range(1..=4);
                    (PairFamily::InnerFactor { k }, g.shift(k), g)
                }
                1 => {
                    let g = random_polynomial(&mut rng, 8);
                    let a = Complex64::from_polar(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..std::f64::consts::TAU));
                    let h = Polynomial::new(vec![a * 0.5, Complex64::new(0.5, 0.0)]).expect("degree 1");
                    (PairFamily::HalfShift { a: (a.re, a.im) }, h.mul(&g), g)
                }
                _ => {
                    let n = rng.gen_range(1..=12);
                    let epsilon = c * rng.gen_range(0.01..1.0);
                    let (f, g) = lifted_pair(n, c, epsilon);
                    (PairFamily::Lifted { n, epsilon }, f, g)
                }
            };
            RandomPair { family, p, f, g }
        })
        .collect()
}

/// The pair `f = c^n (z^n + ε^n)/(c^n + ε^n)`, `g = z^n`.
pub fn lifted_pair(n: usize, c: f64, epsilon: f64) -> (Polynomial, Polynomial) {
    let cn = c.powi(n as i32);
    let en = epsilon.powi(n as i32);
    let k = cn / (cn + en);
    let g = Polynomial::monomial(n);
    let f = g.scale(Complex64::new(k, 0.0));
    let mut coeffs = f.coeffs().to_vec();
    coeffs[0] = Complex64::new(k * en, 0.0);
    let f = Polynomial::with_cap(coeffs, n.max(crate::analytic::DEFAULT_DEGREE_CAP)).expect("finite coefficients");
    (f, g)
}

fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    let mut coeffs: Vec<Complex64> =
        (0..=d).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    if coeffs[d].norm() < 0.1 {
        coeffs[d] = Complex64::new(1.0, 0.0);
    }
    Polynomial::new(coeffs).expect("degree within cap")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub pair: RandomPair,
    pub report: InstanceReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSummary {
    pub c: f64,
    pub trials: usize,
    pub conclusive: usize,
    pub violations: Vec<Violation>,
}

/// Runs [`verify_instance`] on random dominating pairs at radius `c` and
/// collects every conclusive pair whose norms come out reversed.
pub fn empirical_check(
    w: &RadialWeight,
    c: f64,
    ps: &[f64],
    count: usize,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> Result<EmpiricalSummary> {
    if ps.is_empty() || ps.iter().any(|&p| !(p > 0.0)) {
        return Err(Error::Domain("exponent list must be nonempty and positive".into()));
    }
    let pairs = random_pairs(c, ps, count, seed);
    let reports = exec
        .map(&pairs, |pair| verify_instance(&pair.f, &pair.g, w, pair.p, c, tol))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let conclusive = reports.iter().filter(|r| r.dominates).count();
    let violations = pairs
        .into_iter()
        .zip(reports)
        .filter(|(_, r)| r.dominates && !r.principle_holds)
        .map(|(pair, report)| Violation { pair, report })
        .collect();
    Ok(EmpiricalSummary { c, trials: count, conclusive, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_geometric_and_open() {
        let g = radius_grid(64);
        assert_eq!(g.len(), 64);
        assert!(g[0] > C_FLOOR && g[63] < C_LIMIT);
        let r0 = g[1] / g[0];
        assert!(g.windows(2).all(|w| ((w[1] / w[0]) - r0).abs() < 1e-12));
    }

    #[test]
    fn domination_examples() {
        let g = Polynomial::from_real(&[0.3, -1.0, 0.5]).unwrap();
        let zg = g.shift(1);
        let rep = check_domination(&zg, &g, 0.5, (64, 256)).unwrap();
        assert!(rep.conclusive && rep.min_gap >= 0.0);

        let (f, g) = lifted_pair(5, 0.7, 0.2);
        assert!(check_domination(&f, &g, 0.7, (64, 256)).unwrap().conclusive);

        let two = Polynomial::from_real(&[2.0]).unwrap();
        let z = Polynomial::monomial(1);
        let rep = check_domination(&two, &z, 0.5, (64, 256)).unwrap();
        assert!(rep.min_gap < 0.0 && !rep.conclusive);
    }

    #[test]
    fn domination_rejects_bad_input() {
        let z = Polynomial::monomial(1);
        assert!(check_domination(&z, &z, 1.0, (64, 64)).is_err());
        assert!(check_domination(&z, &z, 0.5, (8, 64)).is_err());
    }

    #[test]
    fn step_weight_certifies_at_top_of_grid() {
        let w = RadialWeight::step(0.5).unwrap();
        let cert = certify(&w, 1e-9, 64).unwrap();
        assert_eq!(cert.inner, 0.0);
        assert_eq!(cert.c, *radius_grid(64).last().unwrap());
        assert!(cert.margin > 0.0);
    }

    #[test]
    fn small_grid_rejected() {
        assert!(matches!(certify(&RadialWeight::unweighted(), 1e-9, 16), Err(Error::Domain(_))));
    }

    #[test]
    fn inner_factor_instance() {
        let g = Polynomial::from_real(&[1.0, 0.5, -0.25]).unwrap();
        let rep = verify_instance(&g.shift(2), &g, &RadialWeight::standard(1.0).unwrap(), 1.5, 0.3, 1e-9).unwrap();
        assert!(rep.dominates && rep.principle_holds);
        assert!(rep.norm_f < rep.norm_g);
    }

    #[test]
    fn random_pairs_are_deterministic() {
        let a = random_pairs(0.2, &[1.0, 2.0], 20, 7);
        let b = random_pairs(0.2, &[1.0, 2.0], 20, 7);
        assert_eq!(a, b);
        assert_ne!(a, random_pairs(0.2, &[1.0, 2.0], 20, 8));
    }
}
