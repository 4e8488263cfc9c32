//! Polynomials on the unit disk, their integral means and weighted Bergman norms.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, Estimate, Tolerance};
use crate::weights::RadialWeight;

pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Upper limit on trapezoid nodes per circle. Convergence is only algebraic
/// when a zero of `f` sits on or next to the circle; past this many nodes the
/// mean is recomputed by adaptive quadrature in the angle, split at the
/// arguments of the zeros.
pub const MAX_THETA_NODES: usize = 4096;

/// A polynomial `a₀ + a₁ z + … + a_d z^d` with complex coefficients.
///
/// Trailing zero coefficients are dropped on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero (empty
/// coefficient list).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    coeffs: Vec<(f64, f64)>,
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = Error;

    fn try_from(repr: PolynomialRepr) -> Result<Self> {
        Polynomial::new(repr.coeffs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr { coeffs: p.coeffs.iter().map(|c| (c.re, c.im)).collect() }
    }
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::with_cap(coeffs, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(mut coeffs: Vec<Complex64>, degree_cap: usize) -> Result<Self> {
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidPolynomial("coefficients must be finite".into()));
        }
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.len() > degree_cap + 1 {
            return Err(Error::InvalidPolynomial(format!(
                "degree {} exceeds the cap of {degree_cap}",
                coeffs.len() - 1
            )));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(a: Complex64) -> Self {
        Polynomial { coeffs: vec![a] }.trimmed()
    }

    /// `z^n` (no degree cap applied).
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Polynomial { coeffs }
    }

    /// Parses the comma-separated real shorthand `"1,0,-2"` (a₀ first).
    pub fn parse_shorthand(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim().parse::<f64>().map_err(|e| Error::InvalidPolynomial(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_real(&coeffs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: PolynomialRepr = serde_json::from_str(text)
            .map_err(|e| Error::InvalidPolynomial(format!("malformed polynomial JSON: {e}")))?;
        repr.try_into()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * lambda).collect() }.trimmed()
    }

    /// Product with `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }.trimmed()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
    }

    /// `Σ |a_j| r^j`, a bound on `|f|` over the circle of radius `r`.
    pub fn abs_bound(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
    }

    /// `M_p^p(r; f)`, the circle mean of `|f|^p`, with a relative error
    /// target of `rel_tol`.
    pub fn mean_pow(&self, r: f64, p: f64, rel_tol: f64) -> Estimate {
        self.mean_pow_with(r, p, rel_tol, &OnceLock::new())
    }

    fn mean_pow_with(&self, r: f64, p: f64, rel_tol: f64, roots: &OnceLock<Vec<Complex64>>) -> Estimate {
        if self.is_zero() {
            return Estimate::ZERO;
        }
        let deg = self.coeffs.len() - 1;
        if r == 0.0 || deg == 0 {
            return Estimate { value: self.coeffs[0].norm().powf(p), error: 0.0 };
        }
        let half_p = 0.5 * p;
        let integrand = |theta: f64| {
            let v = self.eval(Complex64::from_polar(r, theta));
            if p == 2.0 {
                v.norm_sqr()
            } else {
                v.norm().powf(p)
            }
        };
        // For even integer p, |f|^p is a trigonometric polynomial and the
        // trapezoid rule is exact once it has enough nodes.
        let even = half_p.fract() == 0.0;
        // Skip straight to the split quadrature when a known zero is too
        // close to the circle for the trapezoid rule to converge.
        let near_zero = !even
            && roots
                .get()
                .is_some_and(|zs| zs.iter().any(|z| (z.norm() - r).abs() * MAX_THETA_NODES as f64 <= 40.0 * r));
        let initial = (8 * (deg + 1)).max(256);
        let est = if near_zero {
            None
        } else {
            let (est, nodes) = quad::periodic_mean(integrand, initial, MAX_THETA_NODES, rel_tol);
            if nodes < MAX_THETA_NODES || est.error <= rel_tol * est.value {
                return est;
            }
            Some(est)
        };
        // A zero sits close to the circle: integrate in θ between the
        // arguments of the zeros, where |f|^p is smooth.
        let roots = roots.get_or_init(|| self.roots());
        let mut cuts: Vec<f64> =
            roots.iter().filter(|z| z.norm() > 0.0).map(|z| z.arg().rem_euclid(std::f64::consts::TAU)).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        if cuts.is_empty() {
            return est.unwrap_or_else(|| quad::periodic_mean(integrand, initial, MAX_THETA_NODES, rel_tol).0);
        }
        cuts.push(cuts[0] + std::f64::consts::TAU);
        let tol = Tolerance { abs: f64::MIN_POSITIVE, rel: rel_tol };
        let mut total = Estimate::ZERO;
        for span in cuts.windows(2) {
            match quad::integrate(integrand, span[0], span[1], tol) {
                Ok(e) => total = total + e,
                Err(_) => {
                    return est.unwrap_or_else(|| quad::periodic_mean(integrand, initial, MAX_THETA_NODES, rel_tol).0)
                }
            }
        }
        let scale = 1.0 / std::f64::consts::TAU;
        Estimate { value: total.value * scale, error: total.error * scale }
    }

    /// Zeros of the polynomial by Aberth-Ehrlich iteration (with
    /// multiplicity; zeros at the origin are returned exactly).
    pub fn roots(&self) -> Vec<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        let Some(first) = self.coeffs.iter().position(|a| *a != zero) else {
            return Vec::new();
        };
        let mut roots = vec![zero; first];
        let core = &self.coeffs[first..];
        let d = core.len() - 1;
        if d == 0 {
            return roots;
        }
        let lead = core[d];
        let monic: Vec<Complex64> = core.iter().map(|a| a / lead).collect();
        // Fujiwara bound on the root moduli.
        let bound = (1..=d)
            .map(|k| {
                let a = monic[d - k].norm();
                if k == d {
                    (0.5 * a).powf(1.0 / k as f64)
                } else {
                    a.powf(1.0 / k as f64)
                }
            })
            .fold(0.0, f64::max)
            * 2.0;
        let radius = if bound > 0.0 { 0.5 * bound } else { 1.0 };
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * (k as f64 + 0.25) / d as f64 + 0.4))
            .collect();
        let eval = |x: Complex64| {
            let mut val = Complex64::new(1.0, 0.0);
            let mut der = zero;
            for a in monic[..d].iter().rev() {
                der = der * x + val;
                val = val * x + a;
            }
            (val, der)
        };
        for _ in 0..500 {
            let mut moved: f64 = 0.0;
            for k in 0..d {
                let (val, der) = eval(z[k]);
                if val == zero {
                    continue;
                }
                let ratio = val / der;
                let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
                let step = ratio / (1.0 - ratio * repulsion);
                if step.re.is_finite() && step.im.is_finite() {
                    z[k] -= step;
                    moved = moved.max(step.norm() / z[k].norm().max(f64::MIN_POSITIVE));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        roots.extend(z);
        roots
    }

    /// Integral mean `M_p(r; f)` for `0 ≤ r < 1`, `p > 0`.
    pub fn integral_mean(&self, r: f64, p: f64, tol: f64) -> Result<f64> {
        check_radius(r)?;
        check_exponent(p)?;
        Ok(self.mean_pow(r, p, tol).value.powf(1.0 / p))
    }

    /// `‖f‖_{p,w}^p = ∫₀¹ 2 r w(r) M_p^p(r; f) dr` with its error estimate.
    pub fn norm_pow(&self, w: &RadialWeight, p: f64, tol: f64) -> Result<Estimate> {
        check_exponent(p)?;
        if self.is_zero() {
            return Ok(Estimate::ZERO);
        }
        // relative error δ on the p-th power gives δ/p on the norm
        let rel = 0.5 * p.min(1.0) * tol;
        let theta_tol = 0.1 * rel;
        let roots = self.roots();
        let mut cuts: Vec<f64> = roots.iter().map(|z| z.norm()).filter(|&m| m > 0.0 && m < 1.0).collect();
        cuts.push(0.0);
        cuts.push(1.0);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        let roots = OnceLock::from(roots);
        // Outermost piece first: the inner pieces then only need to be
        // accurate relative to what has been accumulated.
        let mut total = Estimate::ZERO;
        for span in cuts.windows(2).rev() {
            let tol = Tolerance { abs: (rel * total.value / cuts.len() as f64).max(f64::MIN_POSITIVE), rel };
            total = total
                + w.integrate(|r| 2.0 * r * self.mean_pow_with(r, p, theta_tol, &roots).value, span[0], span[1], tol)?;
        }
        Ok(total)
    }

    /// Weighted Bergman norm `‖f‖_{p,w}` with relative error about `tol`.
    pub fn weighted_norm(&self, w: &RadialWeight, p: f64, tol: f64) -> Result<f64> {
        Ok(self.norm_pow(w, p, tol)?.value.powf(1.0 / p))
    }

    /// Integral means along an increasing list of radii, checked for the
    /// monotonicity that subharmonicity guarantees.
    pub fn mean_profile(&self, p: f64, radii: &[f64], tol: f64) -> Result<MeanProfile> {
        check_exponent(p)?;
        if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) || radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("profile radii must be increasing in (0, 1)".into()));
        }
        let mut values = Vec::with_capacity(radii.len());
        let mut est_error: f64 = 0.0;
        for &r in radii {
            let e = self.mean_pow(r, p, tol);
            let m = e.value.powf(1.0 / p);
            let dm = if e.value > 0.0 { m * e.error / (p * e.value) } else { 0.0 };
            est_error = est_error.max(dm.max(4.0 * f64::EPSILON * m));
            values.push(m);
        }
        for i in 1..values.len() {
            if values[i] < values[i - 1] - 10.0 * est_error {
                return Err(Error::MonotonicityViolation {
                    r0: radii[i - 1],
                    r1: radii[i],
                    m0: values[i - 1],
                    m1: values[i],
                });
            }
        }
        Ok(MeanProfile { p, radii: radii.to_vec(), values, est_error })
    }
}

/// Integral means `M_p(r; f)` sampled along increasing radii.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanProfile {
    pub p: f64,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub est_error: f64,
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must lie in [0, 1), got {r}")))
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("exponent p must be positive and finite, got {p}")))
    }
}
