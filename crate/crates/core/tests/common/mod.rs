//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

use korenblum::Polynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

fn pow(x: &BigRational, k: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// The Schuster product `F(ρ, c)` in exact rational arithmetic at the exact
/// binary values of `ρ` and `c`.
pub fn schuster_f_exact(rho: f64, c: f64) -> BigRational {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let r = exact(rho);
    let c = exact(c);
    let r2 = &r * &r;
    let ir2 = &one / &r2;
    let mut f = (&two * &c / &r) * (&one + &r2 / &c) * ((&one - pow(&c, 12)) / (&one - pow(&c, 10)));
    for n in 1..=5 {
        let num =
            (&one + &r2 * pow(&c, 2 * n - 1)) * (&one + &ir2 * pow(&c, 2 * n + 1)) * pow(&(&one + pow(&c, 2 * n)), 2);
        let den =
            (&one + &r2 * pow(&c, 2 * n - 2)) * (&one + &ir2 * pow(&c, 2 * n)) * pow(&(&one + pow(&c, 2 * n - 1)), 2);
        f *= num / den;
    }
    f
}

/// Exact relative error `|approx − truth| / truth` compared against `10^-digits`.
pub fn within_relative(approx: f64, truth: &BigRational, digits: u32) -> bool {
    let diff = (exact(approx) - truth).abs();
    let scale = BigRational::from_integer(BigInt::from(10).pow(digits));
    diff * scale <= truth.abs()
}

/// `∫ |a e^{iφ} + b|^p dφ/2π = M^p ₂F₁(−p/2, −p/2; 1; (m/M)²)` with
/// `M = max(a, b)`, `m = min(a, b)`, summed as a power series.
pub fn binomial_circle_mean(a: f64, b: f64, p: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        return 0.0;
    }
    let x = (lo / hi).powi(2);
    assert!(x < 0.95, "series oracle needs the ratio away from 1");
    let h = -0.5 * p;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..100_000 {
        let k = k as f64;
        term *= (h + k) * (h + k) / ((k + 1.0) * (k + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-18 * sum {
            break;
        }
    }
    hi.powf(p) * sum
}

/// `∫₀¹ 2 r^{s+1} (α+1)(1−r²)^α dr = (α+1) B(s/2 + 1, α + 1)`.
pub fn standard_moment(alpha: f64, s: f64) -> f64 {
    (alpha + 1.0) * statrs::function::beta::beta(0.5 * s + 1.0, alpha + 1.0)
}

/// `‖f‖²_{2,w} = Σ |a_j|² m(2j)`.
pub fn parseval_norm_sq(f: &Polynomial, moment: impl Fn(f64) -> f64) -> f64 {
    f.coeffs().iter().enumerate().map(|(j, a)| a.norm_sqr() * moment(2.0 * j as f64)).sum()
}

/// Deterministic pseudo-random polynomials for sweeps (xorshift, no shared state
/// with the library's generator).
pub struct PolySource(u64);

impl PolySource {
    pub fn new(seed: u64) -> Self {
        PolySource(seed.max(1))
    }

    pub fn uniform(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn polynomial(&mut self, max_degree: usize) -> Polynomial {
        let d = (self.uniform() * (max_degree + 1) as f64) as usize;
        let coeffs = (0..=d.min(max_degree))
            .map(|_| num_complex::Complex64::new(2.0 * self.uniform() - 1.0, 2.0 * self.uniform() - 1.0))
            .collect();
        Polynomial::new(coeffs).unwrap()
    }
}
