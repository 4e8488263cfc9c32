//! Numerical integration: globally adaptive Gauss-Kronrod on intervals and the
//! periodic trapezoid rule on circles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Maximum bisection depth of a single subinterval.
pub const MAX_DEPTH: u32 = 40;

/// Hard cap on the number of live subintervals.
const MAX_INTERVALS: usize = 20_000;

// Kronrod 15-point abscissae (non-negative half) and weights, with the embedded
// Gauss 7-point weights for the odd-indexed abscissae.
#[allow(clippy::excessive_precision)]
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Value and error estimate of a quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate { value: 0.0, error: 0.0 };
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

/// Absolute and relative stopping tolerances.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    pub fn relative(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut k = fc * WK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XK[j];
        let pair = f(center - dx) + f(center + dx);
        k += WK[j] * pair;
        if j % 2 == 1 {
            g += WG[j / 2] * pair;
        }
    }
    Estimate { value: k * half, error: ((k - g) * half).abs() }
}

struct Segment {
    a: f64,
    b: f64,
    depth: u32,
    est: Estimate,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Integrates `f` over `[a, b]` with globally adaptive G7-K15 bisection.
///
/// The segment with the largest error estimate is bisected until the summed
/// error meets `tol`. Segments that reach [`MAX_DEPTH`] are frozen; if the
/// frozen error alone exceeds `tol` the integral is reported as divergent.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if !(a < b) {
        return Ok(Estimate::ZERO);
    }
    let first = kronrod(&f, a, b);
    check_finite(first, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, depth: 0, est: first });
    let mut total = first;
    let mut frozen = Estimate::ZERO;

    while total.error > tol.target(total.value) {
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= MAX_DEPTH || heap.len() >= MAX_INTERVALS {
            frozen = frozen + worst.est;
            if frozen.error > tol.target(total.value) {
                return Err(Error::QuadratureDivergence { a, b, error: frozen.error });
            }
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        check_finite(left, worst.a, mid)?;
        check_finite(right, mid, worst.b)?;
        total.value += left.value + right.value - worst.est.value;
        total.error += left.error + right.error - worst.est.error;
        heap.push(Segment { a: worst.a, b: mid, depth: worst.depth + 1, est: left });
        heap.push(Segment { a: mid, b: worst.b, depth: worst.depth + 1, est: right });
    }

    // Re-sum to shed the drift of the running updates.
    let mut sum = frozen;
    for seg in heap {
        sum = sum + seg.est;
    }
    Ok(sum)
}

fn check_finite(est: Estimate, a: f64, b: f64) -> Result<()> {
    if est.value.is_finite() && est.error.is_finite() {
        Ok(())
    } else {
        Err(Error::QuadratureDivergence { a, b, error: f64::INFINITY })
    }
}

/// Mean of a `2π`-periodic function over one period by the trapezoid rule.
///
/// Starts from `initial` nodes (rounded up to a power of two) and doubles,
/// reusing previous samples, until successive estimates agree to `rel_tol`
/// or `max_nodes` is reached. The error is the last observed difference,
/// floored at a few ulps of the value.
pub fn periodic_mean<F: Fn(f64) -> f64>(f: F, initial: usize, max_nodes: usize, rel_tol: f64) -> (Estimate, usize) {
    let mut n = initial.max(4).next_power_of_two();
    let step = std::f64::consts::TAU / n as f64;
    let mut sum: f64 = (0..n).map(|k| f(k as f64 * step)).sum();
    let mut mean = sum / n as f64;
    loop {
        let step = std::f64::consts::TAU / (2 * n) as f64;
        let odd: f64 = (0..n).map(|k| f((2 * k + 1) as f64 * step)).sum();
        sum += odd;
        n *= 2;
        let refined = sum / n as f64;
        let diff = (refined - mean).abs();
        mean = refined;
        let floor = 4.0 * f64::EPSILON * mean.abs();
        if diff <= rel_tol * mean.abs() || diff <= f64::MIN_POSITIVE || n >= max_nodes {
            return (Estimate { value: mean, error: diff.max(floor) }, n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_is_exact_for_low_degree() {
        let est = integrate(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, Tolerance::absolute(1e-14)).unwrap();
        // ∫ x^5 - 3x^2 + 1 over [-1, 2] = (64 - 1)/6 - (8 + 1) + 3
        assert_relative_eq!(est.value, 63.0 / 6.0 - 6.0, max_relative = 1e-14);
    }

    #[test]
    fn sqrt_endpoint() {
        let est = integrate(|x: f64| x.sqrt(), 0.0, 1.0, Tolerance::absolute(1e-12)).unwrap();
        assert!((est.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn nonintegrable_diverges() {
        let r = integrate(|x: f64| 1.0 / x, 0.0, 1.0, Tolerance::absolute(1e-9));
        assert!(matches!(r, Err(Error::QuadratureDivergence { .. })));
    }

    #[test]
    fn empty_interval() {
        assert_eq!(integrate(|_| 1.0, 1.0, 1.0, Tolerance::absolute(1e-9)).unwrap(), Estimate::ZERO);
    }

    #[test]
    fn trapezoid_mean_of_trig_polynomial() {
        let (est, n) = periodic_mean(|t: f64| (3.0 * t).cos().powi(2), 8, 1 << 12, 1e-14);
        assert_relative_eq!(est.value, 0.5, max_relative = 1e-14);
        assert!(n <= 32);
    }
}
