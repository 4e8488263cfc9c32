//! Radial weights on the unit disk and their radial moments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, Estimate, Tolerance};

/// The parametric families a [`RadialWeight`] can take.
///
/// Serialized with an internal `kind` tag, e.g. `{"kind":"step","R":0.5}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightKind {
    /// `w(r) = level`.
    Constant { level: f64 },
    /// `w(r) = (alpha + 1)(1 - r^2)^alpha`, `alpha > -1`.
    Standard { alpha: f64 },
    /// `w = 0` on `[0, R)` and `1` on `[R, 1)`.
    Step {
        #[serde(rename = "R")]
        inner_radius: f64,
    },
    /// Piecewise linear through `(r[i], w[i])`, constant after the last knot.
    Table {
        #[serde(rename = "r")]
        knots: Vec<f64>,
        #[serde(rename = "w")]
        values: Vec<f64>,
    },
}

/// What can be said about `liminf w(r)` as `r -> 0+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OriginHint {
    PositiveLiminf,
    ZeroNearOrigin,
    Unknown,
}

/// A validated nonnegative radial weight with finite positive mass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightKind", into = "WeightKind")]
pub struct RadialWeight {
    kind: WeightKind,
}

/// `∫₀¹ 2 r^{s+1} w(r) dr` together with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moment {
    pub exponent: f64,
    pub value: f64,
    pub est_error: f64,
}

impl TryFrom<WeightKind> for RadialWeight {
    type Error = Error;

    fn try_from(kind: WeightKind) -> Result<Self> {
        RadialWeight::new(kind)
    }
}

impl From<RadialWeight> for WeightKind {
    fn from(w: RadialWeight) -> Self {
        w.kind
    }
}

impl RadialWeight {
    pub fn new(kind: WeightKind) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidWeight(msg));
        match &kind {
            WeightKind::Constant { level } => {
                if !(level.is_finite() && *level > 0.0) {
                    return bad(format!("constant level must be finite and positive, got {level}"));
                }
            }
            WeightKind::Standard { alpha } => {
                if !(alpha.is_finite() && *alpha > -1.0) {
                    return bad(format!("standard weight needs alpha > -1 to be integrable, got {alpha}"));
                }
            }
            WeightKind::Step { inner_radius } => {
                if !(*inner_radius > 0.0 && *inner_radius < 1.0) {
                    return bad(format!("step radius must lie in (0, 1), got {inner_radius}"));
                }
            }
            WeightKind::Table { knots, values } => {
                if knots.is_empty() || knots.len() != values.len() {
                    return bad(format!(
                        "table needs matching nonempty r and w lists (got {} and {})",
                        knots.len(),
                        values.len()
                    ));
                }
                if knots[0] != 0.0 {
                    return bad(format!("first table knot must be 0, got {}", knots[0]));
                }
                if knots.windows(2).any(|p| !(p[0] < p[1])) {
                    return bad("table knots must be strictly increasing".into());
                }
                let last = knots[knots.len() - 1];
                if !(last < 1.0) {
                    return bad(format!("last table knot must be below 1, got {last}"));
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return bad("table values must be finite and nonnegative".into());
                }
            }
        }
        let w = RadialWeight { kind };
        if let WeightKind::Table { .. } = w.kind {
            if !(w.table_moment(0.0, 0.0, 1.0) > 0.0) {
                return bad("table weight has zero total mass".into());
            }
        }
        Ok(w)
    }

    pub fn constant(level: f64) -> Result<Self> {
        Self::new(WeightKind::Constant { level })
    }

    pub fn standard(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Standard { alpha })
    }

    pub fn step(inner_radius: f64) -> Result<Self> {
        Self::new(WeightKind::Step { inner_radius })
    }

    pub fn table(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(WeightKind::Table { knots, values })
    }

    /// The unweighted Bergman space, `w ≡ 1`.
    pub fn unweighted() -> Self {
        RadialWeight { kind: WeightKind::Constant { level: 1.0 } }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        // Parse the kind first so invalid parameters surface as InvalidWeight
        // rather than as a stringified serde error.
        let kind: WeightKind =
            serde_json::from_str(text).map_err(|e| Error::InvalidWeight(format!("malformed weight JSON: {e}")))?;
        Self::new(kind)
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    /// Evaluates `w(r)` for `r ∈ [0, 1)`.
    pub fn eval(&self, r: f64) -> f64 {
        match &self.kind {
            WeightKind::Constant { level } => *level,
            WeightKind::Standard { alpha } => (alpha + 1.0) * (1.0 - r * r).powf(*alpha),
            WeightKind::Step { inner_radius } => {
                if r < *inner_radius {
                    0.0
                } else {
                    1.0
                }
            }
            WeightKind::Table { knots, values } => {
                let i = knots.partition_point(|&k| k <= r);
                if i == 0 {
                    values[0]
                } else if i == knots.len() {
                    values[i - 1]
                } else {
                    let t = (r - knots[i - 1]) / (knots[i] - knots[i - 1]);
                    values[i - 1] + t * (values[i] - values[i - 1])
                }
            }
        }
    }

    /// Computes `∫_a^b g(r) w(r) dr` for `0 ≤ a ≤ b ≤ 1`.
    ///
    /// Splits at the discontinuities of the weight and, for standard weights
    /// with `alpha < 0`, substitutes `u = (1 - r)^{alpha+1}` near `r = 1` so
    /// that the singular factor is absorbed exactly.
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
        if !(a < b) {
            return Ok(Estimate::ZERO);
        }
        match &self.kind {
            WeightKind::Constant { level } => {
                let tol = Tolerance { abs: tol.abs / level, rel: tol.rel };
                let e = quad::integrate(g, a, b, tol)?;
                Ok(Estimate { value: e.value * level, error: e.error * level })
            }
            WeightKind::Step { inner_radius } => quad::integrate(g, a.max(*inner_radius), b, tol),
            WeightKind::Standard { alpha } => {
                let alpha = *alpha;
                let scale = alpha + 1.0;
                if alpha >= 0.0 || b <= 0.5 {
                    let wg = |r: f64| g(r) * scale * (1.0 - r * r).powf(alpha);
                    return quad::integrate(wg, a, b, tol);
                }
                let split = a.max(0.5);
                let half = Tolerance { abs: 0.5 * tol.abs, rel: tol.rel };
                let inner = if a < split {
                    quad::integrate(|r: f64| g(r) * scale * (1.0 - r * r).powf(alpha), a, split, half)?
                } else {
                    Estimate::ZERO
                };
                let gamma = 1.0 / scale;
                let u_lo = (1.0 - b).powf(scale);
                let u_hi = (1.0 - split).powf(scale);
                let outer = quad::integrate(
                    |u: f64| {
                        let r = 1.0 - u.powf(gamma);
                        g(r) * (1.0 + r).powf(alpha)
                    },
                    u_lo,
                    u_hi,
                    half,
                )?;
                Ok(inner + outer)
            }
            WeightKind::Table { knots, .. } => {
                let mut cuts = vec![a];
                cuts.extend(knots.iter().copied().filter(|&k| k > a && k < b));
                cuts.push(b);
                let piece_tol = Tolerance { abs: tol.abs / (cuts.len() - 1) as f64, rel: tol.rel };
                let mut total = Estimate::ZERO;
                for span in cuts.windows(2) {
                    total = total + quad::integrate(|r: f64| g(r) * self.eval(r), span[0], span[1], piece_tol)?;
                }
                Ok(total)
            }
        }
    }

    /// `∫_a^b 2 r^{s+1} w(r) dr`, in closed form where the family allows it.
    pub fn partial_moment(&self, s: f64, a: f64, b: f64, tol: f64) -> Result<Estimate> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!("moment exponent must be finite and nonnegative, got {s}")));
        }
        if !(0.0 <= a && a <= b && b <= 1.0) {
            return Err(Error::Domain(format!("moment range [{a}, {b}] must lie in [0, 1]")));
        }
        let exact = |value: f64| Ok(Estimate { value, error: 0.0 });
        match &self.kind {
            WeightKind::Constant { level } => exact(level * power_moment(s + 1.0, a, b)),
            WeightKind::Step { inner_radius } => {
                exact(power_moment(s + 1.0, a.max(*inner_radius), b.max(*inner_radius)))
            }
            WeightKind::Table { .. } => exact(self.table_moment(s, a, b)),
            WeightKind::Standard { .. } => self.integrate(|r| 2.0 * r.powf(s + 1.0), a, b, Tolerance::absolute(tol)),
        }
    }

    fn table_moment(&self, s: f64, a: f64, b: f64) -> f64 {
        let WeightKind::Table { knots, values } = &self.kind else {
            unreachable!("table_moment on a non-table weight")
        };
        let mut total = 0.0;
        for i in 0..knots.len() {
            let lo = knots[i].max(a);
            let hi = knots.get(i + 1).copied().unwrap_or(1.0).min(b);
            if !(lo < hi) {
                continue;
            }
            // w = u + v r on this piece
            let (u, v) = match knots.get(i + 1) {
                Some(&k1) => {
                    let v = (values[i + 1] - values[i]) / (k1 - knots[i]);
                    (values[i] - v * knots[i], v)
                }
                None => (values[i], 0.0),
            };
            total += u * power_moment(s + 1.0, lo, hi) + v * power_moment(s + 2.0, lo, hi);
        }
        total
    }

    /// The radial moment `m(s) = ∫₀¹ 2 r^{s+1} w(r) dr`.
    pub fn moment(&self, s: f64, tol: f64) -> Result<Moment> {
        let e = self.partial_moment(s, 0.0, 1.0, tol)?;
        Ok(Moment { exponent: s, value: e.value, est_error: e.error })
    }

    /// Total mass `m(0)`.
    pub fn mass(&self, tol: f64) -> Result<f64> {
        Ok(self.moment(0.0, tol)?.value)
    }

    /// `∫₀^c 2 r w(r) dr`.
    pub fn inner_mass(&self, c: f64, tol: f64) -> Result<f64> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain(format!("radius c must lie in (0, 1), got {c}")));
        }
        Ok(self.partial_moment(0.0, 0.0, c, tol)?.value)
    }

    /// `∫_c^1 2 r w(r) dr`.
    pub fn outer_mass(&self, c: f64, tol: f64) -> Result<f64> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain(format!("radius c must lie in (0, 1), got {c}")));
        }
        Ok(self.partial_moment(0.0, c, 1.0, tol)?.value)
    }

    /// Classifies the behaviour of the weight at the origin.
    pub fn liminf_at_origin_hint(&self) -> OriginHint {
        match &self.kind {
            WeightKind::Constant { level } if *level > 0.0 => OriginHint::PositiveLiminf,
            WeightKind::Constant { .. } => OriginHint::ZeroNearOrigin,
            WeightKind::Standard { .. } => OriginHint::PositiveLiminf,
            WeightKind::Step { .. } => OriginHint::ZeroNearOrigin,
            WeightKind::Table { values, .. } => {
                if values[0] > 0.0 {
                    OriginHint::PositiveLiminf
                } else {
                    OriginHint::ZeroNearOrigin
                }
            }
        }
    }
}

/// `∫_a^b 2 r^t dr`.
fn power_moment(t: f64, a: f64, b: f64) -> f64 {
    2.0 * (b.powf(t + 1.0) - a.powf(t + 1.0)) / (t + 1.0)
}
