//! Schuster's explicit majorant `H(ρ, c)` for the oscillation quantity used in
//! the admissible-radius argument.
//!
//! `F(ρ, c)` is a product of elementary rational factors in `ρ` and `c`;
//! `H = F / √(1 − F²)` wherever `F < 1`. On the box `0 < c < 1/4`,
//! `c < ρ < 1`, `F` dips below 1 in the interior and climbs back to just above
//! 1 at both ends, and as `c → 0` it tends to `2ρ/(1 + ρ²)`, so that
//! `H → 2ρ/(1 − ρ²)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper end (exclusive) of the admissible `c` range.
pub const C_LIMIT: f64 = 0.25;

/// `F(ρ, c)` together with `H(ρ, c)` when the latter is defined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchusterBound {
    pub rho: f64,
    pub c: f64,
    pub f: f64,
    /// `None` when `F ≥ 1` and the bound is vacuous.
    pub h: Option<f64>,
    pub valid: bool,
}

impl SchusterBound {
    /// `1/H`, taken as 0 where `H` is undefined.
    pub fn reciprocal(&self) -> f64 {
        match self.h {
            Some(_) => (1.0 - self.f * self.f).sqrt() / self.f,
            None => 0.0,
        }
    }
}

fn check_box(rho: f64, c: f64) -> Result<()> {
    if !(c > 0.0 && c < C_LIMIT) {
        return Err(Error::Domain(format!("Schuster bound needs 0 < c < 1/4, got c = {c}")));
    }
    if !(rho > c && rho < 1.0) {
        return Err(Error::Domain(format!("Schuster bound needs c < rho < 1, got rho = {rho}, c = {c}")));
    }
    Ok(())
}

/// Evaluates `F(ρ, c)` factor by factor in the grouping
/// `(2c/ρ)(1 + ρ²/c) · (1 − c¹²)/(1 − c¹⁰) · ∏_{n=1}^{5} N_n / D_n`.
pub fn eval_f(rho: f64, c: f64) -> Result<f64> {
    check_box(rho, c)?;
    Ok(f_unchecked(rho, c))
}

pub(crate) fn f_unchecked(rho: f64, c: f64) -> f64 {
    let rho2 = rho * rho;
    let inv_rho2 = 1.0 / rho2;
    let lead = (2.0 * c / rho) * (1.0 + rho2 / c);
    let ratio = (1.0 - c.powi(12)) / (1.0 - c.powi(10));
    let mut product = 1.0;
    for n in 1..=5 {
        let num =
            (1.0 + rho2 * c.powi(2 * n - 1)) * (1.0 + inv_rho2 * c.powi(2 * n + 1)) * (1.0 + c.powi(2 * n)).powi(2);
        let den =
            (1.0 + rho2 * c.powi(2 * n - 2)) * (1.0 + inv_rho2 * c.powi(2 * n)) * (1.0 + c.powi(2 * n - 1)).powi(2);
        product *= num / den;
    }
    lead * ratio * product
}

/// Evaluates `F` and `H = F/√(1 − F²)`.
pub fn eval_h(rho: f64, c: f64) -> Result<SchusterBound> {
    check_box(rho, c)?;
    Ok(bound_unchecked(rho, c))
}

pub(crate) fn bound_unchecked(rho: f64, c: f64) -> SchusterBound {
    let f = f_unchecked(rho, c);
    let valid = f < 1.0;
    let h = valid.then(|| f / (1.0 - f * f).sqrt());
    SchusterBound { rho, c, f, h, valid }
}

/// Locates the parts of `(c, 1)` where `F(ρ, c) ≥ 1` and the bound is
/// vacuous.
///
/// The five-factor product overshoots 1 by a tiny amount in thin layers next
/// to `ρ = c` and `ρ = 1` (the two are exchanged by `ρ ↦ c/ρ`); each layer
/// is returned with its inner edge found by bisection from `√c`, where `F`
/// is well below 1.
pub fn vacuous_region(c: f64) -> Result<Vec<(f64, f64)>> {
    let mid = c.sqrt();
    check_box(mid, c)?;
    let lo_end = c * (1.0 + 4.0 * f64::EPSILON);
    let hi_end = 1.0 - f64::EPSILON;
    let mut regions = Vec::new();
    if f_unchecked(lo_end, c) >= 1.0 {
        regions.push((c, crossing(c, lo_end, mid)));
    }
    if f_unchecked(hi_end, c) >= 1.0 {
        regions.push((crossing(c, hi_end, mid), 1.0));
    }
    Ok(regions)
}

/// Bisects between `vacuous` (F ≥ 1) and `proper` (F < 1).
fn crossing(c: f64, mut vacuous: f64, mut proper: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (vacuous + proper);
        if m == vacuous || m == proper {
            break;
        }
        if f_unchecked(m, c) >= 1.0 {
            vacuous = m;
        } else {
            proper = m;
        }
    }
    vacuous
}
