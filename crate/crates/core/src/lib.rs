//! Numerical certification, refutation and bounding of the Korenblum
//! domination principle for weighted Bergman spaces `A^p_w` with radial
//! weights.
//!
//! - [`weights`]: radial weights and their moments.
//! - [`analytic`]: polynomials, integral means, weighted norms.
//! - [`schuster`]: the explicit majorant `H(ρ, c)`.
//! - [`certifier`]: `p`-free certification of admissible radii (`p ≥ 1`).
//! - [`refuter`]: counterexamples for `0 < p < 1` and upper bounds on the radius.

// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod certifier;
pub mod error;
pub mod par;
pub mod quad;
pub mod refuter;
pub mod schuster;
pub mod weights;

pub use analytic::{MeanProfile, Polynomial};
pub use certifier::{certify, check_domination, verify_instance, DominationReport, RadiusCertificate};
pub use error::{Error, Result};
pub use par::Execution;
pub use refuter::{
    check_final_inequality, choose_n, find_counterexample, monomial_upper_bound, CounterexampleWitness,
    RadiusUpperBound,
};
pub use schuster::{eval_f, eval_h, SchusterBound};
pub use weights::{Moment, OriginHint, RadialWeight, WeightKind};
