//! Log-gamma, digamma and polygamma functions on the positive axis.
//!
//! The fast paths shift the argument upward with the recurrence
//! `ψ^(k)(x+1) = ψ^(k)(x) + (−1)^k k!/x^{k+1}` until `x ≥ 10 + k` and then sum
//! the Bernoulli asymptotic expansion; the reported error is the magnitude of
//! the first omitted term. [`polygamma_oracle`] is an independent direct
//! series used to cross-check them.

mod bernoulli;
mod gamma;
mod oracle;
mod polygamma;

use serde::Serialize;

pub use bernoulli::{b2j, BERNOULLI_EVEN};
pub use gamma::{ln_gamma, ln_gamma_ratio};
pub use oracle::polygamma_oracle;
pub use polygamma::{digamma, polygamma, polygamma_diff, polygamma_tail, psi_positive_root, MAX_POLYGAMMA_ORDER};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

/// How a [`PolyEval`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Asymptotic,
    RecurrenceAsymptotic,
    OracleSeries,
    Quadrature,
}

/// A polygamma value together with an estimate of its truncation error.
///
/// `abs_err_est` accounts for series truncation only, not floating-point
/// rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolyEval {
    pub value: f64,
    pub abs_err_est: f64,
    pub method: Method,
}

/// Named constants: γ and the positive zero of ψ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub psi_root_c: f64,
}

pub fn constants() -> Constants {
    Constants { euler_gamma: EULER_GAMMA, psi_root_c: psi_positive_root() }
}

/// `k!` as a float (exact for `k ≤ 22`).
pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `(y + h)^{−m} − y^{−m}` without cancellation, for `y > 0`, `y + h > 0`.
#[inline]
pub(crate) fn inv_pow_diff(y: f64, h: f64, m: i32) -> f64 {
    y.powi(-m) * (-(m as f64) * (h / y).ln_1p()).exp_m1()
}
