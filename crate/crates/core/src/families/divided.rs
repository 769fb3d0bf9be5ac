use crate::error::{Error, Result};
use crate::specfun::{polygamma, polygamma_diff};

/// Highest `k` accepted by [`divided_diff_psi`].
pub const MAX_DD_ORDER: usize = 15;

/// Below this gap the divided difference is replaced by the midpoint derivative.
const TAYLOR_GAP: f64 = 1e-8;

/// `[ψ^(k)(x+t) − ψ^(k)(x+s)]/(t−s)`, or `ψ^(k+1)(x+s)` when `s = t`.
///
/// At `|t − s| = 1` the recurrence gives the exact value `(−1)^k k!/(x+α)^{k+1}`.
pub fn divided_diff_psi(k: usize, s: f64, t: f64, x: f64) -> Result<f64> {
    if k > MAX_DD_ORDER {
        return Err(Error::UnsupportedOrder { order: k, max: MAX_DD_ORDER });
    }
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    let a = x + lo;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain { what: "x must exceed -min(s, t)", value: x });
    }
    let h = hi - lo;
    if h == 0.0 {
        return Ok(polygamma(k + 1, a)?.value);
    }
    if h == 1.0 {
        return Ok(unit_gap(k, a));
    }
    if h < TAYLOR_GAP {
        return Ok(polygamma(k + 1, x + 0.5 * (lo + hi))?.value);
    }
    Ok(polygamma_diff(k, a, h)? / h)
}

#[inline]
fn unit_gap(k: usize, a: f64) -> f64 {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * crate::specfun::factorial(k) / a.powi(k as i32 + 1)
}

/// `D_0(x), …, D_n(x)` in one call.
pub fn dd_jet(s: f64, t: f64, x: f64, n: usize) -> Result<Vec<f64>> {
    (0..=n).map(|k| divided_diff_psi(k, s, t, x)).collect()
}
