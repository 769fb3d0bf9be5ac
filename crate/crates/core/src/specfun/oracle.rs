//! Slow reference evaluation of ψ and ψ^(k) straight from their series.
//!
//! Nothing here touches the recurrence/asymptotic fast path: the partial sum
//! runs to `N` terms, and the remainder is closed by Euler–Maclaurin with the
//! integral, the half end term and the `B₂` correction. The summands have a
//! fourth derivative of constant sign, so the remainder after the `B₂` term is
//! bounded by `|f'''(N)|/720`, which becomes `abs_err_est`.

use super::{factorial, Method, PolyEval, EULER_GAMMA, MAX_POLYGAMMA_ORDER};
use crate::error::{ensure_positive, Error, Result};

/// Smallest abscissa at which the Euler–Maclaurin remainder is applied.
const TAIL_START: f64 = 2000.0;

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// ψ^(k)(x) by direct summation; `k = 0` gives ψ.
pub fn polygamma_oracle(k: usize, x: f64) -> Result<PolyEval> {
    ensure_positive("polygamma_oracle requires x > 0", x)?;
    if k > MAX_POLYGAMMA_ORDER {
        return Err(Error::UnsupportedOrder { order: k, max: MAX_POLYGAMMA_ORDER });
    }
    if k == 0 {
        Ok(digamma_series(x))
    } else {
        Ok(polygamma_series(k, x))
    }
}

/// ψ(x) = −γ + Σ_{n≥0} [1/(n+1) − 1/(n+x)].
fn digamma_series(x: f64) -> PolyEval {
    let n_terms = TAIL_START as usize;
    let mut acc = CompensatedSum::default();
    for n in (0..n_terms).rev() {
        let n = n as f64;
        acc.add((x - 1.0) / ((n + 1.0) * (n + x)));
    }
    let nf = TAIL_START;
    let f = (x - 1.0) / ((nf + 1.0) * (nf + x));
    let df = (nf + x).powi(-2) - (nf + 1.0).powi(-2);
    let integral = ((x - 1.0) / (nf + 1.0)).ln_1p();
    acc.add(integral);
    acc.add(0.5 * f);
    acc.add(-df / 12.0);
    let d3 = 6.0 * ((nf + x).powi(-4) - (nf + 1.0).powi(-4));
    PolyEval { value: acc.value() - EULER_GAMMA, abs_err_est: d3.abs() / 720.0, method: Method::OracleSeries }
}

/// ψ^(k)(x) = (−1)^{k+1} k! Σ_{n≥0} (x+n)^{−(k+1)}.
fn polygamma_series(k: usize, x: f64) -> PolyEval {
    let m = k as i32 + 1;
    let n_terms = if x < TAIL_START { (TAIL_START - x).ceil() as usize } else { 0 };
    let mut acc = CompensatedSum::default();
    for n in (0..n_terms).rev() {
        acc.add((x + n as f64).powi(-m));
    }
    let y = x + n_terms as f64;
    let mf = m as f64;
    let f = y.powi(-m);
    acc.add(y.powi(1 - m) / (mf - 1.0));
    acc.add(0.5 * f);
    // −f'(y)/12 with f' = −m y^{−m−1}
    acc.add(mf * y.powi(-m - 1) / 12.0);
    let d3 = mf * (mf + 1.0) * (mf + 2.0) * y.powi(-m - 3);
    let kf = factorial(k);
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    PolyEval { value: sign * kf * acc.value(), abs_err_est: kf * d3 / 720.0, method: Method::OracleSeries }
}
