use crate::error::{ensure_positive, Result};
use crate::specfun::{digamma, ln_gamma_ratio, polygamma, psi_positive_root};

/// Half-width of the window around `c` where [`q_func`] returns its limit.
pub const Q_WINDOW: f64 = 1e-4;

/// `ln(e^y − 1)` for `y > 0`.
fn ln_expm1(y: f64) -> f64 {
    if y > 1.0 {
        y + (-(-y).exp()).ln_1p()
    } else {
        y.exp_m1().ln()
    }
}

/// φ(x) = ψ(x) + ln(e^{1/x} − 1).
pub fn phi(x: f64) -> Result<f64> {
    ensure_positive("phi requires x > 0", x)?;
    Ok(digamma(x)?.value + ln_expm1(1.0 / x))
}

/// `(y − 1)e^y + 1`, by its series `Σ_{n≥2} (n−1)yⁿ/n!` near 0.
fn q_denominator(y: f64) -> f64 {
    if y.abs() >= 0.5 {
        return (y - 1.0) * y.exp() + 1.0;
    }
    let mut term = y; // yⁿ/n! at n = 1
    let mut sum = 0.0;
    for n in 2..40 {
        term *= y / n as f64;
        let add = (n - 1) as f64 * term;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Q(x) = [ln Γ(x) − ln Γ(c)] / ([ψ(x) − 1]e^{ψ(x)} + 1), with the removable
/// singularity at the zero `c` of ψ filled by `1/ψ'(c)`.
pub fn q_func(x: f64) -> Result<f64> {
    ensure_positive("q_func requires x > 0", x)?;
    let c = psi_positive_root();
    if (x - c).abs() <= Q_WINDOW {
        return Ok(1.0 / polygamma(1, c)?.value);
    }
    let num = ln_gamma_ratio(c, x - c)?;
    let den = q_denominator(digamma(x)?.value);
    Ok(num / den)
}
