use super::{divided_diff_psi, ParamTriple, Regime};
use crate::error::{Error, Result};
use crate::specfun::{digamma, ln_gamma_ratio};

/// Largest logarithm [`h_func`] and [`z_func`] will exponentiate.
const LN_MAX: f64 = 700.0;

/// ln ℋ_{s,t;λ}(x), assembled from logarithms and a log-gamma difference.
///
/// For `s ≠ t`:
/// `ln1p(h/a)/(2h) − (λ/2)(ln a + ln b) + [ln Γ(b) − ln Γ(a)]/h` with
/// `a = x+lo`, `b = x+hi`, `h = hi − lo`; for `s = t`:
/// `ψ(a) + 1/(2a) − λ ln a`.
pub fn ln_h(p: &ParamTriple, x: f64) -> Result<f64> {
    let a = p.shifted(x)?;
    let lambda = p.lambda;
    match p.regime {
        Regime::UnitGap => Ok(0.5 * (1.0 - lambda) * (a.ln() + (a + 1.0).ln())),
        Regime::Equal => Ok(digamma(a)?.value + 0.5 / a - lambda * a.ln()),
        _ => {
            let h = p.gap();
            let b = x + p.hi();
            Ok((h / a).ln_1p() / (2.0 * h) - 0.5 * lambda * (a.ln() + b.ln()) + ln_gamma_ratio(a, h)? / h)
        }
    }
}

/// ℋ_{s,t;λ}(x); errors instead of overflowing.
pub fn h_func(p: &ParamTriple, x: f64) -> Result<f64> {
    let l = ln_h(p, x)?;
    if l > LN_MAX {
        return Err(Error::Overflow { ln_value: l });
    }
    Ok(l.exp())
}

/// `[Γ(x+t)/Γ(x+s)]^{1/(t−s)} − x`, or `e^{ψ(x+s)} − x` when `s = t`.
pub fn z_func(s: f64, t: f64, x: f64) -> Result<f64> {
    let p = ParamTriple::new(s, t, 0.0)?;
    let a = p.shifted(x)?;
    let l = match p.regime {
        Regime::UnitGap => return Ok(a - x),
        Regime::Equal => digamma(a)?.value,
        _ => ln_gamma_ratio(a, p.gap())? / p.gap(),
    };
    if l > LN_MAX {
        return Err(Error::Overflow { ln_value: l });
    }
    Ok(l.exp() - x)
}

/// Λ_{s,t}(x) = [2(x+s)(x+t)/(2x+s+t)]·[D₀(x) − 1/(2(x+s)(x+t))].
///
/// θ_{s,t;λ}(x) has the sign of `Λ_{s,t}(x) − λ`.
pub fn capital_lambda(s: f64, t: f64, x: f64) -> Result<f64> {
    let p = ParamTriple::new(s, t, 0.0)?;
    if p.regime == Regime::Equal {
        return Err(Error::Degenerate("capital_lambda requires s != t"));
    }
    let a = p.shifted(x)?;
    let b = x + p.hi();
    if a + b == 0.0 {
        return Err(Error::Pole("2x + s + t = 0"));
    }
    if p.regime == Regime::UnitGap {
        return Ok(1.0);
    }
    let d0 = divided_diff_psi(0, p.lo(), p.hi(), x)?;
    Ok((2.0 * a * b * d0 - 1.0) / (a + b))
}
