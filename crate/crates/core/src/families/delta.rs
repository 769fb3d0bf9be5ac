use super::{dd_jet, ParamTriple, Regime, MAX_FAMILY_ORDER};
use crate::error::{Error, Result};
use crate::specfun::factorial;

/// Δ_{s,t;λ}(x) = D₀(x)² + λ·D₁(x).
pub fn delta(p: &ParamTriple, x: f64) -> Result<f64> {
    delta_deriv(p, 0, x)
}

/// n-th derivative of Δ by Leibniz: `Σ C(n,i) D_i D_{n−i} + λ D_{n+1}`.
pub fn delta_deriv(p: &ParamTriple, n: usize, x: f64) -> Result<f64> {
    check_order(n)?;
    let a = p.shifted(x)?;
    if p.regime == Regime::UnitGap {
        return Ok(unit_gap(p.lambda, n, a));
    }
    let d = dd_jet(p.lo(), p.hi(), x, n + 1)?;
    Ok(leibniz(&d, p.lambda, n))
}

/// `Δ(x), Δ'(x), …, Δ^(n)(x)` from a single divided-difference jet.
pub fn delta_jet(p: &ParamTriple, x: f64, n: usize) -> Result<Vec<f64>> {
    Ok(delta_jet_scaled(p, x, n)?.0)
}

/// [`delta_jet`] together with, per order, the sum of the absolute values of
/// the terms that were added up (`Σ C(n,i)|D_i D_{n−i}| + |λ D_{n+1}|`).
pub fn delta_jet_scaled(p: &ParamTriple, x: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_order(n)?;
    let a = p.shifted(x)?;
    if p.regime == Regime::UnitGap {
        let values = (0..=n).map(|m| unit_gap(p.lambda, m, a)).collect();
        let scales = (0..=n).map(|m| factorial(m + 1) / a.powi(m as i32 + 2) * (1.0 + p.lambda.abs())).collect();
        return Ok((values, scales));
    }
    let d = dd_jet(p.lo(), p.hi(), x, n + 1)?;
    let values = (0..=n).map(|m| leibniz(&d, p.lambda, m)).collect();
    let abs: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let scales = (0..=n).map(|m| leibniz(&abs, p.lambda.abs(), m)).collect();
    Ok((values, scales))
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_FAMILY_ORDER {
        Err(Error::UnsupportedOrder { order: n, max: MAX_FAMILY_ORDER })
    } else {
        Ok(())
    }
}

fn leibniz(d: &[f64], lambda: f64, n: usize) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for i in 0..=n {
        sum += binom * d[i] * d[n - i];
        binom = binom * (n - i) as f64 / (i + 1) as f64;
    }
    sum + lambda * d[n + 1]
}

/// `(1−λ)/a²` and its derivatives `(1−λ)(−1)^n (n+1)!/a^{n+2}`.
fn unit_gap(lambda: f64, n: usize, a: f64) -> f64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    (1.0 - lambda) * sign * factorial(n + 1) / a.powi(n as i32 + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numdiff::derivative;

    fn p(s: f64, t: f64, l: f64) -> ParamTriple {
        ParamTriple::new(s, t, l).unwrap()
    }

    #[test]
    fn unit_gap_values() {
        assert_eq!(delta(&p(0.0, 1.0, 1.0), 7.3).unwrap(), 0.0);
        assert_eq!(delta(&p(0.0, 1.0, 0.0), 2.0).unwrap(), 0.25);
        assert_eq!(delta_deriv(&p(0.0, 1.0, 0.0), 1, 2.0).unwrap(), -0.25);
    }

    #[test]
    fn equal_case_is_trigamma_squared() {
        // ψ'(1)² = (π²/6)²
        let v = delta(&p(0.0, 0.0, 0.0), 1.0).unwrap();
        assert!((v - 2.705_808_084_277_845_5).abs() < 1e-14);
    }

    #[test]
    fn generic_branch_matches_closed_form_near_unit_gap() {
        // gap 1 − 2⁻⁴⁰ goes through the generic path
        let q = p(0.0, 1.0 - 2f64.powi(-40), 0.3);
        let v = delta(&q, 2.0).unwrap();
        assert!((v - 0.7 / 4.0).abs() < 1e-10);
    }

    #[test]
    fn zeroth_derivative_is_delta() {
        let q = p(0.2, 0.7, 0.5);
        assert_eq!(delta_deriv(&q, 0, 1.5).unwrap(), delta(&q, 1.5).unwrap());
        let jet = delta_jet(&q, 1.5, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(jet[n], delta_deriv(&q, n, 1.5).unwrap());
        }
    }

    #[test]
    fn first_derivative_vs_richardson() {
        let q = p(0.2, 0.7, 0.5);
        let fd = derivative(|x| delta(&q, x).unwrap(), 1, 1.5, 1e-4);
        let an = delta_deriv(&q, 1, 1.5).unwrap();
        assert!((fd.value - an).abs() < 1e-7, "{} vs {an}", fd.value);
    }

    #[test]
    fn order_cap() {
        assert!(delta_deriv(&p(0.0, 0.5, 1.0), 9, 1.0).is_err());
    }
}
