use super::{dd_jet, ParamTriple, Regime, MAX_FAMILY_ORDER};
use crate::error::{ensure_positive, Error, Result};
use crate::quad;
use crate::specfun::{factorial, inv_pow_diff, polygamma, polygamma_diff};

/// θ_{s,t;λ}(x) = D₀(x) − [1 + λ(2x+s+t)] / [2(x+s)(x+t)].
pub fn theta(p: &ParamTriple, x: f64) -> Result<f64> {
    theta_deriv(p, 0, x)
}

/// n-th derivative of θ: `D_n` minus the n-th derivative of the rational
/// part, written in partial fractions
/// `½[(1/h + λ)/(x+lo) + (λ − 1/h)/(x+hi)]` with `h = hi − lo`.
pub fn theta_deriv(p: &ParamTriple, n: usize, x: f64) -> Result<f64> {
    check_order(n)?;
    let a = p.shifted(x)?;
    match p.regime {
        Regime::UnitGap => Ok(unit_gap(p.lambda, n, a)),
        Regime::Equal => Ok(polygamma(n + 1, a)?.value - rational_equal(p.lambda, n, a)),
        _ if a < 1.0 => Ok(near_boundary(p, n, a)?.0),
        _ => {
            let d = super::divided_diff_psi(n, p.lo(), p.hi(), x)?;
            Ok(d - rational(p, n, a, x + p.hi()))
        }
    }
}

/// `θ^(n)` for `a = x + lo < 1`, with the `a^{−n−1}` pole of `D_n` peeled off
/// by the recurrence and merged with the rational part:
/// `[ψ^(n)(a+h) − ψ^(n)(a+1)]/h + ½(−1)^n n!(1/h − λ)(a^{−n−1} + (a+h)^{−n−1})`.
/// Returns the value and the sum of the two terms' magnitudes.
fn near_boundary(p: &ParamTriple, n: usize, a: f64) -> Result<(f64, f64)> {
    let h = p.gap();
    let m = n as i32 + 1;
    let head = polygamma_diff(n, a + 1.0, h - 1.0)? / h;
    let tail = 0.5 * alt(n) * factorial(n) * (1.0 / h - p.lambda) * (a.powi(-m) + (a + h).powi(-m));
    Ok((head + tail, head.abs() + tail.abs()))
}

/// `θ(x), θ'(x), …, θ^(n)(x)`.
pub fn theta_jet(p: &ParamTriple, x: f64, n: usize) -> Result<Vec<f64>> {
    Ok(theta_jet_scaled(p, x, n)?.0)
}

/// [`theta_jet`] together with, per order, `|D_n| + |R^(n)|` where `R` is the
/// rational part that is subtracted (the magnitudes of the two terms of the
/// rearranged form when `x + lo < 1`).
pub fn theta_jet_scaled(p: &ParamTriple, x: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_order(n)?;
    let a = p.shifted(x)?;
    if matches!(p.regime, Regime::SubUnitGap | Regime::SuperUnitGap) && a < 1.0 {
        return Ok((0..=n).map(|m| near_boundary(p, m, a)).collect::<Result<Vec<_>>>()?.into_iter().unzip());
    }
    let pairs: Vec<(f64, f64)> = match p.regime {
        Regime::UnitGap => (0..=n)
            .map(|m| {
                let d = alt(m) * factorial(m) / a.powi(m as i32 + 1);
                (d, d - unit_gap(p.lambda, m, a))
            })
            .collect(),
        Regime::Equal => {
            (0..=n).map(|m| Ok((polygamma(m + 1, a)?.value, rational_equal(p.lambda, m, a)))).collect::<Result<_>>()?
        }
        _ => {
            let d = dd_jet(p.lo(), p.hi(), x, n)?;
            let b = x + p.hi();
            (0..=n).map(|m| (d[m], rational(p, m, a, b))).collect()
        }
    };
    match p.regime {
        // keep the exact closed form (identically zero at λ = 1)
        Regime::UnitGap => {
            let values = (0..=n).map(|m| unit_gap(p.lambda, m, a)).collect();
            Ok((values, pairs.iter().map(|(d, r)| d.abs() + r.abs()).collect()))
        }
        _ => Ok(pairs.iter().map(|(d, r)| (d - r, d.abs() + r.abs())).unzip()),
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_FAMILY_ORDER {
        Err(Error::UnsupportedOrder { order: n, max: MAX_FAMILY_ORDER })
    } else {
        Ok(())
    }
}

#[inline]
fn alt(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// n-th derivative of the rational part for `s ≠ t`. The `1/h` term is formed
/// from `a^{−m} − b^{−m}` without cancellation.
fn rational(p: &ParamTriple, n: usize, a: f64, b: f64) -> f64 {
    let m = n as i32 + 1;
    let h = p.gap();
    let sum = a.powi(-m) + b.powi(-m);
    let diff = -inv_pow_diff(a, h, m) / h;
    0.5 * alt(n) * factorial(n) * (p.lambda * sum + diff)
}

/// n-th derivative of `1/(2a²) + λ/a`.
fn rational_equal(lambda: f64, n: usize, a: f64) -> f64 {
    alt(n) * (0.5 * factorial(n + 1) / a.powi(n as i32 + 2) + lambda * factorial(n) / a.powi(n as i32 + 1))
}

/// `(1−λ)/2·[1/a + 1/(a+1)]` and its derivatives.
fn unit_gap(lambda: f64, n: usize, a: f64) -> f64 {
    let m = n as i32 + 1;
    0.5 * (1.0 - lambda) * alt(n) * factorial(n) * (a.powi(-m) + (a + 1.0).powi(-m))
}

/// `tanh(|t−s|u/2) / [|t−s|·tanh(u/2)]`; exactly 1 at `|t − s| = 1`.
pub fn kernel_g(s: f64, t: f64, u: f64) -> Result<f64> {
    if s == t {
        return Err(Error::Degenerate("kernel_g requires s != t"));
    }
    ensure_positive("kernel_g requires u > 0", u)?;
    let h = (t - s).abs();
    if h == 1.0 {
        return Ok(1.0);
    }
    Ok((0.5 * h * u).tanh() / (h * (0.5 * u).tanh()))
}

/// θ from its Laplace representation
/// `½∫₀^∞ [g(u) − λ](e^{−(x+s)u} + e^{−(x+t)u}) du`, by adaptive Gauss–Kronrod
/// on `[0, U]` with `e^{−(x+α)U} ≈ 1e−16` and an analytic bound for the rest.
pub fn theta_quadrature(p: &ParamTriple, x: f64) -> Result<f64> {
    if p.regime == Regime::Equal {
        return Err(Error::Degenerate("theta_quadrature requires s != t"));
    }
    let a = p.shifted(x)?;
    let b = x + p.hi();
    let (lo, hi, lambda) = (p.lo(), p.hi(), p.lambda);
    let integrand = |u: f64| {
        let g = kernel_g(lo, hi, u).unwrap_or(f64::NAN);
        0.5 * (g - lambda) * ((-a * u).exp() + (-b * u).exp())
    };
    let upper = 16.0 * std::f64::consts::LN_10 / a;
    let q = quad::integrate(integrand, 0.0, upper, 1e-13, 1e-12, 4000)?;
    let bound = 1f64.max(1.0 / p.gap()) + lambda.abs();
    let tail = bound * (-a * upper).exp() / a;
    let err = q.abs_err + tail;
    let tolerance = 1e-9 * (1.0 + q.value.abs());
    if err > tolerance || !q.value.is_finite() {
        return Err(Error::NonConvergence { estimate: err, tolerance });
    }
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{delta, ln_h};
    use crate::numdiff::derivative;
    use std::f64::consts::PI;

    fn p(s: f64, t: f64, l: f64) -> ParamTriple {
        ParamTriple::new(s, t, l).unwrap()
    }

    #[test]
    fn unit_gap_lambda_one_vanishes() {
        let q = p(0.0, 1.0, 1.0);
        for n in 0..=8 {
            for x in [1e-3, 0.5, 3.0, 1e4] {
                assert_eq!(theta_deriv(&q, n, x).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn boundary_form_matches_direct_form() {
        for (s, t, l) in [(0.0, 0.5, 1.3), (0.2, 2.7, 0.1), (-0.5, 0.25, 4.0 / 3.0)] {
            let q = p(s, t, l);
            for a in [0.6, 0.8, 0.99] {
                let x = a - q.lo();
                for n in 0..=8 {
                    let fast = near_boundary(&q, n, a).unwrap().0;
                    let d = crate::families::divided_diff_psi(n, s, t, x).unwrap();
                    let direct = d - rational(&q, n, a, x + q.hi());
                    assert!(
                        (fast - direct).abs() <= 1e-12 * (d.abs() + direct.abs()),
                        "n={n} a={a}: {fast} vs {direct}"
                    );
                }
            }
        }
    }

    #[test]
    fn equal_case_value() {
        let v = theta(&p(0.0, 0.0, 0.0), 1.0).unwrap();
        assert!((v - (PI * PI / 6.0 - 0.5)).abs() < 1e-14);
    }

    #[test]
    fn partial_fractions_match_direct_rational() {
        let q = p(0.3, 0.8, 0.4);
        let x = 2.0;
        let direct = crate::families::divided_diff_psi(0, 0.3, 0.8, x).unwrap()
            - (1.0 + 0.4 * (2.0 * x + 1.1)) / (2.0 * (x + 0.3) * (x + 0.8));
        assert!((theta(&q, x).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn telescoping_at_reference_point() {
        let q = p(0.3, 0.8, 0.4);
        let x = 2.0;
        let lhs = delta(&q, x).unwrap() - delta(&q, x + 1.0).unwrap();
        let rhs = 2.0 * theta(&q, x).unwrap() / ((x + 0.3) * (x + 0.8));
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn second_derivative_vs_richardson() {
        let q = p(0.1, 0.6, 1.0);
        let fd = derivative(|x| theta(&q, x).unwrap(), 2, 1.0, 0.05);
        let an = theta_deriv(&q, 2, 1.0).unwrap();
        assert!((fd.value - an).abs() < 1e-6, "{} vs {an}", fd.value);
    }

    #[test]
    fn jet_matches_single_derivatives() {
        for q in [p(0.1, 0.6, 1.0), p(0.0, 0.0, 0.3), p(2.0, 0.0, 0.7), p(0.5, 1.5, 2.0)] {
            let jet = theta_jet(&q, 1.3, 6).unwrap();
            for n in 0..=6 {
                assert_eq!(jet[n], theta_deriv(&q, n, 1.3).unwrap());
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for (q, x) in [(p(0.25, 0.75, 1.0), 2.0), (p(0.0, 2.0, 0.5), 1.0), (p(0.0, 0.4, 2.5), 0.01)] {
            let exact = theta(&q, x).unwrap();
            let quad = theta_quadrature(&q, x).unwrap();
            assert!((quad - exact).abs() <= 1e-8 * (1.0 + exact.abs()), "{q:?} x={x}: {quad} vs {exact}");
        }
        assert!(theta_quadrature(&p(0.0, 1.0, 1.0), 1.0).unwrap().abs() < 1e-9);
        assert!(theta_quadrature(&p(1.0, 1.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn kernel_limits() {
        assert_eq!(kernel_g(0.0, 1.0, 3.7).unwrap(), 1.0);
        assert!((kernel_g(0.0, 0.5, 1e-8).unwrap() - 1.0).abs() < 1e-6);
        assert!((kernel_g(0.0, 0.5, 200.0).unwrap() - 2.0).abs() < 1e-10);
        assert!(kernel_g(0.4, 0.4, 1.0).is_err());
        assert!(kernel_g(0.0, 0.4, 0.0).is_err());
    }

    #[test]
    fn ln_h_derivative_is_theta() {
        let q = p(0.2, 0.9, 2.0);
        let fd = derivative(|x| ln_h(&q, x).unwrap(), 1, 1.5, 0.1);
        assert!((fd.value - theta(&q, 1.5).unwrap()).abs() < 1e-7);
    }
}
