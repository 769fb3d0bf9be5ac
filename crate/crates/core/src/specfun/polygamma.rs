use std::sync::OnceLock;

use super::{b2j, factorial, inv_pow_diff, Method, PolyEval};
use crate::error::{ensure_positive, Error, Result};

/// Highest supported polygamma order.
pub const MAX_POLYGAMMA_ORDER: usize = 16;

/// Shift target: the asymptotic series is summed at `z ≥ 10 + k`.
#[inline]
fn shift_floor(k: usize) -> f64 {
    10.0 + k as f64
}

/// `(2j + k − 1)! / (2j)!`, which reduces to `1/(2j)` at `k = 0`.
#[inline]
fn asym_coeff(k: usize, j: usize) -> f64 {
    if k == 0 {
        return 1.0 / (2 * j) as f64;
    }
    ((2 * j + 1)..(2 * j + k)).fold(1.0, |acc, i| acc * i as f64)
}

/// Bernoulli part `Σ_j B_{2j} c(k,j) z^{−(2j+k)}` of the expansion and the
/// magnitude of the first omitted term.
fn asym_tail(k: usize, z: f64, scale: f64) -> (f64, f64) {
    let inv2 = 1.0 / (z * z);
    let mut pow = z.powi(-(k as i32)) * inv2;
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for j in 1..=16 {
        let t = b2j(j) * asym_coeff(k, j) * pow;
        if t.abs() < 1e-17 * scale {
            return (sum, t.abs());
        }
        if t.abs() > prev {
            // asymptotic series started to diverge
            return (sum, prev);
        }
        sum += t;
        prev = t.abs();
        pow *= inv2;
    }
    (sum, prev)
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_POLYGAMMA_ORDER {
        Err(Error::UnsupportedOrder { order: k, max: MAX_POLYGAMMA_ORDER })
    } else {
        Ok(())
    }
}

/// ψ(x) for `x > 0`.
pub fn digamma(x: f64) -> Result<PolyEval> {
    ensure_positive("digamma requires x > 0", x)?;
    let mut shift = 0.0;
    let mut z = x;
    while z < shift_floor(0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    let lead = z.ln() - 0.5 / z;
    let (tail, err) = asym_tail(0, z, lead.abs());
    Ok(PolyEval {
        value: lead - tail - shift,
        abs_err_est: err,
        method: if z == x { Method::Asymptotic } else { Method::RecurrenceAsymptotic },
    })
}

/// `(−1)^{k+1} ψ^(k)(x) = k! Σ_{n≥0} (x+n)^{−(k+1)}` is positive; this returns
/// that magnitude with its error estimate.
fn polygamma_magnitude(k: usize, x: f64) -> (f64, f64, bool) {
    let kf = factorial(k);
    let mut shift = 0.0;
    let mut z = x;
    while z < shift_floor(k) {
        shift += z.powi(-(k as i32 + 1));
        z += 1.0;
    }
    let lead = factorial(k - 1) * z.powi(-(k as i32)) + 0.5 * kf * z.powi(-(k as i32 + 1));
    let (tail, err) = asym_tail(k, z, lead);
    (kf * shift + lead + tail, err, z != x)
}

/// ψ^(k)(x) for `1 ≤ k ≤ 16`, `x > 0`.
pub fn polygamma(k: usize, x: f64) -> Result<PolyEval> {
    ensure_positive("polygamma requires x > 0", x)?;
    check_order(k)?;
    if k == 0 {
        return digamma(x);
    }
    let (mag, err, shifted) = polygamma_magnitude(k, x);
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    Ok(PolyEval {
        value: sign * mag,
        abs_err_est: err,
        method: if shifted { Method::RecurrenceAsymptotic } else { Method::Asymptotic },
    })
}

/// `(−1)^{k+1} ψ^(k)(x) − (k−1)!/x^k − k!/(2x^{k+1})`, the part of the
/// polygamma magnitude beyond its two leading asymptotic terms.
///
/// Above the shift floor it is summed directly from the Bernoulli series, so it
/// keeps full relative accuracy where the subtraction would cancel.
pub fn polygamma_tail(k: usize, x: f64) -> Result<f64> {
    ensure_positive("polygamma_tail requires x > 0", x)?;
    check_order(k)?;
    if k == 0 {
        return Err(Error::UnsupportedOrder { order: 0, max: MAX_POLYGAMMA_ORDER });
    }
    let lead = factorial(k - 1) * x.powi(-(k as i32)) + 0.5 * factorial(k) * x.powi(-(k as i32 + 1));
    if x >= shift_floor(k) {
        Ok(asym_tail(k, x, lead).0)
    } else {
        Ok(polygamma_magnitude(k, x).0 - lead)
    }
}

/// `ψ^(k)(a + h) − ψ^(k)(a)` computed without subtracting two nearby values.
///
/// Both nodes share the same recurrence shift, and each power difference is
/// formed as `y^{−m}·expm1(−m·ln1p(h/y))`.
pub fn polygamma_diff(k: usize, a: f64, h: f64) -> Result<f64> {
    check_order(k)?;
    ensure_positive("polygamma_diff requires a > 0", a)?;
    ensure_positive("polygamma_diff requires a + h > 0", a + h)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    if h < 0.0 {
        return Ok(-polygamma_diff(k, a + h, -h)?);
    }

    let mut shift = 0.0;
    let mut z = a;
    while z < shift_floor(k) {
        shift += inv_pow_diff(z, h, k as i32 + 1);
        z += 1.0;
    }

    let ki = k as i32;
    let (lead, mut tail) = if k == 0 {
        ((h / z).ln_1p() - 0.5 * inv_pow_diff(z, h, 1), 0.0)
    } else {
        (factorial(k - 1) * inv_pow_diff(z, h, ki) + 0.5 * factorial(k) * inv_pow_diff(z, h, ki + 1), 0.0)
    };
    for j in 1..=16 {
        let t = b2j(j) * asym_coeff(k, j) * inv_pow_diff(z, h, 2 * j as i32 + ki);
        tail += t;
        if t.abs() < 1e-18 * lead.abs() {
            break;
        }
    }

    let v = if k == 0 {
        lead - tail - shift
    } else {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        // shift term enters with −(−1)^k k! = (−1)^{k+1} k!
        sign * (lead + tail + factorial(k) * shift)
    };
    Ok(v)
}

/// The unique positive zero `c ≈ 1.4616` of ψ, by bisection on `[1, 2]`.
pub fn psi_positive_root() -> f64 {
    static ROOT: OnceLock<f64> = OnceLock::new();
    *ROOT.get_or_init(|| {
        let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            // digamma cannot fail on [1, 2]
            let v = digamma(mid).map(|e| e.value).unwrap_or(f64::NAN);
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;
    use std::f64::consts::PI;

    #[test]
    fn digamma_reference_points() {
        let v = digamma(1.0).unwrap();
        assert!((v.value + EULER_GAMMA).abs() < 1e-15);
        assert!(v.abs_err_est <= 1e-12);
        // ψ(2) = ψ(1) + 1
        let v2 = digamma(2.0).unwrap().value;
        assert!((v2 - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        // ψ(1/2) = −γ − 2 ln 2
        let vh = digamma(0.5).unwrap().value;
        assert!((vh + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn u_psi_near_zero() {
        let u = 1e-6;
        assert!((u * digamma(u).unwrap().value + 1.0).abs() < 1e-4);
    }

    #[test]
    fn trigamma_at_one() {
        let v = polygamma(1, 1.0).unwrap();
        assert!((v.value - PI * PI / 6.0).abs() < 1e-15);
        assert!(v.abs_err_est <= 1e-11 * v.value);
    }

    #[test]
    fn polygamma_recurrence_at_2_3() {
        // ψ''(4) − ψ''(3) = 2!/3³
        let d = polygamma(2, 4.0).unwrap().value - polygamma(2, 3.0).unwrap().value;
        assert!((d - 2.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn polygamma_power_limit() {
        let x = 1e5;
        let v = polygamma(3, x).unwrap().value;
        assert!((x.powi(3) * v - 2.0).abs() < 1e-3);
    }

    #[test]
    fn signs_and_error_budget() {
        for k in 1..=16 {
            for &x in &[1e-3, 0.3, 1.0, 7.5, 40.0, 1e3, 1e6] {
                let e = polygamma(k, x).unwrap();
                let expected_sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                assert_eq!(e.value.signum(), expected_sign, "k={k} x={x}");
                assert!(e.abs_err_est >= 0.0 && e.abs_err_est <= 1e-11 * e.value.abs(), "k={k} x={x}");
            }
        }
    }

    #[test]
    fn order_limits() {
        assert!(matches!(polygamma(17, 1.0), Err(Error::UnsupportedOrder { .. })));
        assert!(polygamma(3, 0.0).is_err());
        assert!(digamma(-2.0).is_err());
    }

    #[test]
    fn root() {
        let c = psi_positive_root();
        assert!(c > 1.4616 && c < 1.4617);
        assert!(digamma(c).unwrap().value.abs() <= 1e-12);
        // bracket from ψ(1) < 0 < ψ(2)
        assert!(digamma(1.0).unwrap().value < 0.0 && digamma(2.0).unwrap().value > 0.0);
    }

    #[test]
    fn tail_matches_subtraction_where_safe() {
        for k in 1..=6 {
            for &x in &[0.5, 3.0, 9.0, 30.0] {
                let mag = polygamma(k, x).unwrap().value.abs();
                let lead = factorial(k - 1) / x.powi(k as i32) + 0.5 * factorial(k) / x.powi(k as i32 + 1);
                let t = polygamma_tail(k, x).unwrap();
                assert!((t - (mag - lead)).abs() < 1e-13 * mag, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn diff_matches_subtraction() {
        for k in 0..=8 {
            for &(a, h) in &[(0.01, 0.3), (1.0, 1.0), (2.5, 0.75), (12.0, 2.0), (50.0, 0.5), (0.2, -0.1)] {
                let direct = polygamma(k, a + h).unwrap().value - polygamma(k, a).unwrap().value;
                let d = polygamma_diff(k, a, h).unwrap();
                assert!((d - direct).abs() < 1e-12 * direct.abs().max(1e-300), "k={k} a={a} h={h}: {d} vs {direct}");
            }
        }
    }

    #[test]
    fn agrees_with_series_oracle() {
        use crate::specfun::polygamma_oracle;
        for k in 0..=12 {
            for i in 0..200 {
                let x = 1e-3 * 1e9f64.powf(i as f64 / 199.0);
                let fast = polygamma(k, x).unwrap();
                let slow = polygamma_oracle(k, x).unwrap();
                let tol = fast.abs_err_est + slow.abs_err_est + 100.0 * f64::EPSILON * (1.0 + fast.value.abs());
                assert!((fast.value - slow.value).abs() <= tol, "k={k} x={x}: {} vs {}", fast.value, slow.value);
            }
        }
    }

    #[test]
    fn diff_unit_step_is_recurrence() {
        for k in 0..=10 {
            for &a in &[0.01, 0.7, 3.0, 1e4] {
                let d = polygamma_diff(k, a, 1.0).unwrap();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let expect = sign * factorial(k) / a.powi(k as i32 + 1);
                assert!((d - expect).abs() < 1e-13 * expect.abs(), "k={k} a={a}");
            }
        }
    }
}
