use std::sync::OnceLock;

use super::{b2j, inv_pow_diff, EULER_GAMMA, LN_SQRT_2PI};
use crate::error::{ensure_positive, Result};

/// Number of Taylor coefficients kept around x = 1 and x = 2.
const ZETA_TERMS: usize = 46;

/// `ζ(k) − 1` for `k = 2..ZETA_TERMS+1` (index `k − 2`).
fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; ZETA_TERMS];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = zeta_minus_one_at(i + 2);
        }
        out
    })
}

/// Direct sum over `n = 2..N−1` plus an Euler–Maclaurin tail at `N = 20`.
fn zeta_minus_one_at(k: usize) -> f64 {
    const N: f64 = 20.0;
    let kf = k as f64;
    let mut tail = N.powf(1.0 - kf) / (kf - 1.0) + 0.5 * N.powf(-kf);
    let mut rising = kf; // (k)_{2j-1}
    let mut fact = 2.0; // (2j)!
    for j in 1..=8usize {
        tail += b2j(j) / fact * rising * N.powf(-kf - (2 * j) as f64 + 1.0);
        let m = (2 * j) as f64;
        rising *= (kf + m - 1.0) * (kf + m);
        fact *= (m + 1.0) * (m + 2.0);
    }
    let mut acc = tail;
    for n in (2..20).rev() {
        acc += (n as f64).powf(-kf);
    }
    acc
}

/// `ln Γ(2 + z)` for `|z| ≤ 0.5` from the Taylor series
/// `z(1−γ) + Σ_{k≥2} (ζ(k)−1)(−z)^k / k`.
fn ln_gamma_2p(z: f64) -> f64 {
    let table = zeta_minus_one();
    let mut acc = 0.0;
    for i in (0..ZETA_TERMS).rev() {
        let k = (i + 2) as f64;
        acc = acc * (-z) + table[i] / k;
    }
    // acc now holds Σ (ζ(k)−1)(−z)^{k−2}/k
    z * (1.0 - EULER_GAMMA) + acc * z * z
}

/// Stirling series for `z ≥ 10`.
fn stirling(z: f64) -> f64 {
    let mut corr = 0.0;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut pow = inv;
    for j in 1..=10usize {
        let term = b2j(j) / ((2 * j) as f64 * (2 * j - 1) as f64) * pow;
        corr += term;
        if term.abs() < 1e-18 * corr.abs() {
            break;
        }
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + corr
}

/// `ln Γ(x)` for `x > 0`.
///
/// Near the zeros at 1 and 2 the Taylor expansion in `ζ(k) − 1` keeps full
/// relative accuracy; above 2.5 the argument is shifted to `x ≥ 10` and the
/// Stirling series is summed.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ensure_positive("ln_gamma requires x > 0", x)?;
    let v = if x < 0.5 {
        ln_gamma_2p(x) - x.ln_1p() - x.ln()
    } else if x < 1.5 {
        let z = x - 1.0;
        ln_gamma_2p(z) - z.ln_1p()
    } else if x <= 2.5 {
        ln_gamma_2p(x - 2.0)
    } else if x < 10.0 {
        let mut z = x;
        let mut prod = 1.0;
        while z < 10.0 {
            prod *= z;
            z += 1.0;
        }
        stirling(z) - prod.ln()
    } else {
        stirling(x)
    };
    Ok(v)
}

/// `ln Γ(a + h) − ln Γ(a)` without subtracting two large log-gamma values.
///
/// Both arguments are shifted by the same integer until the smaller one
/// exceeds 10, then the Stirling series is differenced term by term using
/// `ln1p`/`expm1`.
pub fn ln_gamma_ratio(a: f64, h: f64) -> Result<f64> {
    ensure_positive("ln_gamma_ratio requires a > 0", a)?;
    ensure_positive("ln_gamma_ratio requires a + h > 0", a + h)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    let (lo, d, sign) = if h > 0.0 { (a, h, 1.0) } else { (a + h, -h, -1.0) };

    let mut acc = 0.0;
    let mut z = lo;
    while z < 10.0 {
        acc -= (d / z).ln_1p();
        z += 1.0;
    }
    let mut corr = 0.0;
    for j in 1..=10usize {
        let m = (2 * j - 1) as i32;
        let term = b2j(j) / ((2 * j) as f64 * m as f64) * inv_pow_diff(z, d, m);
        corr += term;
        if term.abs() < 1e-18 * corr.abs() {
            break;
        }
    }
    acc += d * (z + d).ln() + (z - 0.5) * (d / z).ln_1p() - d + corr;
    Ok(sign * acc)
}
