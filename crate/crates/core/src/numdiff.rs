//! Central finite differences with Ridders–Richardson extrapolation.
//!
//! Used as an oracle for the analytic derivative engines, so it only assumes
//! that `f` is smooth on `[x − 2h₀, x + 2h₀]`.

/// Derivative estimate and the extrapolation's own error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivEstimate {
    pub value: f64,
    pub err: f64,
}

fn stencil<F: Fn(f64) -> f64>(f: &F, order: usize, x: f64, h: f64) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h),
        _ => panic!("finite-difference order {order} not supported"),
    }
}

/// `f^(order)(x)` for `order ∈ {1, 2, 3}`, starting from step `h0` and
/// shrinking it by 1.4 per tableau row.
///
/// # Panics
/// If `order` is not 1, 2 or 3.
pub fn derivative<F: Fn(f64) -> f64>(f: F, order: usize, x: f64, h0: f64) -> DerivEstimate {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    const NTAB: usize = 10;
    const SAFE: f64 = 2.0;

    let mut a = [[0.0f64; NTAB]; NTAB];
    let mut h = h0;
    a[0][0] = stencil(&f, order, x, h);
    let mut best = DerivEstimate { value: a[0][0], err: f64::INFINITY };
    for i in 1..NTAB {
        h /= CON;
        a[0][i] = stencil(&f, order, x, h);
        let mut fac = CON2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let errt = (a[j][i] - a[j - 1][i]).abs().max((a[j][i] - a[j - 1][i - 1]).abs());
            if errt <= best.err {
                best = DerivEstimate { value: a[j][i], err: errt };
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= SAFE * best.err {
            break;
        }
    }
    best
}
