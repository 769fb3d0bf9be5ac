use super::{describe, pointwise, sweep, worst_of, Comparison, InequalityVerdict};
use crate::error::{ensure_positive, Error, Result};
use crate::families::{phi, q_func, GridSpec};
use crate::specfun::{
    digamma, factorial, inv_pow_diff, ln_gamma_ratio, polygamma, polygamma_diff, polygamma_tail, psi_positive_root,
    EULER_GAMMA,
};

/// Highest `k` accepted by the divided-difference and sandwich checks.
pub const MAX_CHECK_ORDER: usize = 8;
/// Highest `n` accepted by the exp-ψ and ratio checks.
pub const MAX_EXP_ORDER: usize = 6;

/// Coefficients of p(x), highest degree first.
pub const P_COEFFS: [f64; 11] =
    [75.0, 900.0, 4840.0, 15370.0, 31865.0, 45050.0, 44101.0, 29700.0, 13290.0, 3600.0, 450.0];

fn check_order(k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        Err(Error::UnsupportedOrder { order: k, max })
    } else {
        Ok(())
    }
}

fn ordered(a: f64, b: f64) -> Result<(f64, f64, f64)> {
    ensure_positive("a must be positive", a)?;
    ensure_positive("b must be positive", b)?;
    if a == b {
        return Err(Error::Degenerate("a and b must differ"));
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    Ok((lo, hi, hi - lo))
}

/// `|ψ^(k)(x)|` for `k ≥ 1`.
fn psi_mag(k: usize, x: f64) -> Result<f64> {
    Ok(polygamma(k, x)?.value.abs())
}

// ----------------------------------------- divided-difference double bound

/// The bound `(k−1)!/2·[(1/g + c)/a^k + (c − 1/g)/b^k]` with `a < b = a + g`.
fn thm3_bound(a: f64, g: f64, k: usize, c: f64) -> f64 {
    let ki = k as i32;
    let b = a + g;
    0.5 * factorial(k - 1) * (c * (a.powi(-ki) + b.powi(-ki)) - inv_pow_diff(a, g, ki) / g)
}

/// `M − L(c)` for the middle term `M`. Below `a = 1` the `(k−1)!/(g·a^k)`
/// singularity is cancelled analytically: one recurrence step turns `M` into
/// `(k−1)!/(g·a^k) + P` with `P = (−1)^{k−1}[ψ^(k−1)(b) − ψ^(k−1)(a+1)]/g`,
/// so `M − L(c) = (k−1)!/2·(1/g − c)(a^{−k} + b^{−k}) + P`.
fn thm3_excess(a: f64, g: f64, k: usize, m: f64, c: f64) -> Result<f64> {
    if a >= 1.0 {
        return Ok(m - thm3_bound(a, g, k, c));
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let ki = k as i32;
    let p = sign * polygamma_diff(k - 1, a + 1.0, g - 1.0)? / g;
    Ok(0.5 * factorial(k - 1) * (1.0 / g - c) * (a.powi(-ki) + (a + g).powi(-ki)) + p)
}

fn thm3_cmp(a: f64, g: f64, k: usize, beta: f64, gamma: f64) -> Result<Comparison> {
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let m = sign * polygamma_diff(k - 1, a, g)? / g;
    let (lb, ub) = (thm3_bound(a, g, k, beta), thm3_bound(a, g, k, gamma));
    let lower = thm3_excess(a, g, k, m, beta)? / lb.abs().max(m.abs());
    let upper = -thm3_excess(a, g, k, m, gamma)? / ub.abs().max(m.abs());
    Ok(Comparison::with_margin(lb, m, lower).min(Comparison::with_margin(m, ub, upper)))
}

/// The sharp `(β, γ)` of the divided-difference double bound for gap `g`:
/// `(1, 1/g)` below 1 and `(1/g, 1)` above.
pub fn thm3_sharp_constants(gap: f64) -> (f64, f64) {
    if gap < 1.0 {
        (1.0, 1.0 / gap)
    } else {
        (1.0 / gap, 1.0)
    }
}

/// `L(β) < (−1)^{k−1}[ψ^(k−1)(b) − ψ^(k−1)(a)]/(b−a) < L(γ)` at one pair.
pub fn check_thm3_divided_diff(a: f64, b: f64, k: usize, beta: f64, gamma: f64) -> Result<InequalityVerdict> {
    check_order(k, MAX_CHECK_ORDER)?;
    let (lo, _, g) = ordered(a, b)?;
    let c = thm3_cmp(lo, g, k, beta, gamma)?;
    let domain = format!("a = {a}, b = {b}, k = {k}, beta = {beta}, gamma = {gamma}");
    Ok(pointwise("thm3", domain, lo, c))
}

/// The divided-difference double bound with `b − a = gap` fixed, swept over the
/// smaller argument `a ∈ grid`.
pub fn sweep_thm3(gap: f64, k: usize, beta: f64, gamma: f64, grid: &GridSpec) -> Result<InequalityVerdict> {
    check_order(k, MAX_CHECK_ORDER)?;
    ensure_positive("gap must be positive", gap)?;
    let xs = grid.points(0.0)?;
    let extra = format!("b - a = {gap}, k = {k}, beta = {beta}, gamma = {gamma}");
    sweep(&format!("thm3:k={k}:gap={gap}"), describe("a", &xs, &extra), &xs, |a| thm3_cmp(a, gap, k, beta, gamma))
}

// ------------------------------------------------------------- gamma ratio

/// Log-space sides of `[Γ(b)/Γ(a)]^{1/(b−a)}` vs `√(ab)·(a/b)^{1/(2(b−a))}`,
/// oriented so the margin is positive when the stated direction holds
/// (`<` below gap 1, `>` above).
fn gamma_ratio_cmp(lo: f64, g: f64) -> Result<Comparison> {
    let hi = lo + g;
    let lhs = ln_gamma_ratio(lo, g)? / g;
    let rhs = 0.5 * (lo.ln() + hi.ln()) - (g / lo).ln_1p() / (2.0 * g);
    Ok(if g < 1.0 { Comparison::absolute(lhs, rhs) } else { Comparison::with_margin(lhs, rhs, lhs - rhs) })
}

fn check_gap_not_unit(g: f64) -> Result<()> {
    if g == 1.0 {
        Err(Error::Degenerate("|b - a| = 1 is the equality case"))
    } else {
        Ok(())
    }
}

/// Gamma-ratio inequality at `(a, b)`; the witness sides are logarithms.
pub fn check_gamma_ratio(a: f64, b: f64) -> Result<InequalityVerdict> {
    let (lo, _, g) = ordered(a, b)?;
    check_gap_not_unit(g)?;
    let dir = if g < 1.0 { "holds" } else { "reversed" };
    Ok(pointwise("gamma-ratio", format!("a = {a}, b = {b} ({dir})"), lo, gamma_ratio_cmp(lo, g)?))
}

/// Gamma-ratio inequality with `b − a = gap`, swept over `a ∈ grid`.
pub fn sweep_gamma_ratio(gap: f64, grid: &GridSpec) -> Result<InequalityVerdict> {
    ensure_positive("gap must be positive", gap)?;
    check_gap_not_unit(gap)?;
    let xs = grid.points(0.0)?;
    let extra = format!("b - a = {gap}");
    sweep(&format!("gamma-ratio:gap={gap}"), describe("a", &xs, &extra), &xs, |a| gamma_ratio_cmp(a, gap))
}

// ------------------------------------------------------------------ Watson

/// With `r = 2 ln[Γ(x+1)/Γ(x+½)]`: the refined bound
/// `r < 3/2·ln(x+½) − ½ln(x+1)`, the original `r < ln(x+½)`, and the gap
/// between their right-hand sides; all in log space.
fn watson_cmp(x: f64) -> Result<Comparison> {
    if !(x > -0.5 && x.is_finite()) {
        return Err(Error::Domain { what: "watson requires x > -1/2", value: x });
    }
    let y = x + 0.5;
    let r = 2.0 * ln_gamma_ratio(y, 0.5)?;
    let gap = 0.5 * (0.5 / y).ln_1p();
    let refined = Comparison::absolute(r, y.ln() - gap);
    let original = Comparison::absolute(r, y.ln());
    let implication = Comparison::with_margin(y.ln() - gap, y.ln(), gap);
    Ok(worst_of([refined, original, implication]))
}

pub fn check_watson(x: f64) -> Result<InequalityVerdict> {
    Ok(pointwise("watson", format!("x = {x}"), x, watson_cmp(x)?))
}

pub fn sweep_watson(grid: &GridSpec) -> Result<InequalityVerdict> {
    let xs = grid.points(0.5)?;
    sweep("watson", describe("x", &xs, ""), &xs, watson_cmp)
}

// ------------------------------------------------------------ p(x) bound

/// p(x) by Horner's rule.
pub fn p_poly(x: f64) -> f64 {
    P_COEFFS.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// `[ψ'(x)]² + ψ''(x)`, assembled from the parts of ψ' and −ψ'' beyond their
/// leading asymptotic terms so the large-x cancellation is done analytically:
/// with `ψ' = A + r₁`, `A = 1/x + 1/(2x²)` and `−ψ'' = 1/x² + 1/x³ + R₂`,
/// the sum is `1/(4x⁴) + 2A·r₁ + r₁² − R₂`.
pub fn trigamma_sq_plus_tetragamma(x: f64) -> Result<f64> {
    ensure_positive("x must be positive", x)?;
    let r1 = polygamma_tail(1, x)?;
    let r2 = polygamma_tail(2, x)?;
    let a = 1.0 / x + 0.5 / (x * x);
    Ok(0.25 / x.powi(4) + 2.0 * a * r1 + r1 * r1 - r2)
}

fn p_rhs(x: f64) -> f64 {
    p_poly(x) / (x + 1.0).powi(10) / (900.0 * x.powi(4))
}

fn p_cmp(x: f64) -> Result<Comparison> {
    let lhs = trigamma_sq_plus_tetragamma(x)?;
    let c = Comparison::relative(p_rhs(x), lhs);
    Ok(Comparison { lhs, rhs: p_rhs(x), margin: c.margin })
}

/// `[ψ'(x)]² + ψ''(x) > p(x)/[900x⁴(x+1)^{10}]`; witness lhs is the ψ side.
pub fn check_p_polynomial(x: f64) -> Result<InequalityVerdict> {
    Ok(pointwise("p-polynomial", format!("x = {x}"), x, p_cmp(x)?))
}

pub fn sweep_p_polynomial(grid: &GridSpec) -> Result<InequalityVerdict> {
    let xs = grid.points(0.0)?;
    sweep("p-polynomial", describe("x", &xs, ""), &xs, p_cmp)
}

/// `[ψ'(x)]² + ψ''(x) > 0`, margin relative to `[ψ'(x)]²`.
fn positivity_cmp(x: f64) -> Result<Comparison> {
    let lhs = trigamma_sq_plus_tetragamma(x)?;
    let t = psi_mag(1, x)?;
    Ok(Comparison::with_margin(lhs, 0.0, lhs / (t * t)))
}

pub fn check_positivity(x: f64) -> Result<InequalityVerdict> {
    Ok(pointwise("positivity", format!("x = {x}"), x, positivity_cmp(x)?))
}

pub fn sweep_positivity(grid: &GridSpec) -> Result<InequalityVerdict> {
    let xs = grid.points(0.0)?;
    sweep("positivity", describe("x", &xs, ""), &xs, positivity_cmp)
}

// ------------------------------------------------------ polygamma sandwich

/// `(k−1)!/x^k + k!/(2x^{k+1}) < |ψ^(k)(x)| < (k−1)!/x^k + k!/x^{k+1}`; both
/// differences come from the tail beyond the two leading terms.
fn qi_cmp(k: usize, x: f64) -> Result<Comparison> {
    let m = psi_mag(k, x)?;
    let tail = polygamma_tail(k, x)?;
    let half = 0.5 * factorial(k) * x.powi(-(k as i32 + 1));
    let lower = factorial(k - 1) * x.powi(-(k as i32)) + half;
    let upper = lower + half;
    let lo = Comparison::with_margin(lower, m, tail / m);
    let hi = Comparison::with_margin(m, upper, (half - tail) / upper);
    Ok(lo.min(hi))
}

pub fn check_qi_psi_bounds(k: usize, x: f64) -> Result<InequalityVerdict> {
    check_order(k, MAX_CHECK_ORDER)?;
    ensure_positive("x must be positive", x)?;
    Ok(pointwise("qi-sandwich", format!("k = {k}, x = {x}"), x, qi_cmp(k, x)?))
}

pub fn sweep_qi_psi_bounds(k: usize, grid: &GridSpec) -> Result<InequalityVerdict> {
    check_order(k, MAX_CHECK_ORDER)?;
    let xs = grid.points(0.0)?;
    sweep(&format!("qi-sandwich:k={k}"), describe("x", &xs, &format!("k = {k}")), &xs, |x| qi_cmp(k, x))
}

// ------------------------------------------------------------------- Batir

/// Default `(a, b) = (−γ, 0)`.
pub const BATIR_DEFAULT: (f64, f64) = (-EULER_GAMMA, 0.0);

/// `a < φ(x) < b`, which is the two-sided bound on ψ with `ln(e^{1/x} − 1)`
/// moved across; witness sides are in φ form.
fn batir_cmp(x: f64, a: f64, b: f64) -> Result<Comparison> {
    let f = phi(x)?;
    Ok(Comparison::absolute(a, f).min(Comparison::absolute(f, b)))
}

pub fn check_batir_psi(x: f64, a: f64, b: f64) -> Result<InequalityVerdict> {
    Ok(pointwise("batir", format!("x = {x}, a = {a}, b = {b}"), x, batir_cmp(x, a, b)?))
}

pub fn sweep_batir_psi(a: f64, b: f64, grid: &GridSpec) -> Result<InequalityVerdict> {
    let xs = grid.points(0.0)?;
    let extra = format!("a = {a}, b = {b}");
    sweep("batir", describe("x", &xs, &extra), &xs, |x| batir_cmp(x, a, b))
}

/// Lower constant `ln(π²/6) − γ` of the one-sided bound valid for `x ≥ 2`.
pub fn batir_one_sided_constant() -> f64 {
    (std::f64::consts::PI.powi(2) / 6.0).ln() - EULER_GAMMA
}

fn batir_one_sided_cmp(x: f64) -> Result<Comparison> {
    if !(x >= 2.0 && x.is_finite()) {
        return Err(Error::Domain { what: "one-sided bound requires x >= 2", value: x });
    }
    Ok(Comparison::absolute(batir_one_sided_constant(), phi(x)?))
}

/// `ψ(x) > ln(π²/6) − γ − ln(e^{1/x} − 1)` for `x ≥ 2`, in φ form.
pub fn check_batir_one_sided(x: f64) -> Result<InequalityVerdict> {
    Ok(pointwise("batir-one-sided", format!("x = {x}"), x, batir_one_sided_cmp(x)?))
}

/// The one-sided bound on `x = 2` followed by the grid shifted to start
/// above 2.
pub fn sweep_batir_one_sided(grid: &GridSpec) -> Result<InequalityVerdict> {
    let mut xs = vec![2.0];
    xs.extend(grid.points(-2.0)?);
    sweep("batir-one-sided", describe("x", &xs, ""), &xs, batir_one_sided_cmp)
}

// ------------------------------------------------------------ exp-ψ bound

/// `(n−1)!·e^{α/x − nψ(x)} < |ψ^(n)(x)| < (n−1)!·e^{β/x − nψ(x)}`, compared as
/// logarithms.
fn exp_psi_cmp(n: usize, x: f64, alpha: f64, beta: f64) -> Result<Comparison> {
    let lm = psi_mag(n, x)?.ln();
    let base = factorial(n - 1).ln() - n as f64 * digamma(x)?.value;
    let lower = Comparison::absolute(base + alpha / x, lm);
    let upper = Comparison::absolute(lm, base + beta / x);
    Ok(lower.min(upper))
}

pub fn check_exp_psi_bound(n: usize, x: f64, alpha: f64, beta: f64) -> Result<InequalityVerdict> {
    check_order(n, MAX_EXP_ORDER)?;
    ensure_positive("x must be positive", x)?;
    let domain = format!("n = {n}, x = {x}, alpha = {alpha}, beta = {beta}");
    Ok(pointwise("exp-psi", domain, x, exp_psi_cmp(n, x, alpha, beta)?))
}

pub fn sweep_exp_psi_bound(n: usize, alpha: f64, beta: f64, grid: &GridSpec) -> Result<InequalityVerdict> {
    check_order(n, MAX_EXP_ORDER)?;
    let xs = grid.points(0.0)?;
    let extra = format!("n = {n}, alpha = {alpha}, beta = {beta}");
    sweep(&format!("exp-psi:n={n}"), describe("x", &xs, &extra), &xs, |x| exp_psi_cmp(n, x, alpha, beta))
}

// ------------------------------------------------------------ ratio bound

/// `|ψ^(n+1)(x)| < n/((n−1)!)^{1/n} · |ψ^(n)(x)|^{1+1/n}`, compared as
/// logarithms.
fn alzer_cmp(n: usize, x: f64) -> Result<Comparison> {
    let nf = n as f64;
    let lhs = psi_mag(n + 1, x)?.ln();
    let rhs = nf.ln() - factorial(n - 1).ln() / nf + (1.0 + 1.0 / nf) * psi_mag(n, x)?.ln();
    Ok(Comparison::absolute(lhs, rhs))
}

pub fn check_alzer_ratio(n: usize, x: f64) -> Result<InequalityVerdict> {
    check_order(n, MAX_EXP_ORDER)?;
    ensure_positive("x must be positive", x)?;
    Ok(pointwise("alzer-ratio", format!("n = {n}, x = {x}"), x, alzer_cmp(n, x)?))
}

pub fn sweep_alzer_ratio(n: usize, grid: &GridSpec) -> Result<InequalityVerdict> {
    check_order(n, MAX_EXP_ORDER)?;
    let xs = grid.points(0.0)?;
    sweep(&format!("alzer-ratio:n={n}"), describe("x", &xs, &format!("n = {n}")), &xs, |x| alzer_cmp(n, x))
}

// ---------------------------------------------------------------- Q bounds

/// `(α, β) = (1, 6e^γ/π²)`, the constants checked for `x > c`.
pub fn q_bound_constants() -> (f64, f64) {
    (1.0, 6.0 * EULER_GAMMA.exp() / std::f64::consts::PI.powi(2))
}

/// `α ≤ Q(x) ≤ β`, equivalent to the two-sided exponential bound on
/// `Γ(x)/Γ(c)` because its exponent factor is positive away from `c`.
fn q_bounds_cmp(x: f64) -> Result<Comparison> {
    let c = psi_positive_root();
    if !(x > c && x.is_finite()) {
        return Err(Error::Domain { what: "Q bounds are checked for x > c", value: x });
    }
    let (alpha, beta) = q_bound_constants();
    let q = q_func(x)?;
    Ok(Comparison::relative(alpha, q).min(Comparison::relative(q, beta)))
}

pub fn check_q_bounds(x: f64) -> Result<InequalityVerdict> {
    Ok(pointwise("q-bounds", format!("x = {x}"), x, q_bounds_cmp(x)?))
}

/// Sweeps `x ∈ (c, x_max]` with the grid offset measured from `c`.
pub fn sweep_q_bounds(grid: &GridSpec) -> Result<InequalityVerdict> {
    let xs = grid.points(-psi_positive_root())?;
    sweep("q-bounds", describe("x", &xs, "x > c"), &xs, q_bounds_cmp)
}
