use super::{Comparison, InequalityVerdict, Witness};
use crate::error::Result;
use crate::families::{capital_lambda, ln_h, phi, z_func, ParamTriple};
use crate::specfun::{digamma, factorial, ln_gamma_ratio, polygamma};

/// A limit evaluated at a sequence of arguments approaching it; the residual
/// must shrink strictly from stage to stage and end below `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitSpec {
    pub name: String,
    pub description: String,
    pub stages: Vec<f64>,
    pub tolerance: f64,
}

fn decades(from: i32, to: i32) -> Vec<f64> {
    let step = if to >= from { 1 } else { -1 };
    let mut v = Vec::new();
    let mut e = from;
    loop {
        v.push(10f64.powi(e));
        if e == to {
            break;
        }
        e += step;
    }
    v
}

/// Runs one staged limit. The margin is the smaller of `(tol − r_last)/tol`
/// and the smallest relative shrink `(r_i − r_{i+1})/r_i`; the witness holds
/// the final stage with `lhs = r_last`, `rhs = tol`.
fn staged<F>(spec: LimitSpec, residual: F) -> Result<InequalityVerdict>
where
    F: Fn(f64) -> Result<f64>,
{
    let rs: Vec<f64> = spec.stages.iter().map(|&u| residual(u)).collect::<Result<_>>()?;
    let last = *rs.last().expect("at least one stage");
    let mut margin = (spec.tolerance - last) / spec.tolerance;
    for w in rs.windows(2) {
        let shrink = (w[0] - w[1]) / w[0];
        if shrink < margin || shrink.is_nan() {
            margin = shrink;
        }
    }
    let point = *spec.stages.last().expect("at least one stage");
    let domain =
        format!("{}: stages {:e} .. {:e}, tolerance {:e}", spec.description, spec.stages[0], point, spec.tolerance);
    Ok(InequalityVerdict {
        name: spec.name,
        domain_swept: domain,
        holds: margin > 0.0,
        worst_margin: margin,
        witness: Witness { point, lhs: last, rhs: spec.tolerance },
    })
}

fn spec(name: &str, description: &str, stages: Vec<f64>, tolerance: f64) -> LimitSpec {
    LimitSpec { name: name.into(), description: description.into(), stages, tolerance }
}

/// Every staged limit followed by the monotone-convex check of
/// `e^{ψ(x+1)} − x`.
pub fn check_limits_suite() -> Result<Vec<InequalityVerdict>> {
    let mut out = Vec::new();

    let s = 0.7;
    out.push(staged(
        spec("limit:wendel", "Gamma(x+0.7)/(x^0.7 Gamma(x)) -> 1 as x -> inf", decades(1, 5), 1e-5),
        |x| Ok((ln_gamma_ratio(x, s)? - s * x.ln()).exp_m1().abs()),
    )?);

    for k in 1..=3usize {
        let kf = factorial(k - 1);
        out.push(staged(
            spec(
                &format!("limit:polygamma-power:k={k}"),
                &format!("|x^{k} psi^({k})(x)| -> {kf} as x -> inf"),
                decades(1, 5),
                1e-4 * kf,
            ),
            |x| Ok((x.powi(k as i32) * polygamma(k, x)?.value.abs() - kf).abs()),
        )?);
    }

    out.push(staged(spec("limit:u-psi", "u psi(u) -> -1 as u -> 0+", decades(-1, -7), 1e-5), |u| {
        Ok((u * digamma(u)?.value + 1.0).abs())
    })?);

    out.push(staged(
        spec("limit:phi-infinity", "phi(x) -> 0 as x -> inf", decades(1, 6), 1e-5),
        |x| Ok(phi(x)?.abs()),
    )?);
    out.push(staged(spec("limit:phi-zero", "phi(x) -> -euler_gamma as x -> 0+", decades(-1, -6), 1e-3), |x| {
        Ok((phi(x)? + crate::specfun::EULER_GAMMA).abs())
    })?);

    let (ls, lt) = (0.0, 0.5);
    out.push(staged(spec("limit:lambda-infinity", "Lambda_{0,0.5}(x) -> 1 as x -> inf", decades(1, 6), 1e-4), |x| {
        Ok((capital_lambda(ls, lt, x)? - 1.0).abs())
    })?);
    out.push(staged(spec("limit:lambda-boundary", "Lambda_{0,0.5}(x) -> 2 as x -> 0+", decades(-1, -7), 1e-3), |x| {
        Ok((capital_lambda(ls, lt, x)? - 2.0).abs())
    })?);

    // ℋ → 1, 0, ∞ as λ is equal to, above or below 1
    let h_spec = |lambda: f64, target: &str, tol: f64| {
        spec(
            &format!("limit:h-trichotomy:lambda={lambda}"),
            &format!("H_{{0,0.5;{lambda}}}(x) -> {target} as x -> inf"),
            decades(1, 5),
            tol,
        )
    };
    let p1 = ParamTriple::new(0.0, 0.5, 1.0)?;
    out.push(staged(h_spec(1.0, "1", 1e-6), |x| Ok(ln_h(&p1, x)?.exp_m1().abs()))?);
    let p2 = p1.with_lambda(2.0);
    out.push(staged(h_spec(2.0, "0", 1e-3), |x| Ok(ln_h(&p2, x)?.exp()))?);
    let ph = p1.with_lambda(0.5);
    out.push(staged(h_spec(0.5, "inf", 1e-2), |x| Ok((-ln_h(&ph, x)?).exp()))?);

    out.push(check_z_monotone_convex()?);
    Ok(out)
}

/// Offset from −1 where the monotone-convex grid starts.
pub const Z_DELTA: f64 = 0.05;

/// Finite-difference signs of `z(x) = e^{ψ(x+1)} − x` on a log grid over
/// `[−1 + δ, 10³]`: first differences negative, slopes increasing. Each
/// margin is normalised by the largest magnitude of its kind.
///
/// `δ = 0.05`: closer to −1 the curvature comes from `e^{ψ(x+1)} ≈ e^{−1/(x+1)}`
/// and falls below double-precision resolution.
pub fn check_z_monotone_convex() -> Result<InequalityVerdict> {
    let n = 400;
    let (lo, hi) = (Z_DELTA, 1e3 + 1.0);
    let us: Vec<f64> = (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect();
    let xs: Vec<f64> = us.iter().map(|u| u - 1.0).collect();
    let zs: Vec<f64> = xs.iter().map(|&x| z_func(1.0, 1.0, x)).collect::<Result<_>>()?;

    let dz: Vec<f64> = zs.windows(2).map(|w| w[1] - w[0]).collect();
    let slopes: Vec<f64> = dz.iter().zip(xs.windows(2)).map(|(d, w)| d / (w[1] - w[0])).collect();
    let ds: Vec<f64> = slopes.windows(2).map(|w| w[1] - w[0]).collect();
    let dz_scale = dz.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let ds_scale = ds.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut worst = (f64::INFINITY, 0usize, Comparison::absolute(0.0, 0.0));
    for (i, d) in dz.iter().enumerate() {
        let m = -d / dz_scale;
        if m < worst.0 {
            worst = (m, i + 1, Comparison::with_margin(zs[i + 1], zs[i], m));
        }
    }
    for (i, d) in ds.iter().enumerate() {
        let m = d / ds_scale;
        if m < worst.0 {
            worst = (m, i + 1, Comparison::with_margin(slopes[i], slopes[i + 1], m));
        }
    }
    let (margin, at, c) = worst;
    Ok(InequalityVerdict {
        name: "z-monotone-convex".into(),
        domain_swept: format!("x in [{:e}, {:e}] ({n} points), finite differences", xs[0], xs[n - 1]),
        holds: margin > 0.0,
        worst_margin: margin,
        witness: Witness { point: xs[at], lhs: c.lhs, rhs: c.rhs },
    })
}
