use super::checks::*;
use super::{check_limits_suite, InequalityVerdict};
use crate::error::{Error, Result};
use crate::families::GridSpec;

/// Names accepted by [`run_named`], in the order [`run_all`] runs them.
pub const REGISTRY_NAMES: [&str; 12] = [
    "thm3",
    "gamma-ratio",
    "watson",
    "p-polynomial",
    "positivity",
    "qi-sandwich",
    "batir",
    "batir-one-sided",
    "exp-psi",
    "alzer-ratio",
    "q-bounds",
    "limits",
];

/// Optional arguments of a named check. A check with its point arguments
/// present is evaluated there; with `sweep` set, the point argument (`x`, or
/// `a` for the two-point checks, which keep `b − a` fixed) is swept over the
/// grid instead. With no point arguments every default variant is swept.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckArgs {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub x: Option<f64>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub sweep: bool,
}

/// Default gaps `b − a` of the two-point checks, one on each side of 1.
pub const DEFAULT_GAPS: [f64; 2] = [0.5, 2.0];

fn require<T>(v: Option<T>, what: &str, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("`{name}` needs --{what}")))
}

pub fn run_named(name: &str, args: &CheckArgs, grid: &GridSpec) -> Result<Vec<InequalityVerdict>> {
    if !REGISTRY_NAMES.contains(&name) {
        return Err(Error::UnknownName(name.to_string()));
    }
    let pair = args.a.is_some() || args.b.is_some();
    let point = pair || args.x.is_some();
    let one = |v: Result<InequalityVerdict>| v.map(|v| vec![v]);
    match name {
        "thm3" => {
            if !pair {
                let mut out = Vec::new();
                for gap in DEFAULT_GAPS {
                    let (b, c) = thm3_sharp_constants(gap);
                    for k in args.k.map_or(1..=3, |k| k..=k) {
                        out.push(sweep_thm3(gap, k, args.beta.unwrap_or(b), args.gamma.unwrap_or(c), grid)?);
                    }
                }
                return Ok(out);
            }
            let (a, b) = (require(args.a, "a", name)?, require(args.b, "b", name)?);
            let k = args.k.unwrap_or(1);
            let (sb, sc) = thm3_sharp_constants((b - a).abs());
            let (beta, gamma) = (args.beta.unwrap_or(sb), args.gamma.unwrap_or(sc));
            if args.sweep {
                one(sweep_thm3((b - a).abs(), k, beta, gamma, grid))
            } else {
                one(check_thm3_divided_diff(a, b, k, beta, gamma))
            }
        }
        "gamma-ratio" => {
            if !pair {
                return DEFAULT_GAPS.iter().map(|&g| sweep_gamma_ratio(g, grid)).collect();
            }
            let (a, b) = (require(args.a, "a", name)?, require(args.b, "b", name)?);
            if args.sweep {
                one(sweep_gamma_ratio((b - a).abs(), grid))
            } else {
                one(check_gamma_ratio(a, b))
            }
        }
        "watson" => match args.x {
            Some(x) if !args.sweep => one(check_watson(x)),
            _ => one(sweep_watson(grid)),
        },
        "p-polynomial" => match args.x {
            Some(x) if !args.sweep => one(check_p_polynomial(x)),
            _ => one(sweep_p_polynomial(grid)),
        },
        "positivity" => match args.x {
            Some(x) if !args.sweep => one(check_positivity(x)),
            _ => one(sweep_positivity(grid)),
        },
        "qi-sandwich" => match (args.x, args.k) {
            (Some(x), k) if !args.sweep => one(check_qi_psi_bounds(k.unwrap_or(1), x)),
            (_, Some(k)) => one(sweep_qi_psi_bounds(k, grid)),
            (_, None) => (1..=MAX_CHECK_ORDER).map(|k| sweep_qi_psi_bounds(k, grid)).collect(),
        },
        "batir" => {
            let (a, b) = (args.a.unwrap_or(BATIR_DEFAULT.0), args.b.unwrap_or(BATIR_DEFAULT.1));
            match args.x {
                Some(x) if !args.sweep => one(check_batir_psi(x, a, b)),
                _ => one(sweep_batir_psi(a, b, grid)),
            }
        }
        "batir-one-sided" => match args.x {
            Some(x) if !args.sweep => one(check_batir_one_sided(x)),
            _ => one(sweep_batir_one_sided(grid)),
        },
        "exp-psi" => {
            let bounds = |n: usize| (args.alpha.unwrap_or(-(n as f64)), args.beta.unwrap_or(0.0));
            match (args.x, args.n) {
                (Some(x), n) if !args.sweep => {
                    let n = n.unwrap_or(1);
                    let (al, be) = bounds(n);
                    one(check_exp_psi_bound(n, x, al, be))
                }
                (_, Some(n)) => {
                    let (al, be) = bounds(n);
                    one(sweep_exp_psi_bound(n, al, be, grid))
                }
                (_, None) => (1..=MAX_EXP_ORDER)
                    .map(|n| {
                        let (al, be) = bounds(n);
                        sweep_exp_psi_bound(n, al, be, grid)
                    })
                    .collect(),
            }
        }
        "alzer-ratio" => match (args.x, args.n) {
            (Some(x), n) if !args.sweep => one(check_alzer_ratio(n.unwrap_or(1), x)),
            (_, Some(n)) => one(sweep_alzer_ratio(n, grid)),
            (_, None) => (1..=MAX_EXP_ORDER).map(|n| sweep_alzer_ratio(n, grid)).collect(),
        },
        "q-bounds" => match args.x {
            Some(x) if !args.sweep => one(check_q_bounds(x)),
            _ => one(sweep_q_bounds(grid)),
        },
        "limits" => {
            if point {
                return Err(Error::InvalidArgument("`limits` takes no point arguments".into()));
            }
            check_limits_suite()
        }
        _ => unreachable!("name checked against the registry"),
    }
}

/// Every registry entry with its default variants, swept over `grid`.
pub fn run_all(grid: &GridSpec) -> Result<Vec<InequalityVerdict>> {
    let mut out = Vec::new();
    for name in REGISTRY_NAMES {
        out.extend(run_named(name, &CheckArgs::default(), grid)?);
    }
    Ok(out)
}
