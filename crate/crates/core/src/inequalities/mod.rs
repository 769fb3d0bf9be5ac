//! Inequalities and limits for ψ, Γ and the divided-difference families, each
//! evaluated pointwise or swept over a grid.
//!
//! A check reduces to one or more comparisons `lhs < rhs`, each with a margin
//! that is positive exactly when the comparison holds strictly. Margins are
//! relative, `(rhs − lhs)/max(|lhs|, |rhs|)`, unless both sides are logarithms
//! or `O(1)` quantities, in which case the plain difference is used; the
//! witness then records the sides as compared.

mod checks;
mod limits;
mod registry;

use rayon::prelude::*;

use crate::error::Result;
use crate::families::{GridSpec, Spacing};

pub use checks::*;
pub use limits::{check_limits_suite, check_z_monotone_convex, LimitSpec, Z_DELTA};
pub use registry::{run_all, run_named, CheckArgs, REGISTRY_NAMES};

/// Grid for sharpness sweeps: `[1e−6, 1e5]`, 400 log points. The default
/// grid stops at `1e−3`, short of where some perturbed constants first fail
/// (the exp-ψ bound with `α = −n + 0.01` needs `x ≲ 1e−4`).
pub fn sharpness_grid() -> GridSpec {
    GridSpec::new(1e-6, 1e5, 400, Spacing::Log)
}

/// The point where a check was tightest (or failed), with both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub point: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityVerdict {
    pub name: String,
    pub domain_swept: String,
    pub holds: bool,
    pub worst_margin: f64,
    pub witness: Witness,
}

/// One side-by-side comparison `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Comparison {
    /// `lhs < rhs` with relative margin.
    pub fn relative(lhs: f64, rhs: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        let margin = if scale > 0.0 { (rhs - lhs) / scale } else { 0.0 };
        Comparison { lhs, rhs, margin }
    }

    /// `lhs < rhs` with the plain difference as margin.
    pub fn absolute(lhs: f64, rhs: f64) -> Self {
        Comparison { lhs, rhs, margin: rhs - lhs }
    }

    /// `lhs < rhs` where the difference is known more accurately than the
    /// subtraction `rhs − lhs` would give it.
    pub fn with_margin(lhs: f64, rhs: f64, margin: f64) -> Self {
        Comparison { lhs, rhs, margin }
    }

    /// The tighter of two comparisons; NaN margins win.
    pub fn min(self, other: Comparison) -> Comparison {
        if other.margin < self.margin || other.margin.is_nan() {
            other
        } else {
            self
        }
    }
}

fn worst_of(cmps: impl IntoIterator<Item = Comparison>) -> Comparison {
    cmps.into_iter().reduce(Comparison::min).expect("at least one comparison")
}

/// Wraps a single comparison at `point` as a verdict.
pub(crate) fn pointwise(name: &str, domain: String, point: f64, c: Comparison) -> InequalityVerdict {
    InequalityVerdict {
        name: name.to_string(),
        domain_swept: domain,
        holds: c.margin > 0.0,
        worst_margin: c.margin,
        witness: Witness { point, lhs: c.lhs, rhs: c.rhs },
    }
}

/// Evaluates `f` at every point and keeps the smallest margin (first one on
/// ties, NaN counts as the worst).
pub(crate) fn sweep<F>(name: &str, domain: String, xs: &[f64], f: F) -> Result<InequalityVerdict>
where
    F: Fn(f64) -> Result<Comparison> + Sync,
{
    let cmps: Vec<Comparison> = xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut worst = 0usize;
    for (i, c) in cmps.iter().enumerate() {
        if cmps[worst].margin.is_nan() {
            break;
        }
        if c.margin < cmps[worst].margin || c.margin.is_nan() {
            worst = i;
        }
    }
    Ok(pointwise(name, domain, xs[worst], cmps[worst]))
}

/// Human-readable description of a swept interval.
pub(crate) fn describe(var: &str, xs: &[f64], extra: &str) -> String {
    let mut s = format!("{var} in [{:e}, {:e}] ({} points)", xs[0], xs[xs.len() - 1], xs.len());
    if !extra.is_empty() {
        s.push_str(", ");
        s.push_str(extra);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_margins() {
        assert!(Comparison::relative(1.0, 2.0).margin > 0.0);
        assert!(Comparison::relative(-2.0, -1.0).margin > 0.0);
        assert!(Comparison::relative(2.0, 1.0).margin < 0.0);
        assert_eq!(Comparison::relative(0.0, 0.0).margin, 0.0);
        let a = Comparison::absolute(0.0, 1.0);
        let b = Comparison::absolute(0.0, f64::NAN);
        assert!(a.min(b).margin.is_nan());
        assert!(b.min(a).margin.is_nan());
    }

    #[test]
    fn sweep_picks_first_minimum() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let v = sweep("t", "d".into(), &xs, |x| Ok(Comparison::absolute(0.0, (x - 2.5).abs()))).unwrap();
        assert_eq!(v.witness.point, 2.0);
        assert!(v.holds);
    }
}
