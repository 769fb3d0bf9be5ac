//! The divided-difference families Δ, θ, ℋ and their companions Λ, z, φ, Q and
//! the tanh kernel.
//!
//! Every evaluator canonicalises `(s, t)` to `(lo, hi)` before doing any
//! arithmetic, so swapping `s` and `t` gives bit-identical results.

mod delta;
mod divided;
mod gamma_ratio;
mod scalar;
mod theta;

use serde::Serialize;

use crate::error::{Error, Result};

pub use delta::{delta, delta_deriv, delta_jet, delta_jet_scaled};
pub use divided::{dd_jet, divided_diff_psi, MAX_DD_ORDER};
pub use gamma_ratio::{capital_lambda, h_func, ln_h, z_func};
pub use scalar::{phi, q_func, Q_WINDOW};
pub use theta::{kernel_g, theta, theta_deriv, theta_jet, theta_jet_scaled, theta_quadrature};

/// Highest derivative order of Δ and θ exposed by the derivative engines.
pub const MAX_FAMILY_ORDER: usize = 8;

/// Position of `|t − s|` relative to the confluent cases 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Equal,
    UnitGap,
    SubUnitGap,
    SuperUnitGap,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Equal => "equal",
            Regime::UnitGap => "unit-gap",
            Regime::SubUnitGap => "sub-unit-gap",
            Regime::SuperUnitGap => "super-unit-gap",
        }
    }
}

/// `(s, t, λ)` with `α = min(s, t)` and the gap regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamTriple {
    pub s: f64,
    pub t: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub regime: Regime,
}

impl ParamTriple {
    pub fn new(s: f64, t: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [("s", s), ("t", t), ("lambda", lambda)] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")));
            }
        }
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        let gap = hi - lo;
        let regime = if s == t {
            Regime::Equal
        } else if gap == 1.0 {
            Regime::UnitGap
        } else if gap < 1.0 {
            Regime::SubUnitGap
        } else {
            Regime::SuperUnitGap
        };
        Ok(ParamTriple { s, t, lambda, alpha: lo, regime })
    }

    /// Same `(s, t)` with a different λ.
    pub fn with_lambda(&self, lambda: f64) -> Self {
        ParamTriple { lambda, ..*self }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.s.max(self.t)
    }

    /// `|t − s|`, exact in binary64 up to the rounding of the subtraction.
    #[inline]
    pub fn gap(&self) -> f64 {
        self.hi() - self.lo()
    }

    /// `x + α`, after checking that `x` lies in `(−α, ∞)`.
    pub fn shifted(&self, x: f64) -> Result<f64> {
        let a = x + self.alpha;
        if x.is_finite() && a > 0.0 {
            Ok(a)
        } else {
            Err(Error::Domain { what: "x must exceed -min(s, t)", value: x })
        }
    }
}

/// Spacing law of a [`GridSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Log,
    Linear,
}

/// Evaluation grid `x ∈ (−α + δ, x_max]` on the domain of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub delta: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { delta: 1e-3, x_max: 1e4, n_points: 400, spacing: Spacing::Log }
    }
}

impl GridSpec {
    pub fn new(delta: f64, x_max: f64, n_points: usize, spacing: Spacing) -> Self {
        GridSpec { delta, x_max, n_points, spacing }
    }

    /// Checks the grid against a domain `(−α, ∞)`.
    pub fn validate(&self, alpha: f64) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidGrid(format!("delta must be positive, got {}", self.delta)));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {}", self.n_points)));
        }
        if !self.x_max.is_finite() || self.x_max + alpha <= self.delta {
            return Err(Error::InvalidGrid(format!(
                "x_max = {} does not exceed the lower end -alpha + delta = {}",
                self.x_max,
                -alpha + self.delta
            )));
        }
        Ok(())
    }

    /// Grid points for the domain `(−α, ∞)`, strictly increasing, last one
    /// exactly `x_max`.
    pub fn points(&self, alpha: f64) -> Result<Vec<f64>> {
        self.validate(alpha)?;
        let n = self.n_points;
        let span = self.x_max + alpha;
        let mut xs = Vec::with_capacity(n);
        for i in 0..n {
            let f = i as f64 / (n - 1) as f64;
            let u = match self.spacing {
                Spacing::Log => self.delta * (span / self.delta).powf(f),
                Spacing::Linear => self.delta + (span - self.delta) * f,
            };
            xs.push(if i == n - 1 { self.x_max } else { u - alpha });
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) || xs[0] + alpha <= 0.0 {
            return Err(Error::InvalidGrid("grid points are not strictly increasing inside the domain".into()));
        }
        Ok(xs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        assert_eq!(ParamTriple::new(0.0, 0.0, 1.0).unwrap().regime, Regime::Equal);
        assert_eq!(ParamTriple::new(0.5, -0.5, 1.0).unwrap().regime, Regime::UnitGap);
        assert_eq!(ParamTriple::new(0.0, 0.3, 1.0).unwrap().regime, Regime::SubUnitGap);
        let p = ParamTriple::new(3.0, 1.0, 1.0).unwrap();
        assert_eq!(p.regime, Regime::SuperUnitGap);
        assert_eq!(p.alpha, 1.0);
        assert!(ParamTriple::new(f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn domain_check() {
        let p = ParamTriple::new(0.5, 2.0, 0.0).unwrap();
        assert!(p.shifted(-0.5).is_err());
        assert_eq!(p.shifted(0.0).unwrap(), 0.5);
    }

    #[test]
    fn default_grid_shape() {
        for alpha in [-2.0, 0.0, 0.5, 3.0] {
            let xs = GridSpec::default().points(alpha).unwrap();
            assert_eq!(xs.len(), 400);
            assert!(xs[0] > -alpha + 1e-3 * (1.0 - 1e-12));
            assert_eq!(*xs.last().unwrap(), 1e4);
            assert!(xs.windows(2).all(|w| w[0] < w[1]));
        }
        let lin = GridSpec::new(0.1, 5.0, 50, Spacing::Linear).points(0.0).unwrap();
        assert!((lin[1] - lin[0] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn bad_grids() {
        assert!(GridSpec::new(0.0, 1.0, 10, Spacing::Log).points(0.0).is_err());
        assert!(GridSpec::new(1e-3, 1.0, 1, Spacing::Log).points(0.0).is_err());
        assert!(GridSpec::new(1e-3, -5.0, 10, Spacing::Log).points(0.0).is_err());
    }
}
