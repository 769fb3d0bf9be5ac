//! Complete-monotonicity verification of Δ and θ on a grid.
//!
//! A function passes the CM test when `(−1)^n f^(n)(x) ≥ −tol` for every
//! sampled `x` and every `n ≤ max_order`, and the negCM test when the same holds
//! for `−f`. The tolerance is `1e−10·(1 + |f(x)|)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{delta_jet_scaled, theta_jet_scaled, GridSpec, ParamTriple, Regime, MAX_FAMILY_ORDER};

/// Relative sign tolerance.
pub const SIGN_TOL: f64 = 1e-10;
/// Magnitude below which a sampled derivative counts as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Default highest derivative order checked.
pub const DEFAULT_MAX_ORDER: usize = 6;
/// Default λ bracket for [`sharp_lambda_estimate`].
pub const DEFAULT_BRACKET: (f64, f64) = (-10.0, 10.0);
/// Bisection stops once the bracket is narrower than this.
pub const SHARP_WIDTH: f64 = 1e-4;

macro_rules! string_enum {
    ($name:ident { $($variant:ident => $s:literal),+ $(,)? }) => {
        impl $name {
            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $s),+ }
            }
        }
        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok($name::$variant),)+
                    other => Err(Error::UnknownName(other.to_string())),
                }
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Delta,
    Theta,
}
string_enum!(Family { Delta => "delta", Theta => "theta" });

/// Which sign pattern a check targets: `f` (cm) or `−f` (negcm).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Cm,
    NegCm,
}
string_enum!(Sign { Cm => "cm", NegCm => "negcm" });

impl Sign {
    fn orient(self) -> f64 {
        match self {
            Sign::Cm => 1.0,
            Sign::NegCm => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Largest λ for which the family is CM.
    CmUpper,
    /// Smallest λ for which the negated family is CM.
    NegCmLower,
}
string_enum!(Direction { CmUpper => "cm-upper", NegCmLower => "negcm-lower" });

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}
string_enum!(Tri { Yes => "yes", No => "no", Unknown => "unknown" });

impl Tri {
    fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    fn admits(self, observed: bool) -> bool {
        match self {
            Tri::Yes => observed,
            Tri::No => !observed,
            Tri::Unknown => true,
        }
    }
}

/// The classification of Δ_{s,t;λ} (and θ_{s,t;λ}, which shares it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub delta_cm: Tri,
    pub neg_delta_cm: Tri,
    pub identically_zero: bool,
}

/// Single-tag summary of a [`Prediction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicted {
    Cm,
    NegCm,
    Neither,
    IdenticallyZero,
    /// Not CM, negated case unclassified (`s = t`, `λ > 1`).
    NotCm,
}
string_enum!(Predicted {
    Cm => "CM",
    NegCm => "negCM",
    Neither => "neither",
    IdenticallyZero => "identically-zero",
    NotCm => "not-CM",
});

impl Prediction {
    pub fn tag(&self) -> Predicted {
        if self.identically_zero {
            return Predicted::IdenticallyZero;
        }
        match (self.delta_cm, self.neg_delta_cm) {
            (Tri::Yes, _) => Predicted::Cm,
            (_, Tri::Yes) => Predicted::NegCm,
            (Tri::No, Tri::No) => Predicted::Neither,
            _ => Predicted::NotCm,
        }
    }

    /// Whether an observed verdict is consistent with this prediction. A zero
    /// verdict satisfies both CM predictions.
    pub fn admits(&self, verdict: Verdict) -> bool {
        match verdict {
            Verdict::IdenticallyZero => {
                self.identically_zero || self.delta_cm == Tri::Yes || self.neg_delta_cm == Tri::Yes
            }
            v => {
                !self.identically_zero
                    && self.delta_cm.admits(v == Verdict::CmConsistent)
                    && self.neg_delta_cm.admits(v == Verdict::NegCmConsistent)
            }
        }
    }
}

/// Classification rule for `±Δ_{s,t;λ}` on `(−α, ∞)`.
pub fn theorem1_predicate(p: &ParamTriple) -> Prediction {
    let l = p.lambda;
    let inv = 1.0 / p.gap();
    let (cm, neg, zero) = match p.regime {
        Regime::SubUnitGap => (Tri::from_bool(l <= 1.0), Tri::from_bool(l >= inv), false),
        Regime::SuperUnitGap => (Tri::from_bool(l <= inv), Tri::from_bool(l >= 1.0), false),
        Regime::Equal => (Tri::from_bool(l <= 1.0), Tri::Unknown, false),
        Regime::UnitGap => (Tri::from_bool(l < 1.0), Tri::from_bool(l > 1.0), l == 1.0),
    };
    Prediction { delta_cm: cm, neg_delta_cm: neg, identically_zero: zero }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CmConsistent,
    NegCmConsistent,
    Neither,
    IdenticallyZero,
}
string_enum!(Verdict {
    CmConsistent => "CM-consistent",
    NegCmConsistent => "negCM-consistent",
    Neither => "neither",
    IdenticallyZero => "identically-zero",
});

/// Extremes of `(−1)^n f^(n)` over the grid at one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderSummary {
    pub order: usize,
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
    pub argmax: f64,
}

/// A grid point where the targeted sign pattern fails.
///
/// `value` is `(−1)^n f^(n)(x)` for [`Sign::Cm`] and `(−1)^n (−f)^(n)(x)` for
/// [`Sign::NegCm`], so it is negative in both cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationWitness {
    pub sign: Sign,
    pub order: usize,
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CmReport {
    pub family: Family,
    pub params: ParamTriple,
    pub max_order: usize,
    pub grid: GridSpec,
    pub per_order: Vec<OrderSummary>,
    /// Worst witness per (sign, order), cm first, orders ascending.
    pub witnesses: Vec<ViolationWitness>,
    pub verdict: Verdict,
    pub prediction: Prediction,
    pub predicted: Predicted,
    pub agree: bool,
}

/// `(−1)^n f^(n)(x)` and the constituent scale used to normalise violations.
struct Sample {
    signed: Vec<f64>,
    scale: Vec<f64>,
}

fn sample(family: Family, p: &ParamTriple, x: f64, n: usize) -> Result<Sample> {
    let (mut signed, scale) = match family {
        Family::Delta => delta_jet_scaled(p, x, n)?,
        Family::Theta => theta_jet_scaled(p, x, n)?,
    };
    for (k, v) in signed.iter_mut().enumerate() {
        if k % 2 == 1 {
            *v = -*v;
        }
    }
    Ok(Sample { signed, scale })
}

fn sample_grid(family: Family, p: &ParamTriple, xs: &[f64], max_order: usize) -> Result<Vec<Sample>> {
    xs.par_iter().map(|&x| sample(family, p, x, max_order)).collect()
}

/// Violation size relative to the terms that produced it, in `[−1, 0)` for
/// genuine violations.
#[inline]
fn normalised(w: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        w / scale
    } else {
        w / (1.0 + w.abs())
    }
}

#[inline]
fn tolerance(f0: f64) -> f64 {
    SIGN_TOL * (1.0 + f0.abs())
}

fn check_max_order(max_order: usize) -> Result<()> {
    if max_order > MAX_FAMILY_ORDER {
        Err(Error::UnsupportedOrder { order: max_order, max: MAX_FAMILY_ORDER })
    } else {
        Ok(())
    }
}

/// Samples `(−1)^n f^(n)` for `n ≤ max_order` on the grid and classifies `f`.
pub fn cm_verify(family: Family, p: &ParamTriple, max_order: usize, grid: &GridSpec) -> Result<CmReport> {
    check_max_order(max_order)?;
    let xs = grid.points(p.alpha)?;
    let table = sample_grid(family, p, &xs, max_order)?;

    let mut per_order = Vec::with_capacity(max_order + 1);
    let mut worst: [Vec<Option<(f64, ViolationWitness)>>; 2] = [vec![None; max_order + 1], vec![None; max_order + 1]];
    let mut all_zero = true;
    for n in 0..=max_order {
        let mut s = OrderSummary { order: n, min: f64::INFINITY, argmin: xs[0], max: f64::NEG_INFINITY, argmax: xs[0] };
        for (i, smp) in table.iter().enumerate() {
            let v = smp.signed[n];
            if v < s.min {
                s.min = v;
                s.argmin = xs[i];
            }
            if v > s.max {
                s.max = v;
                s.argmax = xs[i];
            }
            if v.abs() > ZERO_TOL || !v.is_finite() {
                all_zero = false;
            }
            let tol = tolerance(smp.signed[0]);
            for (slot, sign) in [Sign::Cm, Sign::NegCm].into_iter().enumerate() {
                let w = sign.orient() * v;
                if w < -tol || w.is_nan() {
                    let score = normalised(w, smp.scale[n]);
                    if worst[slot][n].is_none_or(|(b, _)| score < b) {
                        worst[slot][n] = Some((score, ViolationWitness { sign, order: n, x: xs[i], value: w }));
                    }
                }
            }
        }
        per_order.push(s);
    }

    let cm_ok = worst[0].iter().all(Option::is_none);
    let neg_ok = worst[1].iter().all(Option::is_none);
    let verdict = if all_zero {
        Verdict::IdenticallyZero
    } else if cm_ok && neg_ok {
        return Err(Error::InconsistentClassification { order: max_order });
    } else if cm_ok {
        Verdict::CmConsistent
    } else if neg_ok {
        Verdict::NegCmConsistent
    } else {
        Verdict::Neither
    };
    let prediction = theorem1_predicate(p);
    let witnesses = worst.iter().flat_map(|w| w.iter().flatten().map(|(_, v)| *v)).collect();
    Ok(CmReport {
        family,
        params: *p,
        max_order,
        grid: *grid,
        per_order,
        witnesses,
        verdict,
        prediction,
        predicted: prediction.tag(),
        agree: prediction.admits(verdict),
    })
}

/// Grid indices ordered from the ends inward: `0, n−1, 1, n−2, …`.
fn extremes_first(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        out.push(lo);
        lo += 1;
        if lo < hi {
            hi -= 1;
            out.push(hi);
        }
    }
    out
}

/// Worst violation of the requested sign pattern, or `None`.
///
/// Candidates are ranked by the violation divided by the sum of the absolute
/// terms that produced it. Points are scanned from the grid ends inward and a
/// later candidate replaces the current one only if it is strictly worse, so
/// ties go to the extremes.
pub fn find_violation(
    family: Family,
    p: &ParamTriple,
    sign: Sign,
    max_order: usize,
    grid: &GridSpec,
) -> Result<Option<ViolationWitness>> {
    check_max_order(max_order)?;
    let xs = grid.points(p.alpha)?;
    let table = sample_grid(family, p, &xs, max_order)?;
    let mut best: Option<(f64, ViolationWitness)> = None;
    for i in extremes_first(xs.len()) {
        let smp = &table[i];
        let tol = tolerance(smp.signed[0]);
        for (n, &v) in smp.signed.iter().enumerate() {
            let w = sign.orient() * v;
            if !(w < -tol) {
                continue;
            }
            let score = normalised(w, smp.scale[n]);
            if best.is_none_or(|(b, _)| score < b) {
                best = Some((score, ViolationWitness { sign, order: n, x: xs[i], value: w }));
            }
        }
    }
    Ok(best.map(|(_, w)| w))
}

/// Bisects λ for the boundary of the set where the `direction` test passes.
///
/// Δ and θ are affine in λ, so that set is a half-line: `λ ≤ λ*` for
/// [`Direction::CmUpper`] and `λ ≥ λ*` for [`Direction::NegCmLower`].
pub fn sharp_lambda_estimate(
    family: Family,
    s: f64,
    t: f64,
    direction: Direction,
    max_order: usize,
    grid: &GridSpec,
    bracket: (f64, f64),
) -> Result<f64> {
    if s == t && direction == Direction::NegCmLower {
        return Err(Error::InvalidArgument("negcm-lower requires s != t".into()));
    }
    let base = ParamTriple::new(s, t, 0.0)?;
    let passes = |lambda: f64| -> Result<bool> {
        let r = cm_verify(family, &base.with_lambda(lambda), max_order, grid)?;
        Ok(match direction {
            Direction::CmUpper => {
                matches!(r.verdict, Verdict::CmConsistent | Verdict::IdenticallyZero)
            }
            Direction::NegCmLower => matches!(r.verdict, Verdict::NegCmConsistent | Verdict::IdenticallyZero),
        })
    };
    let (mut lo, mut hi) = bracket;
    // `inside` is the endpoint that belongs to the pass-set
    let lo_pass = passes(lo)?;
    let hi_pass = passes(hi)?;
    let expected = direction == Direction::CmUpper;
    if lo_pass != expected || hi_pass == expected {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > SHARP_WIDTH {
        let mid = 0.5 * (lo + hi);
        if passes(mid)? == expected {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The λ threshold the classification rule assigns to `direction`.
pub fn theoretical_threshold(s: f64, t: f64, direction: Direction) -> Result<f64> {
    let p = ParamTriple::new(s, t, 0.0)?;
    let inv = 1.0 / p.gap();
    Ok(match (p.regime, direction) {
        (Regime::Equal, Direction::CmUpper) => 1.0,
        (Regime::Equal, Direction::NegCmLower) => {
            return Err(Error::InvalidArgument("negcm-lower requires s != t".into()));
        }
        (Regime::SubUnitGap, Direction::CmUpper) | (Regime::UnitGap, _) => 1.0,
        (Regime::SubUnitGap, Direction::NegCmLower) => inv,
        (Regime::SuperUnitGap, Direction::CmUpper) => inv,
        (Regime::SuperUnitGap, Direction::NegCmLower) => 1.0,
    })
}
