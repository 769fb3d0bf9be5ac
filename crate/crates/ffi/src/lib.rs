//! C ABI over `cm-atlas`.
//!
//! Every function returns a [`CmaStatus`] and writes results through out
//! pointers. On failure the message is kept per thread and can be read with
//! [`cma_last_error`]. Handles are opaque and must be released with their
//! `_free` function; passing NULL to a `_free` function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cm_atlas::cmcheck::{self, CmReport, Direction, Family, Predicted, Sign, Verdict};
use cm_atlas::families::{self, GridSpec, ParamTriple, Spacing};
use cm_atlas::inequalities::{self, CheckArgs, InequalityVerdict};
use cm_atlas::report::{to_json, CmCheckDoc};
use cm_atlas::specfun;
use cm_atlas::Error;

/// Result code of every call. Nonzero values mirror the library's error kinds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmaStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    UnsupportedOrder = 3,
    Degenerate = 4,
    Overflow = 5,
    Pole = 6,
    NonConvergence = 7,
    Bracket = 8,
    InconsistentClassification = 9,
    InvalidGrid = 10,
    InvalidArgument = 11,
    UnknownName = 12,
    IndexOutOfRange = 13,
    Panic = 99,
}

impl From<&Error> for CmaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => CmaStatus::Domain,
            Error::UnsupportedOrder { .. } => CmaStatus::UnsupportedOrder,
            Error::Degenerate(_) => CmaStatus::Degenerate,
            Error::Overflow { .. } => CmaStatus::Overflow,
            Error::Pole(_) => CmaStatus::Pole,
            Error::NonConvergence { .. } => CmaStatus::NonConvergence,
            Error::Bracket { .. } => CmaStatus::Bracket,
            Error::InconsistentClassification { .. } => CmaStatus::InconsistentClassification,
            Error::InvalidGrid(_) => CmaStatus::InvalidGrid,
            Error::InvalidArgument(_) => CmaStatus::InvalidArgument,
            Error::UnknownName(_) => CmaStatus::UnknownName,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmaFamily {
    Delta = 0,
    Theta = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmaDirection {
    CmUpper = 0,
    NegcmLower = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmaSpacing {
    Log = 0,
    Linear = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmaVerdict {
    CmConsistent = 0,
    NegcmConsistent = 1,
    Neither = 2,
    IdenticallyZero = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmaPredicted {
    Cm = 0,
    Negcm = 1,
    Neither = 2,
    IdenticallyZero = 3,
    NotCm = 4,
}

/// Evaluation grid `x ∈ (−min(s, t) + delta, x_max]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmaGrid {
    pub delta: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub spacing: CmaSpacing,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmaOrderSummary {
    pub order: usize,
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
    pub argmax: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmaWitness {
    /// False for the CM pattern of `f`, true for that of `−f`.
    pub negated: bool,
    pub order: usize,
    pub x: f64,
    pub value: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmaVerdictInfo {
    pub holds: bool,
    pub worst_margin: f64,
    pub point: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl From<&InequalityVerdict> for CmaVerdictInfo {
    fn from(v: &InequalityVerdict) -> Self {
        CmaVerdictInfo {
            holds: v.holds,
            worst_margin: v.worst_margin,
            point: v.witness.point,
            lhs: v.witness.lhs,
            rhs: v.witness.rhs,
        }
    }
}

/// Opaque `(s, t, λ)` triple.
pub struct CmaParams(ParamTriple);

/// Opaque result of [`cma_cm_verify`].
pub struct CmaReport(CmReport);

/// Opaque list of inequality verdicts.
pub struct CmaVerdicts {
    items: Vec<InequalityVerdict>,
    names: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), CmaStatusError>) -> CmaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            CmaStatus::Ok
        }
        Ok(Err(CmaStatusError(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            CmaStatus::Panic
        }
    }
}

struct CmaStatusError(CmaStatus, String);

impl From<Error> for CmaStatusError {
    fn from(e: Error) -> Self {
        CmaStatusError(CmaStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> CmaStatusError {
    CmaStatusError(CmaStatus::NullPointer, format!("{what} is NULL"))
}

/// Writes through an out pointer after checking it.
unsafe fn put<T>(out: *mut T, what: &str, v: T) -> Result<(), CmaStatusError> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, CmaStatusError> {
    p.as_ref().ok_or_else(|| null(what))
}

fn family(f: CmaFamily) -> Family {
    match f {
        CmaFamily::Delta => Family::Delta,
        CmaFamily::Theta => Family::Theta,
    }
}

unsafe fn grid_or_default(g: *const CmaGrid) -> GridSpec {
    match g.as_ref() {
        None => GridSpec::default(),
        Some(g) => GridSpec::new(
            g.delta,
            g.x_max,
            g.n_points,
            match g.spacing {
                CmaSpacing::Log => Spacing::Log,
                CmaSpacing::Linear => Spacing::Linear,
            },
        ),
    }
}

/// Message of the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cma_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cma_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The default grid: `delta = 1e-3`, `x_max = 1e4`, 400 log-spaced points.
#[no_mangle]
pub extern "C" fn cma_grid_default() -> CmaGrid {
    let g = GridSpec::default();
    CmaGrid { delta: g.delta, x_max: g.x_max, n_points: g.n_points, spacing: CmaSpacing::Log }
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from a `cma_*` function documented as returning an owned
/// string, and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cma_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ----------------------------------------------------------- special functions

/// `ψ^(k)(x)` and an absolute error estimate (`err` may be NULL).
///
/// # Safety
/// `value` must be writable; `err` must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn cma_polygamma(k: usize, x: f64, value: *mut f64, err: *mut f64) -> CmaStatus {
    guard(|| {
        let r = specfun::polygamma(k, x)?;
        put(value, "value", r.value)?;
        if !err.is_null() {
            err.write(r.abs_err_est);
        }
        Ok(())
    })
}

/// `ln Γ(x)` for `x > 0`.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cma_ln_gamma(x: f64, value: *mut f64) -> CmaStatus {
    guard(|| put(value, "value", specfun::ln_gamma(x)?))
}

/// The positive zero of ψ.
#[no_mangle]
pub extern "C" fn cma_psi_root() -> f64 {
    specfun::psi_positive_root()
}

// ------------------------------------------------------------------ families

/// Allocates a parameter triple.
///
/// # Safety
/// `out` must be writable. The handle must be released with [`cma_params_free`].
#[no_mangle]
pub unsafe extern "C" fn cma_params_new(s: f64, t: f64, lambda: f64, out: *mut *mut CmaParams) -> CmaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = ParamTriple::new(s, t, lambda)?;
        out.write(Box::into_raw(Box::new(CmaParams(p))));
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a live handle from [`cma_params_new`].
#[no_mangle]
pub unsafe extern "C" fn cma_params_free(p: *mut CmaParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

unsafe fn eval_family(
    p: *const CmaParams,
    x: f64,
    value: *mut f64,
    f: fn(&ParamTriple, f64) -> cm_atlas::Result<f64>,
) -> CmaStatus {
    guard(|| {
        let p = borrow(p, "params")?;
        put(value, "value", f(&p.0, x)?)
    })
}

/// `Δ_{s,t;λ}(x)`.
///
/// # Safety
/// `p` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_delta(p: *const CmaParams, x: f64, value: *mut f64) -> CmaStatus {
    eval_family(p, x, value, families::delta)
}

/// `θ_{s,t;λ}(x)`.
///
/// # Safety
/// `p` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_theta(p: *const CmaParams, x: f64, value: *mut f64) -> CmaStatus {
    eval_family(p, x, value, families::theta)
}

/// `ln ℋ_{s,t;λ}(x)`.
///
/// # Safety
/// `p` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_ln_h(p: *const CmaParams, x: f64, value: *mut f64) -> CmaStatus {
    eval_family(p, x, value, families::ln_h)
}

/// The `n`-th derivative of Δ or θ at `x`.
///
/// # Safety
/// `p` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_family_deriv(
    fam: CmaFamily,
    p: *const CmaParams,
    n: usize,
    x: f64,
    value: *mut f64,
) -> CmaStatus {
    guard(|| {
        let p = borrow(p, "params")?;
        let v = match fam {
            CmaFamily::Delta => families::delta_deriv(&p.0, n, x)?,
            CmaFamily::Theta => families::theta_deriv(&p.0, n, x)?,
        };
        put(value, "value", v)
    })
}

/// `Λ_{s,t}(x)`, the λ at which θ vanishes.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cma_capital_lambda(s: f64, t: f64, x: f64, value: *mut f64) -> CmaStatus {
    guard(|| put(value, "value", families::capital_lambda(s, t, x)?))
}

// ------------------------------------------------------------- verification

/// Checks alternating derivative signs of Δ or θ up to `max_order` on `grid`
/// (NULL for the default grid).
///
/// # Safety
/// `p` must be a live handle, `grid` NULL or readable, `out` writable. The
/// report must be released with [`cma_report_free`].
#[no_mangle]
pub unsafe extern "C" fn cma_cm_verify(
    fam: CmaFamily,
    p: *const CmaParams,
    max_order: usize,
    grid: *const CmaGrid,
    out: *mut *mut CmaReport,
) -> CmaStatus {
    guard(|| {
        let p = borrow(p, "params")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = cmcheck::cm_verify(family(fam), &p.0, max_order, &grid_or_default(grid))?;
        out.write(Box::into_raw(Box::new(CmaReport(r))));
        Ok(())
    })
}

/// # Safety
/// `r` must be NULL or a live handle from [`cma_cm_verify`].
#[no_mangle]
pub unsafe extern "C" fn cma_report_free(r: *mut CmaReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Observed verdict, predicted class and whether they agree.
///
/// # Safety
/// `r` must be a live handle; each out pointer must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn cma_report_summary(
    r: *const CmaReport,
    verdict: *mut CmaVerdict,
    predicted: *mut CmaPredicted,
    agree: *mut bool,
) -> CmaStatus {
    guard(|| {
        let r = &borrow(r, "report")?.0;
        if let Some(v) = verdict.as_mut() {
            *v = match r.verdict {
                Verdict::CmConsistent => CmaVerdict::CmConsistent,
                Verdict::NegCmConsistent => CmaVerdict::NegcmConsistent,
                Verdict::Neither => CmaVerdict::Neither,
                Verdict::IdenticallyZero => CmaVerdict::IdenticallyZero,
            };
        }
        if let Some(p) = predicted.as_mut() {
            *p = match r.predicted {
                Predicted::Cm => CmaPredicted::Cm,
                Predicted::NegCm => CmaPredicted::Negcm,
                Predicted::Neither => CmaPredicted::Neither,
                Predicted::IdenticallyZero => CmaPredicted::IdenticallyZero,
                Predicted::NotCm => CmaPredicted::NotCm,
            };
        }
        if let Some(a) = agree.as_mut() {
            *a = r.agree;
        }
        Ok(())
    })
}

/// Number of per-order summaries (`max_order + 1`) and witnesses.
///
/// # Safety
/// `r` must be a live handle; each out pointer must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn cma_report_counts(
    r: *const CmaReport,
    orders: *mut usize,
    witnesses: *mut usize,
) -> CmaStatus {
    guard(|| {
        let r = &borrow(r, "report")?.0;
        if let Some(o) = orders.as_mut() {
            *o = r.per_order.len();
        }
        if let Some(w) = witnesses.as_mut() {
            *w = r.witnesses.len();
        }
        Ok(())
    })
}

fn index_error(i: usize, len: usize) -> CmaStatusError {
    CmaStatusError(CmaStatus::IndexOutOfRange, format!("index {i} out of range (length {len})"))
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_report_order(r: *const CmaReport, i: usize, out: *mut CmaOrderSummary) -> CmaStatus {
    guard(|| {
        let r = &borrow(r, "report")?.0;
        let o = r.per_order.get(i).ok_or_else(|| index_error(i, r.per_order.len()))?;
        put(out, "out", CmaOrderSummary { order: o.order, min: o.min, argmin: o.argmin, max: o.max, argmax: o.argmax })
    })
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_report_witness(r: *const CmaReport, i: usize, out: *mut CmaWitness) -> CmaStatus {
    guard(|| {
        let r = &borrow(r, "report")?.0;
        let w = r.witnesses.get(i).ok_or_else(|| index_error(i, r.witnesses.len()))?;
        put(out, "out", CmaWitness { negated: w.sign == Sign::NegCm, order: w.order, x: w.x, value: w.value })
    })
}

/// The report as the CLI's JSON document. Free the string with
/// [`cma_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_report_json(r: *const CmaReport, out: *mut *mut c_char) -> CmaStatus {
    guard(|| {
        let r = &borrow(r, "report")?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = to_json(&CmCheckDoc::from(r))?;
        let c = CString::new(s).map_err(|e| CmaStatusError(CmaStatus::InvalidArgument, e.to_string()))?;
        out.write(c.into_raw());
        Ok(())
    })
}

/// Bisects λ in `[lo, hi]` for the CM boundary of Δ or θ in `direction`.
///
/// # Safety
/// `grid` must be NULL or readable; `value` writable.
#[no_mangle]
pub unsafe extern "C" fn cma_sharp_lambda(
    fam: CmaFamily,
    s: f64,
    t: f64,
    direction: CmaDirection,
    max_order: usize,
    grid: *const CmaGrid,
    lo: f64,
    hi: f64,
    value: *mut f64,
) -> CmaStatus {
    guard(|| {
        let dir = match direction {
            CmaDirection::CmUpper => Direction::CmUpper,
            CmaDirection::NegcmLower => Direction::NegCmLower,
        };
        let v = cmcheck::sharp_lambda_estimate(family(fam), s, t, dir, max_order, &grid_or_default(grid), (lo, hi))?;
        put(value, "value", v)
    })
}

/// The threshold the classification assigns: 1 or `1/|t − s|`.
///
/// # Safety
/// `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cma_theoretical_threshold(
    s: f64,
    t: f64,
    direction: CmaDirection,
    value: *mut f64,
) -> CmaStatus {
    guard(|| {
        let dir = match direction {
            CmaDirection::CmUpper => Direction::CmUpper,
            CmaDirection::NegcmLower => Direction::NegCmLower,
        };
        put(value, "value", cmcheck::theoretical_threshold(s, t, dir)?)
    })
}

// -------------------------------------------------------------- inequalities

/// Runs the default sweeps of one registry check, or of all when `name` is
/// NULL. `grid` may be NULL for the default grid.
///
/// # Safety
/// `name` must be NULL or a NUL-terminated string; `grid` NULL or readable;
/// `out` writable. Release the list with [`cma_verdicts_free`].
#[no_mangle]
pub unsafe extern "C" fn cma_inequalities_run(
    name: *const c_char,
    grid: *const CmaGrid,
    out: *mut *mut CmaVerdicts,
) -> CmaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let grid = grid_or_default(grid);
        let items = if name.is_null() {
            inequalities::run_all(&grid)?
        } else {
            let name = CStr::from_ptr(name)
                .to_str()
                .map_err(|_| CmaStatusError(CmaStatus::InvalidArgument, "name is not UTF-8".into()))?;
            inequalities::run_named(name, &CheckArgs::default(), &grid)?
        };
        let names = items.iter().map(|v| CString::new(v.name.clone()).unwrap_or_default()).collect();
        out.write(Box::into_raw(Box::new(CmaVerdicts { items, names })));
        Ok(())
    })
}

/// # Safety
/// `v` must be NULL or a live handle from [`cma_inequalities_run`].
#[no_mangle]
pub unsafe extern "C" fn cma_verdicts_free(v: *mut CmaVerdicts) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Number of verdicts, or 0 for NULL.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cma_verdicts_len(v: *const CmaVerdicts) -> usize {
    v.as_ref().map_or(0, |v| v.items.len())
}

/// Fields of verdict `i`. `name` (may be NULL) receives a pointer owned by the
/// list, valid until [`cma_verdicts_free`].
///
/// # Safety
/// `v` must be a live handle, `out` writable, `name` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn cma_verdicts_get(
    v: *const CmaVerdicts,
    i: usize,
    out: *mut CmaVerdictInfo,
    name: *mut *const c_char,
) -> CmaStatus {
    guard(|| {
        let v = borrow(v, "verdicts")?;
        let it = v.items.get(i).ok_or_else(|| index_error(i, v.items.len()))?;
        put(out, "out", CmaVerdictInfo::from(it))?;
        if !name.is_null() {
            name.write(v.names[i].as_ptr());
        }
        Ok(())
    })
}

/// Divided-difference double bound at one `(a, b)` pair.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cma_check_thm3(
    a: f64,
    b: f64,
    k: usize,
    beta: f64,
    gamma: f64,
    out: *mut CmaVerdictInfo,
) -> CmaStatus {
    guard(|| {
        let v = inequalities::check_thm3_divided_diff(a, b, k, beta, gamma)?;
        put(out, "out", CmaVerdictInfo::from(&v))
    })
}
