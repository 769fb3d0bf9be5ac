use thiserror::Error;

/// Errors raised by the evaluation, verification and reporting layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("unsupported order {order} (maximum is {max})")]
    UnsupportedOrder { order: usize, max: usize },

    /// The operation is undefined for coinciding parameters (e.g. `s = t`).
    #[error("degenerate parameters: {0}")]
    Degenerate(&'static str),

    #[error("overflow: logarithm {ln_value} exceeds the representable range")]
    Overflow { ln_value: f64 },

    #[error("pole: {0}")]
    Pole(&'static str),

    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e}")]
    NonConvergence { estimate: f64, tolerance: f64 },

    #[error("bisection bracket [{lo}, {hi}] does not straddle a threshold")]
    Bracket { lo: f64, hi: f64 },

    /// Both sign patterns passed at non-negligible magnitude; indicates a numerical fault.
    #[error("inconsistent classification: function is both CM- and negCM-consistent at order {order}")]
    InconsistentClassification { order: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: x })
    }
}
