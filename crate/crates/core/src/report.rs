//! Machine-readable output: versioned JSON documents and RFC-4180 CSV.
//!
//! Every float is written in scientific notation with 17 significant digits
//! (`{:.16e}`), so identical inputs give byte-identical files. Non-finite
//! values become `null` in JSON and `NaN`/`inf`/`-inf` in CSV.

use std::collections::BTreeMap;

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::cmcheck::CmReport;
use crate::error::{Error, Result};
use crate::families::GridSpec;
use crate::inequalities::InequalityVerdict;

/// Version of the JSON documents.
pub const SCHEMA_VERSION: u32 = 1;

/// Fixed-width scientific representation of a float.
pub fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// A float that serialises through [`sci`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sci(pub f64);

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(sci(self.0)).map_err(S::Error::custom)?.serialize(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridDoc {
    pub delta: Sci,
    pub x_max: Sci,
    pub n_points: usize,
    pub spacing: &'static str,
}

impl From<&GridSpec> for GridDoc {
    fn from(g: &GridSpec) -> Self {
        GridDoc {
            delta: Sci(g.delta),
            x_max: Sci(g.x_max),
            n_points: g.n_points,
            spacing: match g.spacing {
                crate::families::Spacing::Log => "log",
                crate::families::Spacing::Linear => "lin",
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub x: Sci,
    pub value: Sci,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalDoc {
    pub schema: u32,
    pub command: &'static str,
    pub family: String,
    pub params: BTreeMap<&'static str, Sci>,
    /// Name of the swept argument (`x`, or `u` for the kernel).
    pub variable: &'static str,
    pub rows: Vec<EvalRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderDoc {
    pub order: usize,
    pub min: Sci,
    pub argmin: Sci,
    pub max: Sci,
    pub argmax: Sci,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    pub sign: &'static str,
    pub order: usize,
    pub x: Sci,
    pub value: Sci,
}

#[derive(Debug, Clone, Serialize)]
pub struct CmCheckDoc {
    pub schema: u32,
    pub command: &'static str,
    pub family: &'static str,
    pub s: Sci,
    pub t: Sci,
    pub lambda: Sci,
    pub regime: &'static str,
    pub max_order: usize,
    pub grid: GridDoc,
    pub verdict: &'static str,
    pub predicted: &'static str,
    pub agree: bool,
    pub per_order: Vec<OrderDoc>,
    pub witnesses: Vec<WitnessDoc>,
}

impl From<&CmReport> for CmCheckDoc {
    fn from(r: &CmReport) -> Self {
        CmCheckDoc {
            schema: SCHEMA_VERSION,
            command: "cm-check",
            family: r.family.as_str(),
            s: Sci(r.params.s),
            t: Sci(r.params.t),
            lambda: Sci(r.params.lambda),
            regime: r.params.regime.as_str(),
            max_order: r.max_order,
            grid: GridDoc::from(&r.grid),
            verdict: r.verdict.as_str(),
            predicted: r.predicted.as_str(),
            agree: r.agree,
            per_order: r
                .per_order
                .iter()
                .map(|o| OrderDoc {
                    order: o.order,
                    min: Sci(o.min),
                    argmin: Sci(o.argmin),
                    max: Sci(o.max),
                    argmax: Sci(o.argmax),
                })
                .collect(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessDoc { sign: w.sign.as_str(), order: w.order, x: Sci(w.x), value: Sci(w.value) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpDoc {
    pub schema: u32,
    pub command: &'static str,
    pub family: &'static str,
    pub s: Sci,
    pub t: Sci,
    pub direction: &'static str,
    pub max_order: usize,
    pub estimate: Sci,
    pub theory: Sci,
    pub gap: Sci,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPointDoc {
    pub point: Sci,
    pub lhs: Sci,
    pub rhs: Sci,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub name: String,
    pub domain_swept: String,
    pub holds: bool,
    pub worst_margin: Sci,
    pub witness: WitnessPointDoc,
}

impl From<&InequalityVerdict> for VerdictDoc {
    fn from(v: &InequalityVerdict) -> Self {
        VerdictDoc {
            name: v.name.clone(),
            domain_swept: v.domain_swept.clone(),
            holds: v.holds,
            worst_margin: Sci(v.worst_margin),
            witness: WitnessPointDoc { point: Sci(v.witness.point), lhs: Sci(v.witness.lhs), rhs: Sci(v.witness.rhs) },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalitiesDoc {
    pub schema: u32,
    pub command: &'static str,
    pub all_hold: bool,
    pub verdicts: Vec<VerdictDoc>,
}

impl InequalitiesDoc {
    pub fn new(verdicts: &[InequalityVerdict]) -> Self {
        InequalitiesDoc {
            schema: SCHEMA_VERSION,
            command: "inequalities",
            all_hold: verdicts.iter().all(|v| v.holds),
            verdicts: verdicts.iter().map(VerdictDoc::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionDoc {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: usize,
    pub failed: usize,
    pub summary: String,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub schema: u32,
    pub command: &'static str,
    pub all_pass: bool,
    pub criteria: Vec<CriterionDoc>,
    pub inequalities: Vec<VerdictDoc>,
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(doc).map_err(|e| Error::InvalidArgument(format!("serialisation failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Writes a header and rows as CSV.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv output failed: {e}"));
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(format!("csv output failed: {e}")))
}

/// CSV columns of an inequality run.
pub const INEQUALITY_CSV_HEADER: [&str; 6] = ["name", "holds", "worst_margin", "witness_x", "lhs", "rhs"];

pub fn inequality_rows(verdicts: &[InequalityVerdict]) -> Vec<Vec<String>> {
    verdicts
        .iter()
        .map(|v| {
            vec![
                v.name.clone(),
                v.holds.to_string(),
                sci(v.worst_margin),
                sci(v.witness.point),
                sci(v.witness.lhs),
                sci(v.witness.rhs),
            ]
        })
        .collect()
}
