//! Command-line front end. [`run`] takes the arguments and output streams and
//! returns the exit code: 0 when every assertion passes, 1 when a
//! mathematical disagreement or violation is found, 2 on usage or domain
//! errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certify::{run_criteria, CriterionResult, SHARP_TOL};
use crate::cmcheck::{cm_verify, sharp_lambda_estimate, theoretical_threshold, CmReport, Direction, Family};
use crate::error::{Error, Result};
use crate::families::{
    capital_lambda, delta_deriv, h_func, kernel_g, ln_h, phi, theta_deriv, z_func, GridSpec, ParamTriple, Spacing,
};
use crate::inequalities::{run_all, run_named, CheckArgs, InequalityVerdict};
use crate::report::{
    self, sci, CmCheckDoc, CriterionDoc, EvalDoc, EvalRow, InequalitiesDoc, ReportDoc, Sci, SharpDoc, VerdictDoc,
};
use crate::specfun::{digamma, polygamma};

/// Environment variable holding a default grid as `delta,x_max,n,log|lin`.
pub const GRID_ENV: &str = "CM_ATLAS_GRID";

#[derive(Debug, Parser)]
#[command(
    name = "cm-atlas",
    version,
    about = "Complete-monotonicity checks, sharp constants and inequality certification for divided-difference polygamma families"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Output format (default: human, or json for `report`).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Grid offset above the left end of the domain.
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// Right end of the grid.
    #[arg(long, global = true)]
    x_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    n_points: Option<usize>,
    /// Grid spacing.
    #[arg(long, global = true, value_enum)]
    spacing: Option<SpacingArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingArg {
    Log,
    Lin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Delta,
    Theta,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Delta => Family::Delta,
            FamilyArg::Theta => Family::Theta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    CmUpper,
    NegcmLower,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::CmUpper => Direction::CmUpper,
            DirectionArg::NegcmLower => Direction::NegCmLower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum EvalFamily {
    Delta,
    Theta,
    H,
    LnH,
    Phi,
    Z,
    LambdaFn,
    Kernel,
    Psi,
    Polygamma,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at one point or over the grid.
    Eval(EvalArgs),
    /// Classify Δ or θ by derivative signs and compare with the prediction.
    CmCheck(CmCheckArgs),
    /// Recover a sharp λ threshold by bisection.
    Sharp(SharpArgs),
    /// Run checks from the inequality registry.
    Inequalities(IneqArgs),
    /// Run the certification suite and every registry check.
    Report,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    family: EvalFamily,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Evaluation point; without it the grid is used.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Kernel argument.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<f64>,
    /// Polygamma order.
    #[arg(long)]
    k: Option<usize>,
    /// Derivative order for delta and theta.
    #[arg(long, default_value_t = 0)]
    order: usize,
}

#[derive(Debug, Args)]
struct CmCheckArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, default_value_t = crate::cmcheck::DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Debug, Args)]
struct SharpArgs {
    #[arg(long, value_enum, default_value = "delta")]
    family: FamilyArg,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, value_enum)]
    direction: DirectionArg,
    #[arg(long, default_value_t = crate::cmcheck::DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = crate::cmcheck::DEFAULT_BRACKET.0)]
    bracket_lo: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = crate::cmcheck::DEFAULT_BRACKET.1)]
    bracket_hi: f64,
}

#[derive(Debug, Args)]
struct IneqArgs {
    /// Registry entry to run.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    name: Option<String>,
    /// Run every registry entry.
    #[arg(long)]
    all: bool,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Sweep the point argument over the grid instead of evaluating once.
    #[arg(long)]
    sweep: bool,
}

/// Rendered output plus the exit code it implies.
struct Outcome {
    text: String,
    code: i32,
}

/// Runs the CLI with the process environment.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(GRID_ENV).ok().as_deref(), stdout, stderr)
}

/// Runs the CLI with an explicit value for [`GRID_ENV`].
pub fn run_with_env<I, T>(args: I, grid_env: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let out: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, grid_env) {
        Ok(outcome) => {
            let written = match &cli.global.output {
                Some(path) => {
                    std::fs::write(path, &outcome.text).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Parses `delta,x_max,n,log|lin`.
pub fn parse_grid_env(s: &str) -> Result<GridSpec> {
    let bad = || Error::InvalidGrid(format!("{GRID_ENV} must be `delta,x_max,n,log|lin`, got `{s}`"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let delta = parts[0].parse().map_err(|_| bad())?;
    let x_max = parts[1].parse().map_err(|_| bad())?;
    let n = parts[2].parse().map_err(|_| bad())?;
    let spacing = match parts[3] {
        "log" => Spacing::Log,
        "lin" => Spacing::Linear,
        _ => return Err(bad()),
    };
    Ok(GridSpec::new(delta, x_max, n, spacing))
}

/// Flags override the environment, which overrides the defaults.
fn resolve_grid(g: &GlobalOpts, env: Option<&str>) -> Result<GridSpec> {
    let mut grid = match env {
        Some(s) if !s.trim().is_empty() => parse_grid_env(s)?,
        _ => GridSpec::default(),
    };
    if let Some(d) = g.delta {
        grid.delta = d;
    }
    if let Some(x) = g.x_max {
        grid.x_max = x;
    }
    if let Some(n) = g.n_points {
        grid.n_points = n;
    }
    if let Some(s) = g.spacing {
        grid.spacing = match s {
            SpacingArg::Log => Spacing::Log,
            SpacingArg::Lin => Spacing::Linear,
        };
    }
    Ok(grid)
}

fn execute(cli: &Cli, env: Option<&str>) -> Result<Outcome> {
    let grid = resolve_grid(&cli.global, env)?;
    let format = cli.global.format;
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, &grid, format.unwrap_or(Format::Human)),
        Command::CmCheck(a) => cmd_cm_check(a, &grid, format.unwrap_or(Format::Human)),
        Command::Sharp(a) => cmd_sharp(a, &grid, format.unwrap_or(Format::Human)),
        Command::Inequalities(a) => cmd_inequalities(a, &grid, format.unwrap_or(Format::Human)),
        Command::Report => cmd_report(&grid, format.unwrap_or(Format::Json)),
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("eval --family {family} requires --{flag}")))
}

fn eval_family_name(f: EvalFamily) -> &'static str {
    match f {
        EvalFamily::Delta => "delta",
        EvalFamily::Theta => "theta",
        EvalFamily::H => "h",
        EvalFamily::LnH => "ln_h",
        EvalFamily::Phi => "phi",
        EvalFamily::Z => "z",
        EvalFamily::LambdaFn => "lambda_fn",
        EvalFamily::Kernel => "kernel",
        EvalFamily::Psi => "psi",
        EvalFamily::Polygamma => "polygamma",
    }
}

fn cmd_eval(a: &EvalArgs, grid: &GridSpec, format: Format) -> Result<Outcome> {
    let name = eval_family_name(a.family);
    let mut params = BTreeMap::new();
    let triple = |params: &mut BTreeMap<&'static str, Sci>, with_lambda: bool| -> Result<ParamTriple> {
        let s = need(a.s, "s", name)?;
        let t = need(a.t, "t", name)?;
        params.insert("s", Sci(s));
        params.insert("t", Sci(t));
        let l = if with_lambda {
            let l = need(a.lambda, "lambda", name)?;
            params.insert("lambda", Sci(l));
            l
        } else {
            0.0
        };
        ParamTriple::new(s, t, l)
    };

    type Func<'a> = Box<dyn Fn(f64) -> Result<f64> + 'a>;
    let (alpha, variable, f): (f64, &'static str, Func) = match a.family {
        EvalFamily::Delta | EvalFamily::Theta => {
            let p = triple(&mut params, true)?;
            let order = a.order;
            params.insert("order", Sci(order as f64));
            let f: Func = if a.family == EvalFamily::Delta {
                Box::new(move |x| delta_deriv(&p, order, x))
            } else {
                Box::new(move |x| theta_deriv(&p, order, x))
            };
            (p.alpha, "x", f)
        }
        EvalFamily::H | EvalFamily::LnH => {
            let p = triple(&mut params, true)?;
            let f: Func = if a.family == EvalFamily::H {
                Box::new(move |x| h_func(&p, x))
            } else {
                Box::new(move |x| ln_h(&p, x))
            };
            (p.alpha, "x", f)
        }
        EvalFamily::Z | EvalFamily::LambdaFn => {
            let p = triple(&mut params, false)?;
            let (s, t) = (p.s, p.t);
            let f: Func = if a.family == EvalFamily::Z {
                Box::new(move |x| z_func(s, t, x))
            } else {
                Box::new(move |x| capital_lambda(s, t, x))
            };
            (p.alpha, "x", f)
        }
        EvalFamily::Kernel => {
            let p = triple(&mut params, false)?;
            let (s, t) = (p.s, p.t);
            (0.0, "u", Box::new(move |u| kernel_g(s, t, u)))
        }
        EvalFamily::Phi => (0.0, "x", Box::new(phi)),
        EvalFamily::Psi => (0.0, "x", Box::new(|x| Ok(digamma(x)?.value))),
        EvalFamily::Polygamma => {
            let k = need(a.k, "k", name)?;
            params.insert("k", Sci(k as f64));
            (0.0, "x", Box::new(move |x| Ok(polygamma(k, x)?.value)))
        }
    };

    let point = if a.family == EvalFamily::Kernel { a.u } else { a.x };
    let xs = match point {
        Some(x) => vec![x],
        None => grid.points(alpha)?,
    };
    let rows: Vec<(f64, f64)> = xs.iter().map(|&x| Ok((x, f(x)?))).collect::<Result<_>>()?;

    let text = match format {
        Format::Json => report::to_json(&EvalDoc {
            schema: report::SCHEMA_VERSION,
            command: "eval",
            family: name.to_string(),
            params,
            variable,
            rows: rows.iter().map(|&(x, v)| EvalRow { x: Sci(x), value: Sci(v) }).collect(),
        })?,
        Format::Csv => {
            let body: Vec<Vec<String>> = rows.iter().map(|&(x, v)| vec![sci(x), sci(v)]).collect();
            report::to_csv(&[variable, "value"], &body)?
        }
        Format::Human => {
            let mut s = String::new();
            for (x, v) in &rows {
                s.push_str(&format!("{name}({variable}={x}) = {v}\n"));
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn cm_check_csv(r: &CmReport) -> Result<String> {
    let header =
        ["family", "s", "t", "lambda", "verdict", "predicted", "agree", "order", "min", "argmin", "max", "argmax"];
    let rows: Vec<Vec<String>> = r
        .per_order
        .iter()
        .map(|o| {
            vec![
                r.family.to_string(),
                sci(r.params.s),
                sci(r.params.t),
                sci(r.params.lambda),
                r.verdict.to_string(),
                r.predicted.to_string(),
                r.agree.to_string(),
                o.order.to_string(),
                sci(o.min),
                sci(o.argmin),
                sci(o.max),
                sci(o.argmax),
            ]
        })
        .collect();
    report::to_csv(&header, &rows)
}

fn cmd_cm_check(a: &CmCheckArgs, grid: &GridSpec, format: Format) -> Result<Outcome> {
    let p = ParamTriple::new(a.s, a.t, a.lambda)?;
    grid.validate(p.alpha)?;
    let r = cm_verify(a.family.into(), &p, a.max_order, grid)?;
    let text = match format {
        Format::Json => report::to_json(&CmCheckDoc::from(&r))?,
        Format::Csv => cm_check_csv(&r)?,
        Format::Human => {
            let mut s = format!(
                "{} (s={}, t={}, lambda={}) [{}], orders 0..={}\nverdict: {}\npredicted: {}\nagree: {}\n",
                r.family,
                a.s,
                a.t,
                a.lambda,
                p.regime.as_str(),
                r.max_order,
                r.verdict,
                r.predicted,
                r.agree
            );
            for o in &r.per_order {
                s.push_str(&format!(
                    "  n={}: (-1)^n f^(n) in [{:e} at x={:e}, {:e} at x={:e}]\n",
                    o.order, o.min, o.argmin, o.max, o.argmax
                ));
            }
            for w in &r.witnesses {
                s.push_str(&format!("  witness {}: order {} x={:e} value {:e}\n", w.sign, w.order, w.x, w.value));
            }
            s
        }
    };
    Ok(Outcome { text, code: if r.agree { 0 } else { 1 } })
}

fn cmd_sharp(a: &SharpArgs, grid: &GridSpec, format: Format) -> Result<Outcome> {
    let family: Family = a.family.into();
    let direction: Direction = a.direction.into();
    let base = ParamTriple::new(a.s, a.t, 0.0)?;
    grid.validate(base.alpha)?;
    let theory = theoretical_threshold(a.s, a.t, direction)?;
    let est = sharp_lambda_estimate(family, a.s, a.t, direction, a.max_order, grid, (a.bracket_lo, a.bracket_hi))?;
    let gap = (est - theory).abs();
    let ok = gap <= SHARP_TOL;
    let text = match format {
        Format::Json => report::to_json(&SharpDoc {
            schema: report::SCHEMA_VERSION,
            command: "sharp",
            family: family.as_str(),
            s: Sci(a.s),
            t: Sci(a.t),
            direction: direction.as_str(),
            max_order: a.max_order,
            estimate: Sci(est),
            theory: Sci(theory),
            gap: Sci(gap),
            within_tolerance: ok,
        })?,
        Format::Csv => report::to_csv(
            &["family", "s", "t", "direction", "estimate", "theory", "gap"],
            &[vec![family.to_string(), sci(a.s), sci(a.t), direction.to_string(), sci(est), sci(theory), sci(gap)]],
        )?,
        Format::Human => format!(
            "{family} {direction} (s={}, t={}): lambda* = {est:.4}, theory {theory:.4}, gap {gap:.2e} ({})\n",
            a.s,
            a.t,
            if ok { "within tolerance" } else { "outside tolerance" }
        ),
    };
    Ok(Outcome { text, code: if ok { 0 } else { 1 } })
}

fn human_verdicts(vs: &[InequalityVerdict]) -> String {
    let mut s = String::new();
    for v in vs {
        s.push_str(&format!(
            "[{}] {}: margin {:e} at {:e} (lhs {:e}, rhs {:e}); {}\n",
            if v.holds { "holds" } else { "FAILS" },
            v.name,
            v.worst_margin,
            v.witness.point,
            v.witness.lhs,
            v.witness.rhs,
            v.domain_swept
        ));
    }
    let held = vs.iter().filter(|v| v.holds).count();
    s.push_str(&format!("{held}/{} hold\n", vs.len()));
    s
}

fn cmd_inequalities(a: &IneqArgs, grid: &GridSpec, format: Format) -> Result<Outcome> {
    let verdicts = if a.all {
        grid.validate(0.0)?;
        run_all(grid)?
    } else {
        let name = a.name.as_deref().expect("clap requires --name without --all");
        let args = CheckArgs {
            a: a.a,
            b: a.b,
            x: a.x,
            k: a.k,
            n: a.n,
            alpha: a.alpha,
            beta: a.beta,
            gamma: a.gamma,
            sweep: a.sweep,
        };
        run_named(name, &args, grid)?
    };
    let text = match format {
        Format::Json => report::to_json(&InequalitiesDoc::new(&verdicts))?,
        Format::Csv => report::to_csv(&report::INEQUALITY_CSV_HEADER, &report::inequality_rows(&verdicts))?,
        Format::Human => human_verdicts(&verdicts),
    };
    let code = if verdicts.iter().all(|v| v.holds) { 0 } else { 1 };
    Ok(Outcome { text, code })
}

fn criterion_doc(c: &CriterionResult) -> CriterionDoc {
    CriterionDoc {
        id: c.id,
        title: c.title.to_string(),
        pass: c.pass(),
        checks: c.checks,
        failed: c.failed(),
        summary: c.summary.clone(),
        failures: c.failures.clone(),
    }
}

fn cmd_report(grid: &GridSpec, format: Format) -> Result<Outcome> {
    grid.validate(0.0)?;
    let criteria = run_criteria();
    let verdicts = run_all(grid)?;
    let all_pass = criteria.iter().all(CriterionResult::pass) && verdicts.iter().all(|v| v.holds);
    let text = match format {
        Format::Json => report::to_json(&ReportDoc {
            schema: report::SCHEMA_VERSION,
            command: "report",
            all_pass,
            criteria: criteria.iter().map(criterion_doc).collect(),
            inequalities: verdicts.iter().map(VerdictDoc::from).collect(),
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = criteria
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.title.to_string(),
                        c.pass().to_string(),
                        c.checks.to_string(),
                        c.failed().to_string(),
                        c.summary.clone(),
                    ]
                })
                .collect();
            report::to_csv(&["criterion", "title", "pass", "checks", "failed", "summary"], &rows)?
        }
        Format::Human => {
            let mut s = String::new();
            for c in &criteria {
                s.push_str(&format!(
                    "[{}] C{} {}: {}\n",
                    if c.pass() { "PASS" } else { "FAIL" },
                    c.id,
                    c.title,
                    c.summary
                ));
                for f in &c.failures {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            s.push_str(&human_verdicts(&verdicts));
            s
        }
    };
    Ok(Outcome { text, code: if all_pass { 0 } else { 1 } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["cm-atlas"];
        full.extend_from_slice(args);
        let code = run_with_env(full, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_env_parsing() {
        let g = parse_grid_env("1e-2, 100, 50, lin").unwrap();
        assert_eq!(g, GridSpec::new(1e-2, 100.0, 50, Spacing::Linear));
        assert!(parse_grid_env("1e-2,100,50").is_err());
        assert!(parse_grid_env("a,100,50,log").is_err());
        assert!(parse_grid_env("1e-2,100,50,cubic").is_err());
    }

    #[test]
    fn flags_override_env() {
        let cli = Cli::try_parse_from(["cm-atlas", "--n-points", "7", "report"]).unwrap();
        let g = resolve_grid(&cli.global, Some("1e-2,100,50,lin")).unwrap();
        assert_eq!(g, GridSpec::new(1e-2, 100.0, 7, Spacing::Linear));
    }

    #[test]
    fn eval_examples() {
        let (code, out, _) = call(&["eval", "--family", "delta", "--s", "0", "--t", "1", "--lambda", "1", "--x", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "delta(x=2) = 0\n");
        let (code, out, _) = call(&["eval", "--family", "psi", "--x", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        let (head, row) = out.split_once("\r\n").unwrap();
        assert_eq!(head, "x,value");
        let v: f64 = row.trim_end().split(',').nth(1).unwrap().parse().unwrap();
        assert!((v + crate::specfun::EULER_GAMMA).abs() < 1e-15);
        let (code, out, _) = call(&["eval", "--family", "kernel", "--s", "0", "--t", "0.5", "--u", "200"]);
        assert_eq!(code, 0);
        assert_eq!(out, "kernel(u=200) = 2\n");
    }

    #[test]
    fn eval_errors_name_the_precondition() {
        let (code, _, err) = call(&["eval", "--family", "delta", "--s", "0", "--t", "1", "--x", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("--lambda"), "{err}");
        let (code, _, err) = call(&["eval", "--family", "psi", "--x", "-1"]);
        assert_eq!(code, 2);
        assert!(err.contains("x > 0"), "{err}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["inequalities", "--name", "nope"]).0, 2);
        assert_eq!(call(&["cm-check", "--family", "delta", "--s", "0"]).0, 2);
        assert_eq!(
            call(&["--n-points", "1", "cm-check", "--family", "delta", "--s", "0", "--t", "1", "--lambda", "1"]).0,
            2
        );
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("cm-check"));
    }
}
