//! Acceptance suite: one PASS/FAIL line per criterion. Criteria 1–7 run
//! in-process; criterion 8 drives the built binary.

use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::time::Instant;

use cm_atlas::certify::{self, CriterionResult};

const BIN: &str = env!("CARGO_BIN_EXE_cm-atlas");

fn run_bin(args: &[&str], env: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("CM_ATLAS_GRID");
    if let Some(g) = env {
        cmd.env("CM_ATLAS_GRID", g);
    }
    cmd.output().expect("binary runs")
}

/// Scripted invocations and the exit code each must produce.
fn exit_matrix() -> Vec<(Vec<&'static str>, Option<&'static str>, i32)> {
    let v = |s: &'static str| s.split_whitespace().collect::<Vec<_>>();
    vec![
        // valid, all assertions pass
        (v("eval --family delta --s 0 --t 1 --lambda 1 --x 2"), None, 0),
        (v("eval --family psi --x 1 --format json"), None, 0),
        (v("eval --family kernel --s 0 --t 0.5 --u 200"), None, 0),
        (v("eval --family phi --n-points 20"), None, 0),
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1.0"), None, 0),
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1.5"), None, 0),
        (v("cm-check --family theta --s 0 --t 2 --lambda 1.2 --format csv"), None, 0),
        (v("sharp --s 0 --t 0.4 --direction cm-upper"), None, 0),
        (v("sharp --s 0 --t 2.5 --direction cm-upper --format json"), None, 0),
        (v("inequalities --name thm3 --a 1 --b 1.5 --k 1 --beta 1 --gamma 2"), None, 0),
        (v("inequalities --name gamma-ratio --a 1 --b 3"), None, 0),
        (v("inequalities --name limits --format csv"), None, 0),
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1.0"), Some("1e-3,100,100,log"), 0),
        // a violation or disagreement is found
        (v("inequalities --name thm3 --a 1 --b 1.5 --k 1 --beta 1.2 --gamma 2 --sweep"), None, 1),
        (v("inequalities --name exp-psi --n 1 --alpha -0.5 --sweep"), None, 1),
        (v("inequalities --name batir --a -0.5672 --x 0.001"), None, 1),
        // λ = 1.05 only fails the CM test far out; a short grid misses it
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1.05 --x-max 1"), None, 1),
        // a short grid cannot pin the threshold down to 1e-2
        (v("sharp --s 0 --t 0.4 --direction cm-upper --x-max 2"), None, 1),
        // usage or domain errors
        (v("frobnicate"), None, 2),
        (v("inequalities --name no-such-check"), None, 2),
        (v("inequalities"), None, 2),
        (v("cm-check --family delta --s 0 --t 0.5"), None, 2),
        (v("cm-check --family gamma --s 0 --t 0.5 --lambda 1"), None, 2),
        (v("eval --family psi --x -1"), None, 2),
        (v("eval --family delta --s 0 --t 1 --x 2"), None, 2),
        (v("eval --family h --s 0 --t 0.5 --lambda -1000 --x 1e6"), None, 2),
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1 --n-points 1"), None, 2),
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1 --max-order 9"), None, 2),
        (v("cm-check --family delta --s 0 --t 0.5 --lambda 1"), Some("garbage"), 2),
        (v("sharp --s 0 --t 0.4 --direction cm-upper --bracket-lo 5 --bracket-hi 6"), None, 2),
        (v("sharp --s 1 --t 1 --direction negcm-lower"), None, 2),
        (v("inequalities --name gamma-ratio --a 1 --b 2"), None, 2),
        (v("inequalities --name qi-sandwich --k 9 --x 1"), None, 2),
    ]
}

fn criterion_8() -> CriterionResult {
    let mut failures = Vec::new();
    let mut checks = 0;

    for format in ["json", "csv"] {
        checks += 1;
        let a = run_bin(&["report", "--format", format], None);
        let b = run_bin(&["report", "--format", format], None);
        if a.status.code() != Some(0) || a.stdout.is_empty() || a.stdout != b.stdout {
            failures.push(format!(
                "report --format {format}: exit {:?}/{:?}, identical={}",
                a.status.code(),
                b.status.code(),
                a.stdout == b.stdout
            ));
        }
        if format == "json" {
            checks += 1;
            let parsed: Result<serde_json::Value, _> = serde_json::from_slice(&a.stdout);
            let ok = parsed.as_ref().is_ok_and(|v| v["schema"] == 1 && v["all_pass"] == true);
            if !ok {
                failures.push("report JSON lacks schema 1 / all_pass".into());
            }
        }
    }

    checks += 1;
    let dir = std::env::temp_dir().join(format!("cm-atlas-acceptance-{}", std::process::id()));
    let _ = std::fs::create_dir_all(&dir);
    let file = dir.join("ineq.csv");
    let to_file = run_bin(&["inequalities", "--all", "--format", "csv", "--output", path_str(&file)], None);
    let to_stdout = run_bin(&["inequalities", "--all", "--format", "csv"], None);
    let written = std::fs::read(&file).unwrap_or_default();
    if to_file.status.code() != Some(0) || written != to_stdout.stdout || !to_file.stdout.is_empty() {
        failures.push("--output file differs from stdout".into());
    }
    let _ = std::fs::remove_dir_all(&dir);

    for (args, env, want) in exit_matrix() {
        checks += 1;
        let out = run_bin(&args, env);
        let got = out.status.code();
        let stderr = String::from_utf8_lossy(&out.stderr);
        if got != Some(want) {
            failures.push(format!("`{}`: exit {got:?}, expected {want}", args.join(" ")));
        } else if want == 2 && stderr.trim().is_empty() {
            failures.push(format!("`{}`: exit 2 without a diagnostic", args.join(" ")));
        } else if stderr.contains("panicked") {
            failures.push(format!("`{}`: panicked", args.join(" ")));
        }
    }

    let passed = checks - failures.len();
    CriterionResult {
        id: 8,
        title: "Determinism and exit-code contract",
        checks,
        summary: format!("{passed}/{checks} invocations behave"),
        failures,
        unlisted: 0,
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let runners: [fn() -> CriterionResult; 8] = [
        certify::criterion_1,
        certify::criterion_2,
        certify::criterion_3,
        certify::criterion_4,
        certify::criterion_5,
        certify::criterion_6,
        certify::criterion_7,
        criterion_8,
    ];
    let mut all = true;
    println!("running {} acceptance criteria", runners.len());
    for run in runners {
        let t = Instant::now();
        let r = run();
        all &= r.pass();
        println!(
            "{} C{} {}: {} [{:.2}s]",
            if r.pass() { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.summary,
            t.elapsed().as_secs_f64()
        );
        for f in &r.failures {
            println!("    {f}");
        }
        if r.unlisted > 0 {
            println!("    ... and {} more", r.unlisted);
        }
    }
    println!(
        "acceptance: {} in {:.2}s",
        if all { "all criteria pass" } else { "FAILED" },
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
