//! End-to-end checks of the CLI through the in-process entry point.

use cm_atlas::cli::run_with_env;
use cm_atlas::report::INEQUALITY_CSV_HEADER;
use serde_json::Value;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &str) -> Out {
    cli_env(args, None)
}

fn cli_env(args: &str, env: Option<&str>) -> Out {
    let argv = std::iter::once("cm-atlas").chain(args.split_whitespace());
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run_with_env(argv, env, &mut o, &mut e);
    Out { code, stdout: String::from_utf8(o).unwrap(), stderr: String::from_utf8(e).unwrap() }
}

fn json(args: &str) -> (i32, Value) {
    let out = cli(&format!("{args} --format json"));
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}\n{}", out.stdout));
    (out.code, v)
}

fn only_value(doc: &Value) -> f64 {
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    rows[0]["value"].as_f64().unwrap()
}

#[test]
fn eval_examples() {
    let (code, d) = json("eval --family delta --s 0 --t 1 --lambda 1 --x 2");
    assert_eq!(code, 0);
    assert!(only_value(&d).abs() < 1e-15);

    let (code, d) = json("eval --family psi --x 1");
    assert_eq!(code, 0);
    assert!((only_value(&d) + 0.5772156649015329).abs() < 1e-15);

    let (code, d) = json("eval --family kernel --s 0 --t 0.5 --u 200");
    assert_eq!(code, 0);
    assert!((only_value(&d) - 2.0).abs() < 1e-12);
    assert_eq!(d["variable"], "u");
}

#[test]
fn eval_sweeps_the_grid() {
    let (code, d) = json("eval --family phi --n-points 25 --spacing lin");
    assert_eq!(code, 0);
    let rows = d["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    let xs: Vec<f64> = rows.iter().map(|r| r["x"].as_f64().unwrap()).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn cm_check_examples() {
    for (args, verdict, predicted) in [
        ("--s 0 --t 0.5 --lambda 1.0", "CM-consistent", "CM"),
        ("--s 0 --t 0.5 --lambda 1.5", "neither", "neither"),
        ("--s 0 --t 2 --lambda 1.2", "negCM-consistent", "negCM"),
    ] {
        let (code, d) = json(&format!("cm-check --family delta {args}"));
        assert_eq!(code, 0, "{args}");
        assert_eq!(d["schema"], 1);
        assert_eq!(d["verdict"], verdict, "{args}");
        assert_eq!(d["predicted"], predicted, "{args}");
        assert_eq!(d["agree"], true);
        for key in ["family", "s", "t", "lambda", "max_order", "per_order", "witnesses"] {
            assert!(d.get(key).is_some(), "missing {key}");
        }
        assert_eq!(d["per_order"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn cm_check_reports_witnesses_for_neither() {
    let (_, d) = json("cm-check --family delta --s 0 --t 0.5 --lambda 1.5");
    let w = d["witnesses"].as_array().unwrap();
    assert!(!w.is_empty());
    assert!(w.iter().all(|w| w["x"].as_f64().unwrap() > 0.0));
}

#[test]
fn sharp_examples() {
    for (args, theory) in [
        ("--s 0 --t 0.4 --direction cm-upper", 1.0),
        ("--s 0 --t 0.4 --direction negcm-lower", 2.5),
        ("--s 0 --t 2.5 --direction cm-upper", 0.4),
    ] {
        let (code, d) = json(&format!("sharp {args}"));
        assert_eq!(code, 0, "{args}");
        let est = d["estimate"].as_f64().unwrap();
        assert!((d["theory"].as_f64().unwrap() - theory).abs() < 1e-15);
        assert!((est - theory).abs() <= 1e-2, "{args}: {est}");
        assert_eq!(d["within_tolerance"], true);
    }
}

#[test]
fn inequality_examples() {
    let (code, d) = json("inequalities --name thm3 --a 1 --b 1.5 --k 1 --beta 1 --gamma 2");
    assert_eq!(code, 0);
    assert_eq!(d["verdicts"][0]["holds"], true);

    let (code, d) = json("inequalities --name gamma-ratio --a 1 --b 3");
    assert_eq!(code, 0);
    assert_eq!(d["verdicts"][0]["holds"], true);
    assert!(d["verdicts"][0]["domain_swept"].as_str().unwrap().contains("reversed"));
}

#[test]
fn inequalities_all_as_csv() {
    let out = cli("inequalities --all --format csv");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut lines = out.stdout.split("\r\n");
    assert_eq!(lines.next().unwrap(), INEQUALITY_CSV_HEADER.join(","));
    let rows: Vec<&str> = lines.filter(|l| !l.is_empty()).collect();
    assert!(rows.len() > 40);
    assert!(rows.iter().all(|r| r.contains(",true,")));
}

#[test]
fn violations_exit_one() {
    assert_eq!(cli("inequalities --name thm3 --a 1 --b 1.5 --k 1 --beta 1.2 --gamma 2 --sweep").code, 1);
    assert_eq!(cli("inequalities --name exp-psi --n 2 --alpha -1.9 --sweep").code, 1);
    let out = cli("cm-check --family delta --s 0 --t 0.5 --lambda 1.05 --x-max 1");
    assert_eq!(out.code, 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "",
        "nonsense",
        "eval --family psi --x -1",
        "eval --family gamma --x 1",
        "cm-check --family delta --s 0 --t 0.5",
        "sharp --s 2 --t 2 --direction negcm-lower",
        "sharp --s 0 --t 0.4 --direction cm-upper --bracket-lo 3 --bracket-hi 4",
        "inequalities --name unknown-check",
        "inequalities --name watson --x -3",
        "cm-check --family delta --s 0 --t 0.5 --lambda 1 --delta -1",
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "`{args}`: {}", out.stdout);
        assert!(!out.stderr.is_empty(), "`{args}` gave no diagnostic");
    }
}

#[test]
fn help_is_not_an_error() {
    let out = cli("--help");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("cm-check"));
}

#[test]
fn grid_env_and_flag_precedence() {
    let env = Some("1e-2,50,30,lin");
    let out = cli_env("cm-check --family theta --s 0 --t 0.5 --lambda 1 --format json", env);
    let d: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(d["grid"]["n_points"], 30);
    assert_eq!(d["grid"]["spacing"], "lin");

    let out = cli_env("cm-check --family theta --s 0 --t 0.5 --lambda 1 --n-points 40 --format json", env);
    let d: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(d["grid"]["n_points"], 40);
    assert_eq!(d["grid"]["x_max"].as_f64(), Some(50.0));

    assert_eq!(cli_env("cm-check --family theta --s 0 --t 0.5 --lambda 1", Some("1,2,3")).code, 2);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("cm-atlas-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = cli(&format!("eval --family psi --x 2 --format json --output {p}"));
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let d: Value = serde_json::from_str(&written).unwrap();
    assert!((only_value(&d) - 0.42278433509846713).abs() < 1e-15);
}

#[test]
fn repeated_runs_are_identical() {
    let a = cli("inequalities --name limits --format json").stdout;
    let b = cli("inequalities --name limits --format json").stdout;
    assert_eq!(a, b);
    assert!(a.contains("\"schema\": 1"));
}
