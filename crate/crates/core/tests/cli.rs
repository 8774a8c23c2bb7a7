use std::path::PathBuf;
use std::process::{Command, Output};

const RESONANT: &str = r#"
m = 2
c = "1"
alpha = ["x1", "0"]
density = "x1*x2 + 1"

[symbol]
degree = 1
terms = [{ index = [1, 0], poly = "x2" }]
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_projquant"))
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("projquant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn flat_scenario_passes() {
    let o = run(&["run", scenario_path("flat_r2.toml").to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("[PASS] projective-invariance"));
    assert!(out.contains("[PASS] sl-equivariance"));
    assert!(out.ends_with("summary: 2 passed, 0 failed\n"));
}

#[test]
fn resonant_weight_fails_the_lift_and_passes_the_guard() {
    let p = temp_file("resonant.toml", RESONANT);
    let path = p.to_str().unwrap();
    let o = run(&["run", path, "--suite", "projective-invariance"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] projective-invariance"));
    let o = run(&["run", path, "--suite", "resonance-guard"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn malformed_polynomial_reports_position() {
    let p = temp_file(
        "bad.toml",
        "m = 2\ndensity = \"x1 + x9\"\n[symbol]\ndegree = 0\nterms = []\n",
    );
    let o = run(&["run", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column 18"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    let flat = scenario_path("flat_r2.toml");
    assert_eq!(
        run(&["run", flat.to_str().unwrap(), "--suite", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["run"]).status.code(), Some(2));
    assert_eq!(run(&["run", "--random", flat.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["run", "/nonexistent/scenario.toml"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn random_runs_are_reproducible() {
    let args = ["run", "--random", "--seed", "7", "--dim", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_file_matches_stdout() {
    let out = std::env::temp_dir().join(format!("projquant-report-{}.txt", std::process::id()));
    let o = run(&[
        "run",
        scenario_path("flat_r2.toml").to_str().unwrap(),
        "--report",
        out.to_str().unwrap(),
        "--float-spot-check",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), o.stdout);
    std::fs::remove_file(out).ok();
}

#[test]
fn generate_is_deterministic_and_runnable() {
    let a = run(&["generate", "--seed", "3", "--dim", "3"]);
    let b = run(&["generate", "--seed", "3", "--dim", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let p = temp_file("generated.toml", &stdout(&a));
    let o = run(&[
        "run",
        p.to_str().unwrap(),
        "--suite",
        "affine-naturality",
        "--suite",
        "divergence-free-lift",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
