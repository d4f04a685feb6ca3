use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kerr-casimir"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kerr-casimir-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const SWEEP: &[&str] = &["sweep", "--axis", "T", "--start", "0.5", "--stop", "500", "--count", "40", "--scale", "log"];

#[test]
fn point_defaults_succeed() {
    let out = run(&["point"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("mass,spin,radius,omega,length,area,temperature,C,Lp"));
    assert!(lines[1].ends_with(",ok"));
}

#[test]
fn forbidden_point_exits_with_input_error() {
    let out = run(&["point", "--omega", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("forbidden_orbit"));
}

#[test]
fn malformed_input_exits_with_2() {
    assert_eq!(run(&["point", "--omega", "fast"]).status.code(), Some(2));
    assert_eq!(run(&["point", "--length", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["point", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--axis", "T", "--start", "2", "--stop", "1", "--count", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--axis", "q", "--start", "1", "--stop", "2", "--count", "3"]).status.code(), Some(2));
}

#[test]
fn sweep_bytes_do_not_depend_on_parallelism() {
    let base = run(&[SWEEP, &["--parallelism", "1"]].concat());
    assert_eq!(base.status.code(), Some(0));
    for k in ["4", "8"] {
        let other = run(&[SWEEP, &["--parallelism", k]].concat());
        assert_eq!(other.stdout, base.stdout, "parallelism {k}");
    }
    assert_eq!(String::from_utf8(base.stdout).unwrap().lines().count(), 41);
}

#[test]
fn jsonl_has_one_object_per_point_and_no_nan() {
    let out = run(&[SWEEP, &["--format", "jsonl", "--omega", "frac=0.9"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 40);
    assert!(text.lines().all(|l| l.starts_with("{\"mass\":") && l.ends_with("\"status\":\"ok\"}")));
    assert!(!text.contains("NaN") && !text.contains("inf"));
}

#[test]
fn sweep_keeps_failed_points() {
    // the horizon sits at r ≈ 1.866 for a = 0.5
    let out = run(&["sweep", "--axis", "r", "--start", "1.5", "--stop", "3", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let status: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(status, ["inside_horizon", "ok", "ok", "ok"]);
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let cfg = scratch("point.cfg");
    std::fs::write(&cfg, "# flat space\nmass = 0\nspin = 0\nomega = 0\nlength = 1\narea = 1\ntemperature = 0\n").unwrap();
    let out = run(&["point", "--config", cfg.to_str().unwrap(), "--format", "jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"F_ren\":-6.85389194520094"), "{text}");

    let out = run(&["point", "--config", cfg.to_str().unwrap(), "--length", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",2.0000000000000000e0,"));

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["point", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("sweep.csv");
    let out = run(&[SWEEP, &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let stdout = run(SWEEP).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn validate_exit_codes() {
    let ok = run(&["validate"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("0 failed"));

    let loose = run(&["validate", "--rel-tol", "1e-2"]);
    assert_eq!(loose.status.code(), Some(0));

    let starved = run(&["validate", "--m-max", "1"]);
    assert_eq!(starved.status.code(), Some(1));
    assert!(String::from_utf8(starved.stdout).unwrap().contains("FAIL"));

    let json = run(&["validate", "--format", "jsonl"]);
    let text = String::from_utf8(json.stdout).unwrap();
    assert!(text.starts_with("{\"passed\":true,\"checks\":["));
}
