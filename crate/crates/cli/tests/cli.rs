use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_bigint::BigInt;

use gaugecount_cli::{resolve_str, run_count, run_verify_with, CliError, EXIT_MISMATCH, EXIT_NON_INTEGRAL};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gaugecount"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const D4_FERMION: &str = r#"{
  "group": {"builtin": "dihedral:4"},
  "lattice": {"dims": [2], "periodic": [true]},
  "matter": {"kind": "fermion", "rep": "standard", "spinors": 1}
}"#;

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn count_d4_fermion() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.json", D4_FERMION);
    let out = run(&["count", "--config", cfg.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["total"], "20");
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.json", D4_FERMION);
    let args = ["count", "--config", cfg.to_str().unwrap(), "--no-timestamp"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let stamped = stdout_json(&run(&["count", "--config", cfg.to_str().unwrap()]));
    assert!(stamped["timestamp_unix"].is_u64());
    assert!(stdout_json(&run(&args)).get("timestamp_unix").is_none());
}

#[test]
fn csv_and_text_formats() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.json", D4_FERMION);
    let csv = run(&["count", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert!(csv.starts_with("class,size,representative"));
    assert!(csv.trim_end().ends_with("total,,,20,"));
    let text = run(&["count", "--config", cfg.to_str().unwrap(), "--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("total: 20"));
    assert_eq!(run(&["count", "--config", cfg.to_str().unwrap(), "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn output_path_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "job.json",
        r#"{"group": {"builtin": "cyclic:3"}, "lattice": {"dims": [2, 2], "periodic": [true, true]},
            "output": {"path": "out.csv", "format": "csv"}}"#,
    );
    let out = dir.path().join("out.csv");
    let args = ["count", "--config", cfg.to_str().unwrap(), "--no-timestamp"];
    let _ = fs::remove_file(&out);
    assert_eq!(run(&args).status.code(), Some(0));
    assert!(fs::read_to_string(&out).unwrap().contains("total,,,243,"));
    assert_eq!(run(&args).status.code(), Some(2));
    let mut forced = args.to_vec();
    forced.push("--force");
    assert_eq!(run(&forced).status.code(), Some(0));
}

#[test]
fn malformed_lattice_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.edges", "V 2\n0 1\n0 x\n");
    let cfg = write(
        dir.path(),
        "job.json",
        r#"{"group": {"builtin": "cyclic:2"}, "lattice": {"file": "bad.edges"}}"#,
    );
    let out = run(&["count", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn disconnected_bulk_is_rejected_when_required() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "job.json",
        r#"{"group": {"builtin": "cyclic:3"}, "lattice": {"dims": [2], "periodic": [false]},
            "twist": {"kind": "endomorphism", "map": "inversion", "edges": {"list": [0]}},
            "require_connected_bulk": true}"#,
    );
    let out = run(&["count", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("is_bulk_connected"));
}

#[test]
fn twisted_lattice_file_with_marked_edges() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "ring.edges", "V 3\n0 1\n1 2\n2 0 twisted\n");
    let cfg = write(
        dir.path(),
        "job.json",
        r#"{"group": {"builtin": "cyclic:4"}, "lattice": {"file": "ring.edges"},
            "matter": {"kind": "charges", "charges": [1, 0, 0]},
            "twist": {"kind": "endomorphism", "map": "inversion", "edges": "marked"}}"#,
    );
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["formula_total"], "0");
    assert_eq!(v["match"], true);
}

#[test]
fn verify_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.json", D4_FERMION);
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["oracle_total"], "20");
    assert_eq!(v["instance_fingerprint"].as_str().unwrap().len(), 64);
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--budget", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));
}

#[test]
fn planted_bug_is_caught() {
    let job = resolve_str(D4_FERMION, Path::new(".")).unwrap();
    let outcome = run_verify_with(&job, 1_000_000, |j| run_count(j).map(|r| r.total + BigInt::from(1))).unwrap();
    assert!(!outcome.matches());
    assert_eq!(outcome.check().unwrap_err().exit_code(), EXIT_MISMATCH);
}

#[test]
fn non_integral_maps_to_exit_three() {
    let e = CliError::from(gaugecount::Error::NonIntegralResult("1/2".into()));
    assert_eq!(e.exit_code(), EXIT_NON_INTEGRAL);
}

#[test]
fn invalid_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.json", r#"{"group": {"builtin": "nonsense"}, "lattice": {"dims": [2], "periodic": [true]}}"#);
    assert_eq!(run(&["count", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let cfg = write(dir.path(), "job2.json", r#"{"group": {"builtin": "cyclic:2"}}"#);
    assert_eq!(run(&["count", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["count", "--config", "/nonexistent/job.json"]).status.code(), Some(2));
}

#[test]
fn group_info_table_rows() {
    for (spec, amb, quasi) in [
        ("binary_octahedral", true, "yes"),
        ("binary_tetrahedral", false, "yes"),
        ("cyclic:5", false, "yes"),
    ] {
        let out = run(&["group-info", spec, "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0));
        let v = stdout_json(&out);
        assert_eq!(v["ambivalent"], amb, "{spec}");
        assert_eq!(v["quasi_ambivalent"], quasi, "{spec}");
    }
    let v = stdout_json(&run(&["group-info", "binary_tetrahedral", "--no-timestamp"]));
    assert_eq!(v["out_order"], 2);
    assert_eq!(v["center_order"], 2);
}

#[test]
fn group_info_from_cayley_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "z2.cayley", "order 2\n0 1\n1 0\n");
    let out = run(&["group-info", "--cayley", f.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("order: 2"));
}

#[test]
fn lattice_make() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("torus.edges");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["lattice-make", "--dims", "2,2", "--out", p]).status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("V 4\n"));
    assert_eq!(text.lines().count(), 1 + 8);
    assert_eq!(run(&["lattice-make", "--dims", "2,2", "--out", p]).status.code(), Some(2));
    assert_eq!(run(&["lattice-make", "--dims", "2,2", "--out", p, "--force"]).status.code(), Some(0));

    let out = run(&["lattice-make", "--dims", "3", "--periodic", "false"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "V 3\n0 1\n1 2\n");
}

#[test]
fn threads_flag() {
    let out = run(&["--threads", "1", "group-info", "cyclic:4", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
}
