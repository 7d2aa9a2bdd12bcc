use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmperiods")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn verify_cs_passes_with_many_digits() {
    let out = run(&["verify-cs", "--d", "7", "--prec", "120"]);
    assert_eq!(code(&out), 0);
    let v = json(&["verify-cs", "--d", "7", "--prec", "120"]);
    assert!(v["checks"][0]["digits_agreed"].as_i64().unwrap() >= 100);
}

#[test]
fn fermat_precondition_is_a_usage_error() {
    assert_eq!(code(&run(&["fermat", "--p", "7", "--rst", "1,2,4"])), 2);
    assert_eq!(code(&run(&["fermat", "--p", "7", "--rst", "1,2"])), 2);
    assert_eq!(code(&run(&["fermat", "--p", "7", "--rst", "1,1,5", "--prec", "60"])), 0);
}

#[test]
fn recognize_prints_the_fraction() {
    let out = run(&["recognize", "--value", "0.75"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("3/4"));
    let out = run(&["recognize", "--value", "3.14159265358979323846264338327950288419716939937510582097494459"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(code(&run(&["verify-cs", "--d", "12"])), 2);
    assert_eq!(code(&run(&["faltings", "--p", "11"])), 0);
    assert_eq!(code(&run(&["faltings", "--p", "13"])), 2);
    assert_eq!(code(&run(&["hecke", "--p", "7", "--form", "1,1,1"])), 2);
    assert_eq!(code(&run(&["kronecker", "--d", "23", "--class", "3"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn json_schema_is_stable() {
    let v = json(&["kronecker", "--d", "23", "--prec", "50"]);
    assert_eq!(v["command"], "kronecker");
    assert_eq!(v["prec"], 50);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    for c in checks {
        let mut keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["check", "digits_agreed", "inputs", "lhs_log", "pass", "rhs_log"]);
        assert!(c["lhs_log"].is_string() && c["rhs_log"].is_string());
    }
}

#[test]
fn hecke_emits_the_exact_pair() {
    let v = json(&["hecke", "--p", "23", "--form", "2,1,3"]);
    assert_eq!(v["values"]["x"], "3");
    assert_eq!(v["values"]["y"], "1");
    let v = json(&["hecke", "--p", "7", "--form", "2,-1,1"]);
    assert_eq!((v["values"]["x"].as_str(), v["values"]["y"].as_str()), (Some("1"), Some("1")));
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["--json", "--prec", "60", "periods", "--p", "47"];
    let base = run(&args).stdout;
    assert_eq!(run(&args).stdout, base);
    for threads in ["1", "3"] {
        let mut with = args.to_vec();
        with.extend_from_slice(&["--threads", threads]);
        assert_eq!(run(&with).stdout, base, "threads = {threads}");
    }
    let args = ["--json", "--prec", "50", "kronecker", "--d", "47"];
    let base = run(&args).stdout;
    let mut one = args.to_vec();
    one.extend_from_slice(&["--threads", "1"]);
    assert_eq!(run(&one).stdout, base);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("cmperiods-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["--json", "class", "--d", "47", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["values"]["h"], 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn small_suite_passes() {
    assert_eq!(code(&run(&["suite", "--max-d", "60", "--prec", "50"])), 0);
}
