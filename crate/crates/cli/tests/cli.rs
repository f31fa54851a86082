use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn status(r: &Value, check: &str) -> String {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == check).unwrap()["status"].as_str().unwrap().to_string()
}

#[test]
fn gav_solve_example() {
    let out = kummer(&["gav", "solve", "--r", "1", "--s", "-3", "--level", "3", "--json"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["schema"], "kummer-report/1");
    assert_eq!(r["payload"]["invariant_factors"], serde_json::json!([3, 3, 3, 3]));
    assert!(out.stderr.is_empty());
}

#[test]
fn euler_example_and_warning() {
    let out = kummer(&["fixlocus", "euler", "--scenario", &scenario("fibration.json")]);
    assert!(out.status.success());
    assert_eq!(report(&out)["payload"]["total"], 24);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2 passed"));
    let out = kummer(&["fixlocus", "euler", "--i1", "24", "--json"]);
    assert!(out.status.success());
    assert_eq!(status(&report(&out), "reference_configuration"), "skipped");
    let out = kummer(&["fixlocus", "euler", "--i1", "3", "--i2", "10", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(status(&report(&out), "euler_24"), "fail");
    assert!(String::from_utf8_lossy(&kummer(&["fixlocus", "euler", "--i1", "3", "--i2", "10"]).stderr)
        .contains("FAIL euler_24"));
}

#[test]
fn h4_trivial_action_is_constant() {
    let out = kummer(&["cohomology", "h4", "--action", "trivial", "--json"]);
    assert!(out.status.success());
    let r = report(&out);
    let values = r["payload"]["values"].as_array().unwrap();
    assert!(values.iter().all(|v| v["value"] == "108"));
}

#[test]
fn compare_scenarios() {
    let out = kummer(&["cohomology", "compare", "--scenario", &scenario("obstructed.json"), "--json"]);
    assert!(out.status.success());
    let v = &report(&out)["payload"]["verdict"];
    assert_eq!((v["value_a"].as_str(), v["value_b"].as_str()), (Some("81"), Some("1")));
    let out = kummer(&["cohomology", "compare", "--scenario", &scenario("intertwined.json"), "--json"]);
    assert!(out.status.success());
    assert_eq!(report(&out)["payload"]["verdict"]["verdict"], "no_obstruction");
}

#[test]
fn requested_checks_only() {
    let out = kummer(&["gav", "solve", "--scenario", &scenario("gav_example.json"), "--json"]);
    let r = report(&out);
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
    let dir = std::env::temp_dir().join(format!("kummer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("unknown_check.json");
    std::fs::write(&bad, r#"{"version": "kummer-scenario/1", "vector": {"r": 1, "l": [], "s": -3, "gram": []}, "checks": ["nope"]}"#)
        .unwrap();
    let out = kummer(&["gav", "solve", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown check \"nope\""));
}

#[test]
fn malformed_scenarios_name_the_path() {
    let dir = std::env::temp_dir().join(format!("kummer-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"version": "kummer-scenario/1", "action": {"N": 3, "generators": [{"name": "s", "M_A": [[1, 0]]}]}}"#)
        .unwrap();
    let out = kummer(&["cohomology", "h4", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("4x4"), "{err}");
    std::fs::write(&bad, r#"{"version": "kummer-scenario/1", "fibers": {"I1": -1}}"#).unwrap();
    let err = String::from_utf8_lossy(&kummer(&["fixlocus", "euler", "--scenario", bad.to_str().unwrap()]).stderr)
        .into_owned();
    assert!(err.contains("at `fibers.I1`"), "{err}");
    std::fs::write(&bad, r#"{"version": "kummer-scenario/9"}"#).unwrap();
    let err = String::from_utf8_lossy(&kummer(&["fixlocus", "euler", "--scenario", bad.to_str().unwrap()]).stderr)
        .into_owned();
    assert!(err.contains("at `version`"), "{err}");
}

#[test]
fn domain_errors_exit_two() {
    let out = kummer(&["gav", "solve", "--r", "1", "--s", "-3", "--level", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a multiple of 3"));
}

#[test]
fn repeated_scenario_runs_are_identical() {
    let args = ["gav", "verify", "--scenario", &scenario("kernel_product.json"), "--json"];
    let a = kummer(&args);
    let b = kummer(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seq = kummer(&["gav", "verify", "--scenario", &scenario("kernel_product.json"), "--json", "--jobs", "1"]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn remaining_subcommands_run() {
    for args in [
        vec!["gav", "cases", "--n1", "1", "--n2", "4", "--r", "2", "--l", "1", "--s", "-2"],
        vec!["gav", "rouquier", "--n1", "1", "--n2", "2", "--r", "1", "--l", "1", "--s", "-2"],
        vec!["gav", "psi", "--n1", "2", "--n2", "2", "--r", "1", "--l", "2", "--s", "-1"],
        vec!["cohomology", "mukai-sum", "--action", "order-three"],
        vec!["fixlocus", "hudson"],
        vec!["fixlocus", "ledger"],
        vec!["fixlocus", "k2", "--tau", "2,4,0,0"],
        vec!["surface", "validate", "--n1", "1", "--n2", "3"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        let out = kummer(&a);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["passed"], true);
    }
}
