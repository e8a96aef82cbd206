use std::process::{Command, Output};

fn cubic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    format!("{}/../core/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn catalog_lists_the_builtin_scenarios() {
    let o = cubic(&["catalog"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(names, ["sl2-f5-quadratic", "su3-f4", "su3-f9", "orth-f2", "su-quat-q", "doubled-su3-f4"]);
}

#[test]
fn explain_prints_statement_or_rejects_unknown_ids() {
    let o = cubic(&["explain", "f.square"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("f.square\n"));
    assert!(text.contains("statement: ") && text.contains("algorithm: "));
    assert_eq!(cubic(&["explain", "no.such-check"]).status.code(), Some(2));
}

#[test]
fn machine_report_is_json_and_exits_zero() {
    let o = cubic(&["run", "su3-f4", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scenario"], "su3-f4");
    assert_eq!(v["summary"]["action"], "cubic");
    assert_eq!(v["totals"]["failed"], 0);
}

#[test]
fn human_report_for_two_scenarios_in_argument_order() {
    let o = cubic(&["run", "orth-f2", "sl2-f5-quadratic"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (a, b) = (text.find("orth-f2").unwrap(), text.find("sl2-f5-quadratic").unwrap());
    assert!(a < b);
}

#[test]
fn sample_floor_is_enforced() {
    let o = cubic(&["run", "su3-f4", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--samples must be at least"));
}

#[test]
fn malformed_instances_exit_two_with_a_diagnostic() {
    for (file, needle) in [
        ("reducible-modulus.scn", "reducible modulus"),
        ("isotropic-pi.scn", "isotropic"),
        ("span-one-x.scn", "not Jordan closed"),
    ] {
        let o = cubic(&["run", &data(file)]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(needle), "{file}");
    }
    assert_eq!(cubic(&["run", "no-such-scenario"]).status.code(), Some(2));
}

#[test]
fn check_filter_limits_machine_output() {
    let o = cubic(&["run", "su3-f9", "--format", "machine", "--checks", "rho.*"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["id"].as_str().unwrap().starts_with("rho.")));
    assert_eq!(cubic(&["run", "su3-f9", "--checks", "zzz.*"]).status.code(), Some(2));
}

#[test]
fn seed_changes_nothing_for_exhaustive_instances() {
    let a = cubic(&["run", "su3-f4", "--format", "machine", "--seed", "1"]);
    let b = cubic(&["run", "su3-f4", "--format", "machine", "--seed", "1"]);
    assert_eq!(a.stdout, b.stdout);
}
