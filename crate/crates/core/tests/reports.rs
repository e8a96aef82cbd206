use std::collections::HashSet;

use cubic_core::catalog_checks::{lookup, CHECKS};
use cubic_core::check::Status;
use cubic_core::reconstruct::all_ids;
use cubic_core::scenarios::{catalog_get, catalog_list, emit_report, load, parse, run_scenario, Format, ScenarioError};

const FAST: &[&str] = &["sl2-f5-quadratic", "su3-f4", "su3-f9", "orth-f2", "doubled-su3-f4"];

#[test]
fn reports_are_byte_identical_across_runs() {
    for name in FAST {
        let sc = catalog_get(name).unwrap();
        let (a, b) = (run_scenario(&sc).unwrap(), run_scenario(&sc).unwrap());
        for fmt in [Format::Human, Format::Machine] {
            assert_eq!(emit_report(&a, fmt), emit_report(&b, fmt), "{name}");
        }
    }
}

#[test]
fn every_pipeline_id_appears_exactly_once() {
    for name in FAST {
        let rep = run_scenario(&catalog_get(name).unwrap()).unwrap();
        let ids: Vec<&str> = rep.checks.iter().map(|r| r.id.as_str()).collect();
        let unique: HashSet<&str> = ids.iter().copied().collect();
        assert_eq!(unique.len(), ids.len(), "{name}: duplicated ids");
        for id in all_ids() {
            assert!(unique.contains(id), "{name}: {id} missing");
        }
        assert_eq!(rep.totals.enabled, ids.len());
        assert_eq!(rep.totals.passed + rep.totals.failed + rep.totals.skipped, ids.len());
    }
}

#[test]
fn skips_state_a_reason_and_failures_a_witness() {
    for name in FAST {
        let rep = run_scenario(&catalog_get(name).unwrap()).unwrap();
        for r in &rep.checks {
            match &r.status {
                Status::Skipped(why) => assert!(
                    why.starts_with("branch: ") || why.starts_with("hypothesis unmet") || why == "not applicable",
                    "{name}: {} skipped with {why:?}",
                    r.id
                ),
                Status::Fail => assert!(r.witness.is_some(), "{name}: {} failed without witness", r.id),
                Status::Pass => {}
            }
        }
        assert!(rep.all_passed(), "{name} has failures");
    }
}

#[test]
fn registry_covers_emitted_ids_and_nothing_else() {
    let mut emitted: HashSet<String> = all_ids().iter().map(|s| s.to_string()).collect();
    for name in FAST {
        let rep = run_scenario(&catalog_get(name).unwrap()).unwrap();
        for r in &rep.checks {
            let def = lookup(&r.id).unwrap_or_else(|| panic!("{} has no registry entry", r.id));
            assert_eq!(r.statement, def.statement);
            emitted.insert(r.id.clone());
        }
    }
    let registered: HashSet<String> = CHECKS.iter().map(|d| d.id.to_string()).collect();
    assert_eq!(registered.len(), CHECKS.len(), "duplicate registry ids");
    let extra: Vec<&String> = registered.difference(&emitted).collect();
    assert!(extra.is_empty(), "registered but never emitted: {extra:?}");
}

#[test]
fn check_selection_limits_the_report() {
    let mut sc = catalog_get("su3-f4").unwrap();
    sc.checks = vec!["rho.*".into(), "action.degree".into()];
    let rep = run_scenario(&sc).unwrap();
    assert!(rep.checks.iter().all(|r| r.id == "action.degree" || r.id.starts_with("rho.")));
    assert_eq!(rep.checks.len(), 6);
    assert_eq!(rep.witt_index_one, "not enabled");
}

#[test]
fn branch_summary_for_the_commutative_catalog_entries() {
    for name in ["su3-f4", "su3-f9", "orth-f2"] {
        let rep = run_scenario(&catalog_get(name).unwrap()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&emit_report(&rep, Format::Machine)).unwrap();
        assert_eq!(json["summary"]["branch"], "commutative", "{name}");
        assert_eq!(json["su_identification"], "skipped: branch: commutative");
    }
}

#[test]
fn su3_f9_is_odd_characteristic_with_a_skewfield() {
    let rep = run_scenario(&catalog_get("su3-f9").unwrap()).unwrap();
    for id in ["ring.skewfield", "f.diagonal-twice-h", "abar.divisibility", "a0.centralizer-equalities"] {
        assert!(rep.record(id).unwrap().passed(), "{id}");
    }
    assert_eq!(rep.summary.dims["|A|"], 27);
}

#[test]
fn catalog_names_and_file_loading() {
    let names: Vec<String> = catalog_list().into_iter().map(|s| s.name).collect();
    assert_eq!(names, ["sl2-f5-quadratic", "su3-f4", "su3-f9", "orth-f2", "su-quat-q", "doubled-su3-f4"]);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/catalog/su3-f4.scn");
    assert_eq!(load(path).unwrap().name, "su3-f4");
    assert!(matches!(load("no-such-scenario"), Err(ScenarioError::Unknown(_))));
}

#[test]
fn parse_errors_name_the_line() {
    let text = include_str!("../catalog/su3-f4.scn").replace("modulus = 1 1 1", "modulus = 1 1 2");
    let line = text.lines().position(|l| l.starts_with("modulus")).unwrap() + 1;
    match parse(&text) {
        Err(ScenarioError::Parse { line: l, .. }) => assert_eq!(l, line),
        other => panic!("expected a parse error, got {:?}", other.map(|s| s.name)),
    }
}
