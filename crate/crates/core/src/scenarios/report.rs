//! Reports: per-check records and the pipeline summary, rendered as a
//! human-readable table or as JSON.

use serde::Serialize;

use crate::check::{CheckRecord, Status};
use crate::reconstruct::Summary;

use super::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "human" => Ok(Format::Human),
            "machine" => Ok(Format::Machine),
            _ => Err(format!("unknown format {s:?}: expected human or machine")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub enabled: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub description: String,
    pub domain: String,
    pub involution: Option<String>,
    pub instance: String,
    pub summary: Summary,
    pub witt_index_one: String,
    pub su_identification: String,
    pub totals: Totals,
    pub checks: Vec<CheckRecord>,
}

fn verdict(checks: &[CheckRecord], ids: &[&str]) -> String {
    let found: Vec<&CheckRecord> = ids.iter().filter_map(|id| checks.iter().find(|r| r.id == *id)).collect();
    if found.is_empty() {
        return "not enabled".into();
    }
    if let Some(r) = found.iter().find(|r| r.failed()) {
        return format!("fail ({})", r.id);
    }
    if let Some(Status::Skipped(why)) = found.iter().map(|r| &r.status).find(|s| matches!(s, Status::Skipped(_))) {
        return format!("skipped: {why}");
    }
    "pass".into()
}

impl Report {
    pub fn new(sc: &Scenario, domain: String, involution: Option<String>, instance: String, summary: Summary, checks: Vec<CheckRecord>) -> Report {
        let totals = Totals {
            enabled: checks.len(),
            passed: checks.iter().filter(|r| r.passed()).count(),
            failed: checks.iter().filter(|r| r.failed()).count(),
            skipped: checks.iter().filter(|r| r.skipped()).count(),
        };
        Report {
            scenario: sc.name.clone(),
            description: sc.description.clone(),
            domain,
            involution,
            instance,
            witt_index_one: verdict(&checks, &["witt.index-one"]),
            su_identification: verdict(&checks, &["su.alpha-identification", "su.beta-identification"]),
            summary,
            totals,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.id == id)
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Human => human(r),
    }
}

fn human(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("scenario: {}", r.scenario));
    if !r.description.is_empty() {
        line(format!("description: {}", r.description));
    }
    line(format!("domain: {}", r.domain));
    if let Some(i) = &r.involution {
        line(format!("involution: {i}"));
    }
    line(format!("instance: {}", r.instance));
    if !r.summary.action.is_empty() {
        line(format!("action: {}", r.summary.action));
    }
    if let Some(nf) = &r.summary.normal_form {
        line(format!("normal form: {nf}"));
    }
    if let Some(b) = r.summary.branch {
        line(format!("branch: {}", serde_json::to_value(b).expect("serializes").as_str().unwrap_or_default()));
    }
    if !r.summary.dims.is_empty() {
        let dims: Vec<String> = r.summary.dims.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        line(format!("dimensions: {}", dims.join(", ")));
    }
    line(format!("witt index one: {}", r.witt_index_one));
    line(format!("su identification: {}", r.su_identification));
    for n in &r.summary.notes {
        line(format!("note: {n}"));
    }
    let t = &r.totals;
    line(format!("checks: {} enabled, {} pass, {} fail, {} skipped", t.enabled, t.passed, t.failed, t.skipped));
    for c in &r.checks {
        let tag = match &c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIP",
        };
        line(format!("{tag}  {}{}", c.id, c.mode.suffix()));
        if let Status::Skipped(why) = &c.status {
            line(format!("      reason: {why}"));
        }
        if let Some(w) = &c.witness {
            let label = if c.failed() { "witness" } else { "info" };
            for (i, l) in w.lines().enumerate() {
                line(format!("      {}{l}", if i == 0 { format!("{label}: ") } else { String::new() }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Mode;

    fn scenario() -> Scenario {
        crate::scenarios::catalog_get("su3-f4").unwrap()
    }

    #[test]
    fn empty_check_list_gives_header_only() {
        let r = Report::new(&scenario(), "F_2".into(), None, "x".into(), Summary::default(), vec![]);
        let text = emit_report(&r, Format::Human);
        assert!(text.ends_with("checks: 0 enabled, 0 pass, 0 fail, 0 skipped\n"), "{text}");
        assert!(!text.contains("PASS"));
        assert_eq!(r.witt_index_one, "not enabled");
    }

    #[test]
    fn sampled_suffix_and_witness_lines() {
        let recs = vec![
            CheckRecord::pass("f.square", Mode::Sampled(24)),
            CheckRecord::fail("f.commutator", Mode::Exhaustive, "f(a,b) = [[1,0],[0,1]]".into()),
        ];
        let r = Report::new(&scenario(), "F_2".into(), None, "x".into(), Summary::default(), recs);
        let text = emit_report(&r, Format::Human);
        assert!(text.contains("PASS  f.square (sampled N=24)\n"));
        assert!(text.contains("FAIL  f.commutator\n      witness: f(a,b) = [[1,0],[0,1]]\n"));
        assert!(!r.all_passed());
        let json: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Machine)).unwrap();
        assert_eq!(json["checks"][0]["mode"], serde_json::json!({"kind": "sampled", "n": 24}));
        assert_eq!(json["checks"][1]["status"], "fail");
        assert_eq!(json["totals"]["failed"], 1);
    }
}
