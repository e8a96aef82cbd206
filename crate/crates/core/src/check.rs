//! Check records shared by every verification stage.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled(usize),
}

impl Mode {
    pub fn for_count(finite: bool, n: usize) -> Mode {
        if finite {
            Mode::Exhaustive
        } else {
            Mode::Sampled(n)
        }
    }

    pub fn suffix(&self) -> String {
        match self {
            Mode::Exhaustive => String::new(),
            Mode::Sampled(n) => format!(" (sampled N={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub statement: String,
    pub mode: Mode,
    #[serde(flatten)]
    pub status: Status,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn new(id: &str, mode: Mode, status: Status, witness: Option<String>) -> CheckRecord {
        let statement = crate::catalog_checks::lookup(id).map_or_else(|| id.to_string(), |d| d.statement.to_string());
        CheckRecord { id: id.to_string(), statement, mode, status, witness }
    }

    pub fn pass(id: &str, mode: Mode) -> CheckRecord {
        CheckRecord::new(id, mode, Status::Pass, None)
    }

    pub fn pass_with(id: &str, mode: Mode, info: String) -> CheckRecord {
        CheckRecord::new(id, mode, Status::Pass, Some(info))
    }

    pub fn fail(id: &str, mode: Mode, witness: String) -> CheckRecord {
        CheckRecord::new(id, mode, Status::Fail, Some(witness))
    }

    pub fn skip(id: &str, reason: impl Into<String>) -> CheckRecord {
        CheckRecord::new(id, Mode::Exhaustive, Status::Skipped(reason.into()), None)
    }

    pub fn from_result(id: &str, mode: Mode, r: Result<(), String>) -> CheckRecord {
        match r {
            Ok(()) => CheckRecord::pass(id, mode),
            Err(w) => CheckRecord::fail(id, mode, w),
        }
    }

    pub fn from_info(id: &str, mode: Mode, r: Result<String, String>) -> CheckRecord {
        match r {
            Ok(info) => CheckRecord::pass_with(id, mode, info),
            Err(w) => CheckRecord::fail(id, mode, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn skipped(&self) -> bool {
        matches!(self.status, Status::Skipped(_))
    }
}

/// `Ok(())` when `cond` holds, otherwise the lazily built witness.
pub fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}
