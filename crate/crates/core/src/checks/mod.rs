//! The verification suite: every identity about dual matrices bound to a
//! named, executable check, with text and JSON-lines reports.

mod registry;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use registry::{Check, CHECKS};

/// Seed used by the fuzzing check unless one is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The computed truth differs from the stated form in a way the check
    /// characterizes; not a failure.
    Anomaly(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        *self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("fail"),
            Status::Anomaly(d) => write!(f, "anomaly({d})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub paper_ref: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("max_n must be at least 1")]
    BadMaxN,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_n: u32,
    /// Check ids to run; `None` runs everything.
    pub only: Option<Vec<String>>,
    pub seed: u64,
    /// Fill `elapsed_ms`. Off by default so reports are byte-stable.
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 6,
            only: None,
            seed: DEFAULT_SEED,
            timing: false,
        }
    }
}

/// Runs the selected checks in parallel and returns reports ordered by id.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    if config.max_n == 0 {
        return Err(SuiteError::BadMaxN);
    }
    let selected: Vec<&Check> = match &config.only {
        None => CHECKS.iter().collect(),
        Some(ids) => {
            let mut out = Vec::new();
            for id in ids {
                let check = CHECKS
                    .iter()
                    .find(|c| c.id.eq_ignore_ascii_case(id.trim()))
                    .ok_or_else(|| SuiteError::UnknownCheck(id.clone()))?;
                if !out.iter().any(|c: &&Check| c.id == check.id) {
                    out.push(check);
                }
            }
            out.sort_by_key(|c| c.id);
            out
        }
    };
    Ok(selected
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let (status, mut witness, params) = (check.run)(config);
            if status.is_fail() && witness.is_none() {
                witness = Some("no witness recorded".into());
            }
            let elapsed = config.timing.then(|| start.elapsed().as_millis() as u64);
            report(check, params, status, witness, elapsed)
        })
        .collect())
}

fn report(
    check: &Check,
    params: BTreeMap<String, serde_json::Value>,
    status: Status,
    witness: Option<String>,
    elapsed_ms: Option<u64>,
) -> CheckReport {
    CheckReport {
        check_id: check.id.to_string(),
        paper_ref: check.statement.to_string(),
        params,
        status,
        witness,
        elapsed_ms,
    }
}

/// True when no report has status `fail`.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    !reports.iter().any(|r| r.status.is_fail())
}

/// JSON lines, one report per line.
pub fn render_machine(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}

/// Human-readable report.
pub fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let name = CHECKS
            .iter()
            .find(|c| c.id == r.check_id)
            .map_or("", |c| c.name);
        out.push_str(&format!("{} {:<28} {}\n", r.check_id, name, r.status));
        out.push_str(&format!("    {}\n", r.paper_ref));
        if !r.params.is_empty() {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("    params: {}\n", params.join(" ")));
        }
        if let Some(w) = &r.witness {
            out.push_str(&format!("    witness: {w}\n"));
        }
        if let Some(ms) = r.elapsed_ms {
            out.push_str(&format!("    elapsed: {ms} ms\n"));
        }
    }
    let fails = reports.iter().filter(|r| r.status.is_fail()).count();
    let anomalies = reports
        .iter()
        .filter(|r| matches!(r.status, Status::Anomaly(_)))
        .count();
    out.push_str(&format!(
        "{} checks: {} pass, {} fail, {} anomaly\n",
        reports.len(),
        reports.len() - fails - anomalies,
        fails,
        anomalies
    ));
    out
}
