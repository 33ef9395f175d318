//! JSON report records and CSV number formatting.

use std::collections::BTreeMap;

use extmeans::CheckReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub inconclusive: u64,
    pub worst_margin: Option<f64>,
    /// Non-finite witness entries are written as `null`.
    pub worst_witness: BTreeMap<String, Option<f64>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl From<&CheckReport> for CaseRecord {
    fn from(r: &CheckReport) -> Self {
        CaseRecord {
            id: r.case_id.clone(),
            total: r.total,
            passed: r.passed,
            failed: r.failed,
            inconclusive: r.inconclusive,
            worst_margin: r.worst_margin.filter(|m| m.is_finite()),
            worst_witness: r
                .worst_witness
                .iter()
                .map(|(k, v)| (k.clone(), Some(*v).filter(|v| v.is_finite())))
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

impl From<&CaseRecord> for CheckReport {
    fn from(c: &CaseRecord) -> Self {
        let mut r = CheckReport::new(c.id.clone());
        r.total = c.total;
        r.passed = c.passed;
        r.failed = c.failed;
        r.inconclusive = c.inconclusive;
        r.worst_margin = c.worst_margin;
        r.worst_witness = c
            .worst_witness
            .iter()
            .map(|(k, v)| (k.clone(), v.unwrap_or(f64::NAN)))
            .collect();
        r.notes = c.notes.clone();
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub config_echo: serde_json::Value,
    pub seed: u64,
    pub cases: Vec<CaseRecord>,
    pub timestamp: String,
}

/// Overall status of a set of cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    InconclusiveHeavy,
}

/// Largest tolerated inconclusive fraction in any one case.
pub const INCONCLUSIVE_LIMIT: f64 = 0.05;

pub fn status(cases: &[CheckReport]) -> Status {
    if cases.iter().any(|c| c.failed > 0) {
        Status::Fail
    } else if cases.iter().any(|c| c.inconclusive_fraction() > INCONCLUSIVE_LIMIT) {
        Status::InconclusiveHeavy
    } else {
        Status::Pass
    }
}

/// Scientific notation with 17 significant digits and a signed two-digit
/// exponent, e.g. `-1.2500000000000000e-03`.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let s = format!("{x:.16e}");
    let (mantissa, exp) = s.split_once('e').expect("`e` formatting always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// One line per case for terminal output.
pub fn summary_table(cases: &[CheckReport]) -> String {
    let width = cases.iter().map(|c| c.case_id.len()).max().unwrap_or(4).max(4);
    let mut out = format!(
        "{:<width$}  {:>8}  {:>8}  {:>6}  {:>6}  {:>12}\n",
        "case", "total", "passed", "failed", "inconc", "worst_margin"
    );
    for c in cases {
        let margin = c.worst_margin.map_or_else(|| "-".to_string(), |m| format!("{m:.3e}"));
        out.push_str(&format!(
            "{:<width$}  {:>8}  {:>8}  {:>6}  {:>6}  {:>12}\n",
            c.case_id, c.total, c.passed, c.failed, c.inconclusive, margin
        ));
    }
    out
}
