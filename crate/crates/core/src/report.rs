//! Pass/fail bookkeeping shared by the convexity and inequality harnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Named inputs (and derived quantities) of one probed sample.
pub type Witness = BTreeMap<String, f64>;

pub fn witness<const N: usize>(fields: [(&str, f64); N]) -> Witness {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Outcome counts of one check, with the sample closest to (or furthest past)
/// the boundary. Margins are signed so that `≥ 0` means satisfied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub case_id: String,
    pub total: u64,
    pub passed: u64,
    pub inconclusive: u64,
    pub failed: u64,
    pub worst_margin: Option<f64>,
    pub worst_witness: Witness,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl CheckReport {
    pub fn new(case_id: impl Into<String>) -> Self {
        CheckReport {
            case_id: case_id.into(),
            total: 0,
            passed: 0,
            inconclusive: 0,
            failed: 0,
            worst_margin: None,
            worst_witness: Witness::new(),
            notes: String::new(),
        }
    }

    /// Records one sample. Inconclusive samples never move the worst margin.
    pub fn record(&mut self, outcome: Outcome, margin: f64, witness: impl FnOnce() -> Witness) {
        self.total += 1;
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Fail => self.failed += 1,
            Outcome::Inconclusive => {
                self.inconclusive += 1;
                return;
            }
        }
        if self.worst_margin.is_none_or(|w| margin < w) {
            self.worst_margin = Some(margin);
            self.worst_witness = witness();
        }
    }

    /// Records a sample whose outcome follows from `margin ≥ -slack`.
    pub fn record_margin(&mut self, margin: f64, slack: f64, witness: impl FnOnce() -> Witness) {
        let outcome = if margin >= -slack { Outcome::Pass } else { Outcome::Fail };
        self.record(outcome, margin, witness);
    }

    pub fn note(&mut self, text: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
    }

    /// Combines two reports on the same case: counts add, the worst margin is
    /// the minimum (ties keep the left witness), notes concatenate.
    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.total += other.total;
        self.passed += other.passed;
        self.inconclusive += other.inconclusive;
        self.failed += other.failed;
        if let Some(m) = other.worst_margin {
            if self.worst_margin.is_none_or(|w| m < w) {
                self.worst_margin = Some(m);
                self.worst_witness = other.worst_witness;
            }
        }
        if !other.notes.is_empty() {
            self.note(other.notes);
        }
        self
    }

    pub fn is_clean(&self) -> bool {
        self.failed == 0
    }

    pub fn inconclusive_fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.inconclusive as f64 / self.total as f64
        }
    }
}

/// Observed range of a tracked ratio over a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupremumRecord {
    pub observed_sup: f64,
    pub observed_inf: f64,
    pub arg_sup: Witness,
    pub samples: u64,
}

impl Default for SupremumRecord {
    fn default() -> Self {
        SupremumRecord {
            observed_sup: f64::NEG_INFINITY,
            observed_inf: f64::INFINITY,
            arg_sup: Witness::new(),
            samples: 0,
        }
    }
}

impl SupremumRecord {
    pub fn observe(&mut self, value: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        if value > self.observed_sup {
            self.observed_sup = value;
            self.arg_sup = witness();
        }
        self.observed_inf = self.observed_inf.min(value);
    }

    pub fn merge(mut self, other: SupremumRecord) -> SupremumRecord {
        self.samples += other.samples;
        self.observed_inf = self.observed_inf.min(other.observed_inf);
        if other.observed_sup > self.observed_sup {
            self.observed_sup = other.observed_sup;
            self.arg_sup = other.arg_sup;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(id: &str, margins: &[f64]) -> CheckReport {
        let mut r = CheckReport::new(id);
        for (i, &m) in margins.iter().enumerate() {
            r.record_margin(m, 1e-12, || witness([("i", i as f64)]));
        }
        r
    }

    #[test]
    fn counts_and_worst() {
        let r = report("x", &[0.5, -1.0, 0.1]);
        assert_eq!((r.total, r.passed, r.failed), (3, 2, 1));
        assert_eq!(r.worst_margin, Some(-1.0));
        assert_eq!(r.worst_witness["i"], 1.0);
        assert_eq!(r.total, r.passed + r.failed + r.inconclusive);
    }

    #[test]
    fn merge_is_associative() {
        let (a, b, c) = (report("x", &[0.3]), report("x", &[0.1, 0.7]), report("x", &[-0.2]));
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        assert_eq!(left, right);
        assert_eq!(left.worst_margin, Some(-0.2));
    }

    #[test]
    fn inconclusive_does_not_touch_margin() {
        let mut r = CheckReport::new("x");
        r.record(Outcome::Inconclusive, -5.0, Witness::new);
        assert_eq!(r.worst_margin, None);
        assert_eq!(r.inconclusive_fraction(), 1.0);
    }

    #[test]
    fn json_round_trip() {
        let r = report("x", &[0.25]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&s).unwrap(), r);
    }

    #[test]
    fn supremum_tracking() {
        let mut s = SupremumRecord::default();
        for (i, v) in [1.0, 1.04, 1.01].into_iter().enumerate() {
            s.observe(v, || witness([("b", i as f64)]));
        }
        assert_eq!((s.observed_inf, s.observed_sup, s.samples), (1.0, 1.04, 3));
        assert_eq!(s.arg_sup["b"], 1.0);
    }
}
