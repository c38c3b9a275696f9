//! Per-check pass/fail bookkeeping with counterexample payloads.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrix::SymMatrix;
use crate::order::OrderTag;

/// Failures kept with full witnesses per check id; later ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 8;

/// Result of evaluating one check on one witness list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Pass,
    /// Violated, with the size of the violation.
    Fail(f64),
    /// The check's hypothesis does not hold for this witness.
    NotApplicable,
}

impl Outcome {
    /// `Pass` if `magnitude ≤ limit`, else `Fail(magnitude)`.
    pub fn within(magnitude: f64, limit: f64) -> Self {
        if magnitude <= limit {
            Outcome::Pass
        } else {
            Outcome::Fail(magnitude)
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(1.0)
        }
    }

    /// Keeps the worse of two outcomes; `NotApplicable` loses to anything.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail(x), Outcome::Fail(y)) => Outcome::Fail(x.max(y)),
            (f @ Outcome::Fail(_), _) | (_, f @ Outcome::Fail(_)) => f,
            (Outcome::Pass, _) | (_, Outcome::Pass) => Outcome::Pass,
            _ => Outcome::NotApplicable,
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub evaluated: usize,
    pub not_applicable: usize,
    pub violations: usize,
    pub max_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub magnitude: f64,
    pub witnesses: Vec<SymMatrix>,
    /// Set when the check aborted with an error instead of returning a verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub order: OrderTag,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: BTreeMap<String, CheckSummary>,
    pub failures: Vec<Failure>,
    pub elapsed_secs: f64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, order: OrderTag, dim: usize, trials: usize, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            order,
            dim,
            trials,
            seed,
            checks: BTreeMap::new(),
            failures: Vec::new(),
            elapsed_secs: 0.0,
        }
    }

    /// Records one evaluation of `check`. `witnesses` is only invoked on failure.
    pub fn record(&mut self, check: &str, outcome: Outcome, witnesses: impl FnOnce() -> Vec<SymMatrix>) {
        self.record_inner(check, outcome, None, witnesses);
    }

    /// Records a check that failed with an error; counted as a violation of size 1.
    pub fn record_error(&mut self, check: &str, error: &crate::error::Error, witnesses: impl FnOnce() -> Vec<SymMatrix>) {
        self.record_inner(check, Outcome::Fail(1.0), Some(error.to_string()), witnesses);
    }

    fn record_inner(
        &mut self,
        check: &str,
        outcome: Outcome,
        error: Option<String>,
        witnesses: impl FnOnce() -> Vec<SymMatrix>,
    ) {
        let summary = self.checks.entry(check.to_string()).or_default();
        match outcome {
            Outcome::Pass => summary.evaluated += 1,
            Outcome::NotApplicable => summary.not_applicable += 1,
            Outcome::Fail(magnitude) => {
                // JSON has no infinities
                let magnitude = if magnitude.is_finite() { magnitude } else { f64::MAX };
                summary.evaluated += 1;
                summary.violations += 1;
                summary.max_violation = summary.max_violation.max(magnitude);
                if summary.violations <= MAX_RECORDED_FAILURES {
                    self.failures.push(Failure {
                        check: check.to_string(),
                        magnitude,
                        witnesses: witnesses(),
                        error,
                    });
                }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_violations(&self) -> usize {
        self.checks.values().map(|c| c.violations).sum()
    }

    /// Folds `other` into `self`. Counts add, maxima combine, and failures are
    /// kept sorted so the result does not depend on merge order.
    pub fn merge(&mut self, other: VerificationReport) {
        self.trials += other.trials;
        self.elapsed_secs += other.elapsed_secs;
        for (id, theirs) in other.checks {
            let ours = self.checks.entry(id).or_default();
            ours.evaluated += theirs.evaluated;
            ours.not_applicable += theirs.not_applicable;
            ours.violations += theirs.violations;
            ours.max_violation = ours.max_violation.max(theirs.max_violation);
        }
        self.failures.extend(other.failures);
        self.failures.sort_by(|a, b| {
            a.check
                .cmp(&b.check)
                .then(b.magnitude.total_cmp(&a.magnitude))
                .then_with(|| witness_key(a).cmp(&witness_key(b)))
        });
    }

    /// The report with elapsed time zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_secs: 0.0, ..self.clone() }
    }
}

fn witness_key(f: &Failure) -> Vec<u64> {
    f.witnesses.iter().flat_map(|w| w.as_slice().iter().map(|x| x.to_bits())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report_with(check: &str, outcomes: &[Outcome]) -> VerificationReport {
        let mut r = VerificationReport::new("t", OrderTag::Spectral, 2, 1, 0);
        for (k, o) in outcomes.iter().enumerate() {
            r.record(check, *o, || vec![SymMatrix::scalar(2, k as f64)]);
        }
        r
    }

    #[test]
    fn failures_iff_not_passed() {
        let r = report_with("x", &[Outcome::Pass, Outcome::NotApplicable]);
        assert!(r.passed());
        assert_eq!(r.checks["x"].evaluated, 1);
        assert_eq!(r.checks["x"].not_applicable, 1);
        let r = report_with("x", &[Outcome::Pass, Outcome::Fail(0.5)]);
        assert!(!r.passed());
        assert_eq!(r.failures[0].witnesses, vec![SymMatrix::scalar(2, 1.0)]);
    }

    #[test]
    fn merge_is_order_independent() {
        let a = report_with("x", &[Outcome::Fail(0.1), Outcome::Pass]);
        let b = report_with("y", &[Outcome::Fail(2.0)]);
        let c = report_with("x", &[Outcome::Fail(0.3)]);
        let mut left = a.clone();
        left.merge(b.clone());
        left.merge(c.clone());
        let mut right = c;
        let mut bc = b;
        bc.merge(a);
        right.merge(bc);
        assert_eq!(left, right);
        assert_eq!(left.total_violations(), 3);
    }

    #[test]
    fn outcome_combination() {
        assert_eq!(Outcome::Pass.and(Outcome::Fail(1.0)), Outcome::Fail(1.0));
        assert_eq!(Outcome::Fail(1.0).and(Outcome::Fail(3.0)), Outcome::Fail(3.0));
        assert_eq!(Outcome::NotApplicable.and(Outcome::Pass), Outcome::Pass);
        assert_eq!(Outcome::NotApplicable.and(Outcome::NotApplicable), Outcome::NotApplicable);
    }

    #[test]
    fn serde_round_trip() {
        let r = report_with("x", &[Outcome::Fail(0.25)]);
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
