//! Pass/fail records produced by every verifier.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, Rational};
use crate::series::GradedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The first coefficient (or polynomial component) where two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Mismatch {
    pub fn new(exponent: i64, lhs: &Rational, rhs: &Rational) -> Self {
        Self { exponent, lhs: format_rational(lhs), rhs: format_rational(rhs), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub order: i64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn pass(identity: impl Into<String>, order: i64) -> Self {
        Self { identity: identity.into(), order, status: Status::Pass, first_mismatch: None, elapsed_ms: 0 }
    }

    pub fn fail(identity: impl Into<String>, order: i64, mismatch: Mismatch) -> Self {
        Self {
            identity: identity.into(),
            order,
            status: Status::Fail,
            first_mismatch: Some(mismatch),
            elapsed_ms: 0,
        }
    }

    pub fn skipped(identity: impl Into<String>, order: i64) -> Self {
        Self { identity: identity.into(), order, status: Status::Skipped, first_mismatch: None, elapsed_ms: 0 }
    }

    pub fn from_outcome(identity: impl Into<String>, order: i64, outcome: Option<Mismatch>) -> Self {
        match outcome {
            None => Self::pass(identity, order),
            Some(m) => Self::fail(identity, order, m),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn mismatch_exponent(&self) -> Option<i64> {
        self.first_mismatch.as_ref().map(|m| m.exponent)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Runs `f` and stamps the wall-clock time onto the report it returns.
pub fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = Instant::now();
    let mut report = f();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Compares `count` consecutive coefficients starting at exponent `from`,
/// walking toward each series' horizon.
///
/// Panics if either side is not known that far: a verifier asking for more
/// orders than it computed is a bug, not a failed identity.
pub fn compare_series(lhs: &GradedSeries, rhs: &GradedSeries, from: i64, count: usize) -> Option<Mismatch> {
    assert_eq!(lhs.direction(), rhs.direction(), "compared series must share a direction");
    for e in lhs.exponents_from(from, count) {
        let a = lhs.coeff(e).unwrap_or_else(|| panic!("lhs unknown at z^{e} (horizon {})", lhs.horizon()));
        let b = rhs.coeff(e).unwrap_or_else(|| panic!("rhs unknown at z^{e} (horizon {})", rhs.horizon()));
        if a != b {
            return Some(Mismatch::new(e, &a, &b));
        }
    }
    None
}

/// Compares two coefficient lists indexed from `first_index`.
pub fn compare_lists(lhs: &[Rational], rhs: &[Rational], first_index: i64) -> Option<Mismatch> {
    assert_eq!(lhs.len(), rhs.len(), "compared lists must have equal length");
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| Mismatch::new(first_index + i as i64, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::series::Direction;

    #[test]
    fn json_shape() {
        let r = VerificationReport::pass("iden", 40);
        assert_eq!(r.to_json_line(), r#"{"identity":"iden","order":40,"status":"PASS","elapsed_ms":0}"#);
        let f = VerificationReport::fail("iden", 3, Mismatch::new(-2, &rat(1, 3), &int(0)));
        let v: serde_json::Value = serde_json::from_str(&f.to_json_line()).unwrap();
        assert_eq!(v["status"], "FAIL");
        assert_eq!(v["first_mismatch"]["exponent"], -2);
        assert_eq!(v["first_mismatch"]["lhs"], "1/3");
        assert_eq!(v["first_mismatch"]["rhs"], "0");
    }

    #[test]
    fn compare_walks_toward_horizon() {
        let a = GradedSeries::from_terms(Direction::Descending, [(1, int(1)), (-1, int(2))], -5);
        let b = GradedSeries::from_terms(Direction::Descending, [(1, int(1)), (-1, int(3))], -5);
        let m = compare_series(&a, &b, 1, 5).unwrap();
        assert_eq!(m.exponent, -1);
        assert!(compare_series(&a, &b, 1, 2).is_none());
    }

    #[test]
    #[should_panic(expected = "unknown")]
    fn compare_beyond_horizon_panics() {
        let a = GradedSeries::one(Direction::Ascending, 2);
        compare_series(&a, &a, 0, 3);
    }
}
