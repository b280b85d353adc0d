//! Structured pass/fail records for identity checks.

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::matrix::RationalMatrix;
use crate::rational::{to_exact_string, Rational};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_exact_string(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedDegenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub id: String,
    /// Human-readable name of the identity under test.
    pub paper_ref: String,
    pub status: Status,
    /// Empty on success; otherwise the first failing index or entry.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, id: impl Into<String>, label: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            paper_ref: label.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, id: impl Into<String>, label: impl Into<String>) {
        self.record(id, label, Status::Pass, "");
    }

    pub fn fail(&mut self, id: impl Into<String>, label: impl Into<String>, detail: impl Into<String>) {
        self.record(id, label, Status::Fail, detail);
    }

    /// Pass when `failure` is `None`, otherwise fail with its text.
    pub fn outcome(&mut self, id: impl Into<String>, label: impl Into<String>, failure: Option<String>) {
        match failure {
            None => self.pass(id, label),
            Some(d) => self.fail(id, label, d),
        }
    }

    /// Record the result of a computation that may have hit a degenerate
    /// denominator.
    pub fn outcome_result(
        &mut self,
        id: impl Into<String>,
        label: impl Into<String>,
        result: crate::error::Result<Option<String>>,
    ) {
        match result {
            Ok(f) => self.outcome(id, label, f),
            Err(e) if e.is_degenerate() => self.record(id, label, Status::SkippedDegenerate, e.to_string()),
            Err(e) => self.fail(id, label, e.to_string()),
        }
    }

    /// Exact matrix equality, reporting the first differing entry.
    pub fn matrices_equal(
        &mut self,
        id: impl Into<String>,
        label: impl Into<String>,
        lhs: &RationalMatrix,
        rhs: &RationalMatrix,
    ) {
        self.outcome(id, label, matrix_mismatch(lhs, rhs));
    }

    /// Zero-matrix check, reporting the first nonzero entry.
    pub fn matrix_zero(&mut self, id: impl Into<String>, label: impl Into<String>, m: &RationalMatrix) {
        let failure = m
            .first_nonzero()
            .map(|(i, j, v)| format!("entry ({i}, {j}) = {}", to_exact_string(&v)));
        self.outcome(id, label, failure);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Turn the report into an error when any check failed.
    pub fn into_result(self) -> crate::error::Result<Self> {
        let failure = self.failures().next().map(|c| Error::Mismatch {
            what: c.id.clone(),
            left: c.detail.clone(),
            right: String::new(),
        });
        match failure {
            None => Ok(self),
            Some(e) => Err(e),
        }
    }
}

/// Location and values of the first entry where two matrices differ.
pub fn matrix_mismatch(lhs: &RationalMatrix, rhs: &RationalMatrix) -> Option<String> {
    if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
        return Some(format!(
            "shape {}x{} vs {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        ));
    }
    lhs.first_difference(rhs).map(|(i, j)| {
        format!(
            "entry ({i}, {j}): {} != {}",
            to_exact_string(&lhs[(i, j)]),
            to_exact_string(&rhs[(i, j)])
        )
    })
}

/// Location of the first index where two vectors differ.
pub fn vector_mismatch(lhs: &[Rational], rhs: &[Rational]) -> Option<String> {
    if lhs.len() != rhs.len() {
        return Some(format!("length {} vs {}", lhs.len(), rhs.len()));
    }
    lhs.iter().zip(rhs).position(|(a, b)| a != b).map(|k| {
        format!(
            "index {k}: {} != {}",
            to_exact_string(&lhs[k]),
            to_exact_string(&rhs[k])
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn mismatch_is_located() {
        let a = RationalMatrix::identity(3);
        let mut b = a.clone();
        b[(2, 1)] = int(5);
        let mut r = VerificationReport::new("t");
        r.matrices_equal("x", "identity", &a, &b);
        assert!(!r.all_passed());
        assert_eq!(r.checks[0].detail, "entry (2, 1): 0 != 5");
    }
}
