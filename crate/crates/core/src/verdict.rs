//! Pass/fail outcomes of identity checks, with a first-failure witness.

use std::fmt;

use crate::linalg::Scalar;

/// The first basis tuple on which an identity failed, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl Violation {
    pub fn new(
        clause: impl Into<String>,
        indices: &[usize],
        lhs: Vec<Scalar>,
        rhs: Vec<Scalar>,
    ) -> Self {
        Violation {
            clause: clause.into(),
            indices: indices.to_vec(),
            lhs,
            rhs,
        }
    }

    /// A violation with no evaluated sides, for structural clauses (rank, shape).
    pub fn structural(clause: impl Into<String>, indices: &[usize]) -> Self {
        Violation::new(clause, indices, Vec::new(), Vec::new())
    }
}

fn join(v: &[Scalar]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {:?}: [{}] != [{}]",
            self.clause,
            self.indices,
            join(&self.lhs),
            join(&self.rhs)
        )
    }
}

impl std::error::Error for Violation {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }

    pub fn into_result(self) -> Result<(), Violation> {
        match self {
            Verdict::Pass => Ok(()),
            Verdict::Fail(v) => Err(v),
        }
    }
}

impl From<Result<(), Violation>> for Verdict {
    fn from(r: Result<(), Violation>) -> Self {
        match r {
            Ok(()) => Verdict::Pass,
            Err(v) => Verdict::Fail(v),
        }
    }
}

/// Compares two evaluated sides, producing a violation for `clause` on mismatch.
pub(crate) fn expect_eq(
    clause: &str,
    indices: &[usize],
    lhs: Vec<Scalar>,
    rhs: Vec<Scalar>,
) -> Result<(), Violation> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Violation::new(clause, indices, lhs, rhs))
    }
}
