use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::linalg::{Matrix, Scalar};
use crate::multilinear::{AltMap, DenseMap};
use crate::verdict::{Verdict, Violation};

use super::document::TensorDoc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Indeterminate,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Indeterminate => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// The JSON report printed to stdout.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub status: Status,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub data: BTreeMap<String, Value>,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl Report {
    pub fn new(command: &str, status: Status) -> Self {
        Report {
            status,
            command: command.to_string(),
            clause: None,
            witness: None,
            message: None,
            data: BTreeMap::new(),
        }
    }

    pub fn pass(command: &str) -> Self {
        Report::new(command, Status::Pass)
    }

    pub fn fail(command: &str, v: &Violation) -> Self {
        let mut r = Report::new(command, Status::Fail);
        r.clause = Some(v.clause.clone());
        r.witness = Some(Witness {
            indices: v.indices.clone(),
            lhs: strings(&v.lhs),
            rhs: strings(&v.rhs),
        });
        r.message = Some(v.to_string());
        r
    }

    pub fn from_verdict(command: &str, v: &Verdict) -> Self {
        match v {
            Verdict::Pass => Report::pass(command),
            Verdict::Fail(v) => Report::fail(command, v),
        }
    }

    pub fn indeterminate(command: &str, why: impl Into<String>) -> Self {
        Report::new(command, Status::Indeterminate).message(why)
    }

    pub fn from_error(command: &str, err: &Error) -> Self {
        let structural = |clause: &str| {
            let mut r = Report::fail(command, &Violation::structural(clause, &[]));
            r.message = Some(err.to_string());
            r
        };
        let wrapped = |v: &Violation| {
            let mut r = Report::fail(command, v);
            r.message = Some(err.to_string());
            r
        };
        match err {
            Error::Parse(_)
            | Error::InvalidField(_)
            | Error::DimensionMismatch { .. }
            | Error::FieldMismatch { .. } => {
                Report::new(command, Status::Error).message(err.to_string())
            }
            Error::FieldTooLarge(_) | Error::NotEnumerable => {
                Report::indeterminate(command, err.to_string())
            }
            Error::Violation(v)
            | Error::NotAnEmbeddingTensor(v)
            | Error::InvalidBase(v)
            | Error::NotACrossedModule(v)
            | Error::NotACocycle(v)
            | Error::NotAnExtension(v)
            | Error::NotAutomorphisms(v)
            | Error::NotAnAutomorphism(v)
            | Error::NotAWitness(v)
            | Error::NotCompatible(v)
            | Error::RepresentationMismatch(v) => wrapped(v),
            Error::NotAlternating(idx) => {
                let mut r = structural("alternating");
                if let Some(w) = r.witness.as_mut() {
                    w.indices = idx.clone();
                }
                r
            }
            Error::NotSkeletal => structural("skeletal"),
            Error::NotStrict => structural("strict"),
            Error::NotASection => structural("section"),
            Error::ValueOutsideKernel => structural("kernel"),
            Error::NotSurjective => structural("surjective"),
            Error::NotRestrictable => structural("restrictable"),
            Error::NotAbelian => structural("abelian"),
            Error::NotSplit(_) => structural("split"),
            Error::DifferentAlgebras => structural("algebras"),
            Error::Inconsistent(_) => structural("inconsistent"),
        }
    }

    pub fn message(mut self, m: impl Into<String>) -> Self {
        self.message = Some(m.into());
        self
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.data.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report data serializes"),
        );
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One line for stderr.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::Indeterminate => "INDETERMINATE",
        };
        let mut line = format!("{status} {}", self.command);
        if let Some(c) = &self.clause {
            line.push_str(&format!(" [{c}]"));
        }
        if let Some(m) = &self.message {
            line.push_str(&format!(": {m}"));
        }
        line
    }
}

pub fn matrix_value(m: &Matrix) -> Value {
    json!(TensorDoc::from_matrix(m))
}

pub fn dense_value(m: &DenseMap) -> Value {
    let mut shape = vec![m.dim(); m.arity()];
    shape.push(m.codim());
    json!(TensorDoc::from_scalars(shape, m.entries()))
}

pub fn alt_value(m: &AltMap) -> Value {
    dense_value(&m.to_dense())
}

pub fn action_value(action: &[Matrix]) -> Value {
    Value::Array(action.iter().map(matrix_value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let code = |e: Error| Report::from_error("t", &e).exit_code();
        assert_eq!(code(Error::Parse("x".into())), 2);
        assert_eq!(code(Error::NotEnumerable), 3);
        assert_eq!(code(Error::NotSkeletal), 1);
        let v = Violation::new(
            "Jacobi",
            &[0, 1, 2],
            vec![Field::Rationals.one()],
            vec![Field::Rationals.zero()],
        );
        let r = Report::from_error("t", &Error::Violation(v));
        assert_eq!(r.clause.as_deref(), Some("Jacobi"));
        assert_eq!(r.witness.unwrap().lhs, vec!["1".to_string()]);
    }

    #[test]
    fn optional_fields_are_omitted() {
        let text = Report::pass("check").with("dim", 3).to_json();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v.get("clause").is_none());
        assert_eq!(v["data"]["dim"], 3);
    }
}
