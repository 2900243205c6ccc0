use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::extensions::{AutomorphismPair, ExtensionData, NonAbelianCocycle};
use crate::homotopy::{CrossedModule, HomotopyAveraging, TwoTermLinf};
use crate::lie::{AveragingLieAlgebra, LieAlgebra, Representation};
use crate::linalg::{Field, Matrix, Scalar, Tensor};
use crate::multilinear::{AltMap, DenseMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    LieAlgebra,
    AveragingLieAlgebra,
    Representation,
    Cochain,
    NonabelianCocycle,
    Extension,
    AutomorphismPair,
    TwoTerm,
    CrossedModule,
}

/// A named tensor: row-major scalar strings with an explicit shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDoc {
    pub shape: Vec<usize>,
    pub data: Vec<String>,
}

impl TensorDoc {
    pub fn from_scalars(shape: Vec<usize>, data: &[Scalar]) -> Self {
        TensorDoc {
            shape,
            data: data.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        TensorDoc::from_scalars(vec![m.rows(), m.cols()], m.entries())
    }
}

/// The on-disk form of every object kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub kind: Kind,
    pub field: String,
    pub tensors: BTreeMap<String, TensorDoc>,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Document {
    pub fn new(kind: Kind, field: Field) -> Self {
        Document {
            kind,
            field: field.to_string(),
            tensors: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn field(&self) -> Result<Field> {
        self.field.parse()
    }

    /// Parses every scalar and checks every shape against its data length.
    pub fn verify_scalars(&self) -> Result<()> {
        let f = self.field()?;
        for name in self.tensors.keys() {
            self.scalars(name, f)?;
        }
        Ok(())
    }

    fn put(&mut self, name: &str, t: TensorDoc) {
        self.tensors.insert(name.to_string(), t);
    }

    fn put_tensor(&mut self, name: &str, t: &Tensor) {
        self.put(
            name,
            TensorDoc::from_scalars(t.shape().to_vec(), t.entries()),
        );
    }

    fn put_matrix(&mut self, name: &str, m: &Matrix) {
        self.put(name, TensorDoc::from_matrix(m));
    }

    fn put_action(&mut self, name: &str, action: &[Matrix], rows: usize, cols: usize) {
        let data: Vec<Scalar> = action.iter().flat_map(|m| m.entries().to_vec()).collect();
        self.put(
            name,
            TensorDoc::from_scalars(vec![action.len(), rows, cols], &data),
        );
    }

    fn put_dense(&mut self, name: &str, m: &DenseMap) {
        let mut shape = vec![m.dim(); m.arity()];
        shape.push(m.codim());
        self.put(name, TensorDoc::from_scalars(shape, m.entries()));
    }

    fn put_alt(&mut self, name: &str, m: &AltMap) {
        self.put_dense(name, &m.to_dense());
    }

    fn raw(&self, name: &str) -> Result<&TensorDoc> {
        self.tensors
            .get(name)
            .ok_or_else(|| parse_error(format!("missing tensor `{name}`")))
    }

    fn scalars(&self, name: &str, f: Field) -> Result<(Vec<usize>, Vec<Scalar>)> {
        let t = self.raw(name)?;
        let expected: usize = t.shape.iter().product();
        if expected != t.data.len() {
            return Err(parse_error(format!(
                "tensor `{name}`: shape {:?} needs {expected} entries, found {}",
                t.shape,
                t.data.len()
            )));
        }
        let data = t
            .data
            .iter()
            .enumerate()
            .map(|(k, s)| {
                f.parse_scalar(s)
                    .map_err(|e| parse_error(format!("tensor `{name}`, entry {k}: {e}")))
            })
            .collect::<Result<_>>()?;
        Ok((t.shape.clone(), data))
    }

    fn shaped(&self, name: &str, f: Field, rank: usize) -> Result<(Vec<usize>, Vec<Scalar>)> {
        let (shape, data) = self.scalars(name, f)?;
        if shape.len() != rank {
            return Err(parse_error(format!(
                "tensor `{name}`: expected {rank} axes, found {}",
                shape.len()
            )));
        }
        Ok((shape, data))
    }

    fn tensor(&self, name: &str, f: Field, rank: usize) -> Result<Tensor> {
        let (shape, data) = self.shaped(name, f, rank)?;
        Ok(Tensor::from_vec(f, &shape, data))
    }

    fn matrix(&self, name: &str, f: Field) -> Result<Matrix> {
        let (shape, data) = self.shaped(name, f, 2)?;
        Ok(Matrix::from_vec(f, shape[0], shape[1], data))
    }

    fn action(&self, name: &str, f: Field) -> Result<Vec<Matrix>> {
        let (shape, data) = self.shaped(name, f, 3)?;
        let block = shape[1] * shape[2];
        Ok((0..shape[0])
            .map(|x| {
                Matrix::from_vec(
                    f,
                    shape[1],
                    shape[2],
                    data[x * block..(x + 1) * block].to_vec(),
                )
            })
            .collect())
    }

    fn dense(&self, name: &str, f: Field) -> Result<DenseMap> {
        let (shape, data) = self.scalars(name, f)?;
        let Some((&codim, inputs)) = shape.split_last() else {
            return Err(parse_error(format!("tensor `{name}` has no axes")));
        };
        let dim = inputs.first().copied().unwrap_or(0);
        if inputs.iter().any(|&d| d != dim) {
            return Err(parse_error(format!(
                "tensor `{name}`: input axes differ in length {inputs:?}"
            )));
        }
        Ok(DenseMap::from_vec(f, inputs.len(), dim, codim, data))
    }

    fn alt(&self, name: &str, f: Field) -> Result<AltMap> {
        self.dense(name, f)?
            .to_alternating()
            .map_err(Error::NotAlternating)
    }

    fn lie(&self, name: &str, f: Field) -> Result<LieAlgebra> {
        let t = self.tensor(name, f, 3)?;
        LieAlgebra::new(f, t.shape()[0], t)
    }

    fn averaging(&self, bracket: &str, op: &str, f: Field) -> Result<AveragingLieAlgebra> {
        AveragingLieAlgebra::new(self.lie(bracket, f)?, self.matrix(op, f)?)
    }

    fn representation(&self, f: Field) -> Result<Representation> {
        let base = self.averaging("bracket", "P", f)?;
        let q = self.matrix("Q", f)?;
        Representation::new(base, q.rows(), self.action("action", f)?, q)
    }
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    LieAlgebra(LieAlgebra),
    AveragingLieAlgebra(AveragingLieAlgebra),
    Representation(Representation),
    Cochain {
        representation: Representation,
        cochain: Cochain,
    },
    Cocycle(NonAbelianCocycle),
    Extension(ExtensionData),
    Pair(AutomorphismPair),
    TwoTerm {
        structure: TwoTermLinf,
        operator: Option<HomotopyAveraging>,
    },
    Crossed(CrossedModule),
}

impl Object {
    /// Builds the object; algebra-level validation (Jacobi, averaging,
    /// exactness) happens here and surfaces as a violation error.
    pub fn from_document(doc: &Document) -> Result<Object> {
        let f = doc.field()?;
        Ok(match doc.kind {
            Kind::LieAlgebra => Object::LieAlgebra(doc.lie("bracket", f)?),
            Kind::AveragingLieAlgebra => {
                Object::AveragingLieAlgebra(doc.averaging("bracket", "P", f)?)
            }
            Kind::Representation => Object::Representation(doc.representation(f)?),
            Kind::Cochain => {
                let representation = doc.representation(f)?;
                let fmap = doc.alt("f", f)?;
                let theta = if doc.tensors.contains_key("theta") {
                    Some(doc.dense("theta", f)?)
                } else {
                    None
                };
                let cochain = Cochain::new(fmap.arity(), fmap, theta)?;
                if cochain.gdim() != representation.base().dim()
                    || cochain.vdim() != representation.vdim()
                {
                    return Err(Error::DimensionMismatch {
                        what: "cochain".into(),
                        expected: format!(
                            "maps from dim {} to dim {}",
                            representation.base().dim(),
                            representation.vdim()
                        ),
                        found: format!(
                            "maps from dim {} to dim {}",
                            cochain.gdim(),
                            cochain.vdim()
                        ),
                    });
                }
                Object::Cochain {
                    representation,
                    cochain,
                }
            }
            Kind::NonabelianCocycle => Object::Cocycle(NonAbelianCocycle::new(
                doc.averaging("bracket", "P", f)?,
                doc.averaging("h_bracket", "Q", f)?,
                doc.alt("chi", f)?,
                doc.action("psi", f)?,
                doc.matrix("Phi", f)?,
            )?),
            Kind::Extension => {
                let s = if doc.tensors.contains_key("s") {
                    Some(doc.matrix("s", f)?)
                } else {
                    None
                };
                Object::Extension(ExtensionData::new(
                    doc.averaging("bracket", "P", f)?,
                    doc.averaging("h_bracket", "Q", f)?,
                    doc.averaging("e_bracket", "U", f)?,
                    doc.matrix("i", f)?,
                    doc.matrix("p", f)?,
                    s,
                )?)
            }
            Kind::AutomorphismPair => Object::Pair(AutomorphismPair {
                beta: doc.matrix("beta", f)?,
                alpha: doc.matrix("alpha", f)?,
            }),
            Kind::TwoTerm => {
                let structure = TwoTermLinf::new(
                    doc.matrix("d", f)?,
                    doc.tensor("l2_00", f, 3)?,
                    doc.action("l2_01", f)?,
                    doc.alt("l3", f)?,
                )?;
                let operator = if doc.tensors.contains_key("P0") {
                    Some(HomotopyAveraging {
                        p0: doc.matrix("P0", f)?,
                        p1: doc.matrix("P1", f)?,
                        p2: doc.alt("P2", f)?,
                    })
                } else {
                    None
                };
                Object::TwoTerm {
                    structure,
                    operator,
                }
            }
            Kind::CrossedModule => Object::Crossed(CrossedModule::new(
                doc.averaging("g1_bracket", "P1", f)?,
                doc.averaging("g0_bracket", "P0", f)?,
                doc.matrix("d", f)?,
                doc.action("rho", f)?,
            )?),
        })
    }

    pub fn to_document(&self) -> Document {
        match self {
            Object::LieAlgebra(g) => {
                let mut d = Document::new(Kind::LieAlgebra, g.field());
                d.put_tensor("bracket", g.structure_constants());
                d
            }
            Object::AveragingLieAlgebra(a) => {
                let mut d = Document::new(Kind::AveragingLieAlgebra, a.field());
                put_averaging(&mut d, "bracket", "P", a);
                d
            }
            Object::Representation(r) => {
                let mut d = Document::new(Kind::Representation, r.field());
                put_representation(&mut d, r);
                d
            }
            Object::Cochain {
                representation,
                cochain,
            } => {
                let mut d = Document::new(Kind::Cochain, representation.field());
                put_representation(&mut d, representation);
                d.put_alt("f", cochain.f());
                if let Some(t) = cochain.theta() {
                    d.put_dense("theta", t);
                }
                d
            }
            Object::Cocycle(c) => {
                let mut d = Document::new(Kind::NonabelianCocycle, c.field());
                put_averaging(&mut d, "bracket", "P", &c.base);
                put_averaging(&mut d, "h_bracket", "Q", &c.coef);
                d.put_alt("chi", &c.chi);
                d.put_action("psi", &c.psi, c.hdim(), c.hdim());
                d.put_matrix("Phi", &c.phi);
                d
            }
            Object::Extension(e) => {
                let mut d = Document::new(Kind::Extension, e.field());
                put_averaging(&mut d, "bracket", "P", e.base());
                put_averaging(&mut d, "h_bracket", "Q", e.coef());
                put_averaging(&mut d, "e_bracket", "U", e.total());
                d.put_matrix("i", e.i());
                d.put_matrix("p", e.p());
                if let Some(s) = e.section() {
                    d.put_matrix("s", s);
                }
                d
            }
            Object::Pair(pair) => {
                let mut d = Document::new(Kind::AutomorphismPair, pair.alpha.field());
                d.put_matrix("beta", &pair.beta);
                d.put_matrix("alpha", &pair.alpha);
                d
            }
            Object::TwoTerm {
                structure: t,
                operator,
            } => {
                let mut d = Document::new(Kind::TwoTerm, t.field);
                d.put_matrix("d", &t.d);
                d.put_tensor("l2_00", &t.l2_00);
                d.put_action("l2_01", &t.l2_01, t.n1, t.n1);
                d.put_alt("l3", &t.l3);
                if let Some(p) = operator {
                    d.put_matrix("P0", &p.p0);
                    d.put_matrix("P1", &p.p1);
                    d.put_alt("P2", &p.p2);
                }
                d
            }
            Object::Crossed(c) => {
                let mut d = Document::new(Kind::CrossedModule, c.g0.field());
                put_averaging(&mut d, "g1_bracket", "P1", &c.g1);
                put_averaging(&mut d, "g0_bracket", "P0", &c.g0);
                d.put_matrix("d", &c.d);
                d.put_action("rho", &c.rho, c.g1.dim(), c.g1.dim());
                d
            }
        }
    }
}

fn put_averaging(d: &mut Document, bracket: &str, op: &str, a: &AveragingLieAlgebra) {
    d.put_tensor(bracket, a.algebra().structure_constants());
    d.put_matrix(op, a.op());
}

fn put_representation(d: &mut Document, r: &Representation) {
    put_averaging(d, "bracket", "P", r.base());
    d.put_action("action", r.action(), r.vdim(), r.vdim());
    d.put_matrix("Q", r.q());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_of_an_averaging_algebra() {
        let f = Field::Prime(7);
        let g = LieAlgebra::new(
            f,
            2,
            Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
        )
        .unwrap();
        let obj = Object::AveragingLieAlgebra(AveragingLieAlgebra::with_identity(g));
        let text = obj.to_document().to_json();
        let back = Object::from_document(&Document::parse(&text).unwrap()).unwrap();
        assert_eq!(back, obj);
        assert_eq!(back.to_document().to_json(), text);
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let Err(Error::Parse(msg)) = Document::parse("{\n  \"kind\": ") else {
            panic!("expected a parse error");
        };
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn shape_and_scalar_errors_name_the_tensor() {
        let text = r#"{"kind":"lie_algebra","field":"F3","tensors":{"bracket":{"shape":[1,1,1],"data":["0","1"]}}}"#;
        let doc = Document::parse(text).unwrap();
        assert!(
            matches!(Object::from_document(&doc), Err(Error::Parse(m)) if m.contains("bracket"))
        );
        let text = r#"{"kind":"lie_algebra","field":"F3","tensors":{"bracket":{"shape":[1,1,1],"data":["x"]}}}"#;
        assert!(Document::parse(text).unwrap().verify_scalars().is_err());
    }

    #[test]
    fn non_alternating_chi_is_rejected() {
        let mut d = Document::new(Kind::TwoTerm, Field::Rationals);
        d.put_matrix("d", &Matrix::zeros(Field::Rationals, 1, 1));
        d.put_tensor("l2_00", &Tensor::zeros(Field::Rationals, &[1, 1, 1]));
        d.put_action("l2_01", &[Matrix::zeros(Field::Rationals, 1, 1)], 1, 1);
        d.put(
            "l3",
            TensorDoc {
                shape: vec![1, 1, 1, 1],
                data: vec!["1".into()],
            },
        );
        assert!(matches!(
            Object::from_document(&d),
            Err(Error::NotAlternating(_))
        ));
    }
}
