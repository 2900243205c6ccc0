use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Tensor};
use crate::verdict::{expect_eq, Verdict, Violation};

/// A finite-dimensional Lie algebra given by structure constants.
///
/// Entry `(i, j, k)` of the bracket tensor is the `e_k`-coordinate of `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    bracket: Tensor,
}

pub(crate) fn check_shape(what: &str, field: Field, expected: &[usize], t: &Tensor) -> Result<()> {
    if t.field() != field {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: t.field().to_string(),
        });
    }
    if t.shape() != expected {
        return Err(Error::DimensionMismatch {
            what: what.to_string(),
            expected: format!("{expected:?}"),
            found: format!("{:?}", t.shape()),
        });
    }
    Ok(())
}

pub(crate) fn check_matrix_shape(
    what: &str,
    field: Field,
    rows: usize,
    cols: usize,
    m: &Matrix,
) -> Result<()> {
    if m.field() != field {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: m.field().to_string(),
        });
    }
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(Error::DimensionMismatch {
            what: what.to_string(),
            expected: format!("{rows}x{cols}"),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    Ok(())
}

/// Antisymmetry (including `[e_i, e_i] = 0`) and Jacobi on basis tuples.
pub fn check_lie_bracket(bracket: &Tensor) -> Verdict {
    let n = bracket.shape()[0];
    let raw = RawBracket(bracket);
    let antisymmetry = || -> Result<(), Violation> {
        for i in 0..n {
            expect_eq(
                "antisymmetry",
                &[i, i],
                bracket.fiber(&[i, i]).to_vec(),
                vector::zeros(bracket.field(), n),
            )?;
            for j in i + 1..n {
                expect_eq(
                    "antisymmetry",
                    &[i, j],
                    bracket.fiber(&[i, j]).to_vec(),
                    vector::neg(bracket.fiber(&[j, i])),
                )?;
            }
        }
        Ok(())
    };
    let jacobi = || -> Result<(), Violation> {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = raw.apply_basis_left(i, bracket.fiber(&[j, k]));
                    let b = raw.apply_basis_left(j, bracket.fiber(&[k, i]));
                    let c = raw.apply_basis_left(k, bracket.fiber(&[i, j]));
                    let sum = vector::add(&vector::add(&a, &b), &c);
                    expect_eq("Jacobi", &[i, j, k], sum, vector::zeros(bracket.field(), n))?;
                }
            }
        }
        Ok(())
    };
    antisymmetry().and_then(|_| jacobi()).into()
}

struct RawBracket<'a>(&'a Tensor);

impl RawBracket<'_> {
    /// `[e_i, v]`
    fn apply_basis_left(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let n = v.len();
        let mut out = vector::zeros(self.0.field(), n);
        for (j, c) in vector::support(v) {
            vector::axpy(&mut out, c, self.0.fiber(&[i, j]));
        }
        out
    }
}

impl LieAlgebra {
    /// Validates the structure constants.
    pub fn new(field: Field, dim: usize, bracket: Tensor) -> Result<Self> {
        check_shape("bracket", field, &[dim, dim, dim], &bracket)?;
        check_lie_bracket(&bracket).into_result()?;
        Ok(LieAlgebra {
            field,
            dim,
            bracket,
        })
    }

    pub fn abelian(field: Field, dim: usize) -> Self {
        LieAlgebra {
            field,
            dim,
            bracket: Tensor::zeros(field, &[dim, dim, dim]),
        }
    }

    /// Builds the bracket from its values on basis pairs, then validates it.
    pub fn from_basis_brackets(
        field: Field,
        dim: usize,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "bracket value length");
                data.extend(v);
            }
        }
        LieAlgebra::new(field, dim, Tensor::from_vec(field, &[dim, dim, dim], data))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &Tensor {
        &self.bracket
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        self.bracket.fiber(&[i, j])
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim, "bracket argument length");
        assert_eq!(y.len(), self.dim, "bracket argument length");
        let mut out = vector::zeros(self.field, self.dim);
        for (i, a) in vector::support(x) {
            for (j, b) in vector::support(y) {
                vector::axpy(&mut out, &(a * b), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// `[e_i, y]`
    pub fn bracket_left_basis(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        RawBracket(&self.bracket).apply_basis_left(i, y)
    }

    /// The matrix of `ad_x = [x, -]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<_> = (0..self.dim)
            .map(|c| self.bracket(x, &vector::unit(self.field, self.dim, c)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// `ad_{e_i}` for every basis element.
    pub fn adjoint_action(&self) -> Vec<Matrix> {
        (0..self.dim)
            .map(|i| self.ad(&vector::unit(self.field, self.dim, i)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, i)
    }

    /// Checks that `m: self -> target` preserves brackets on basis pairs.
    pub fn check_homomorphism(&self, target: &LieAlgebra, m: &Matrix) -> Verdict {
        assert_eq!(
            (m.rows(), m.cols()),
            (target.dim, self.dim),
            "homomorphism shape"
        );
        let cols = m.columns();
        let run = || -> Result<(), Violation> {
            for i in 0..self.dim {
                for j in i + 1..self.dim {
                    let lhs = m.apply(self.bracket_basis(i, j));
                    let rhs = target.bracket(&cols[i], &cols[j]);
                    expect_eq("bracket-preserving", &[i, j], lhs, rhs)?;
                }
            }
            Ok(())
        };
        run().into()
    }

    /// Checks that each matrix in `action` is a derivation of this algebra.
    pub fn check_derivations(&self, action: &[Matrix], clause: &str) -> Verdict {
        let run = || -> Result<(), Violation> {
            for (x, d) in action.iter().enumerate() {
                for i in 0..self.dim {
                    for j in i + 1..self.dim {
                        let lhs = d.apply(self.bracket_basis(i, j));
                        let rhs = vector::add(
                            &self.bracket(&d.column(i), &self.unit(j)),
                            &self.bracket(&self.unit(i), &d.column(j)),
                        );
                        expect_eq(clause, &[x, i, j], lhs, rhs)?;
                    }
                }
            }
            Ok(())
        };
        run().into()
    }
}

/// The action matrix `Σ x_i A_i` of a vector `x` under basis actions `A_i`.
pub fn action_of(
    field: Field,
    action: &[Matrix],
    x: &[Scalar],
    rows: usize,
    cols: usize,
) -> Matrix {
    assert_eq!(action.len(), x.len(), "action length");
    let mut out = Matrix::zeros(field, rows, cols);
    for (i, c) in vector::support(x) {
        out = out.add(&action[i].scale(c));
    }
    out
}

/// Checks that `x -> action_x` is a Lie algebra homomorphism into `gl(V)`.
pub fn check_action_homomorphism(
    g: &LieAlgebra,
    action: &[Matrix],
    vdim: usize,
    clause: &str,
) -> Verdict {
    let run = || -> Result<(), Violation> {
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = action_of(g.field(), action, g.bracket_basis(i, j), vdim, vdim);
                let rhs = action[i].commutator(&action[j]);
                if lhs != rhs {
                    // report the first basis vector of V where the two operators differ
                    let c = (0..vdim)
                        .find(|&c| lhs.column(c) != rhs.column(c))
                        .unwrap_or(0);
                    return Err(Violation::new(
                        clause,
                        &[i, j, c],
                        lhs.column(c),
                        rhs.column(c),
                    ));
                }
            }
        }
        Ok(())
    };
    run().into()
}

/// A (left) Leibniz algebra: `{x,{y,z}} = {{x,y},z} + {y,{x,z}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    field: Field,
    dim: usize,
    bracket: Tensor,
}

impl LeibnizAlgebra {
    pub fn new(field: Field, dim: usize, bracket: Tensor) -> Result<Self> {
        check_shape("bracket", field, &[dim, dim, dim], &bracket)?;
        let alg = LeibnizAlgebra {
            field,
            dim,
            bracket,
        };
        alg.check_leibniz().into_result()?;
        Ok(alg)
    }

    pub fn structure_constants(&self) -> &Tensor {
        &self.bracket
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dim);
        for (i, a) in vector::support(x) {
            for (j, b) in vector::support(y) {
                vector::axpy(&mut out, &(a * b), self.bracket.fiber(&[i, j]));
            }
        }
        out
    }

    fn check_leibniz(&self) -> Verdict {
        let n = self.dim;
        let e = |i| vector::unit(self.field, n, i);
        let run = || -> Result<(), Violation> {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let lhs = self.bracket(&e(x), &self.bracket(&e(y), &e(z)));
                        let rhs = vector::add(
                            &self.bracket(&self.bracket(&e(x), &e(y)), &e(z)),
                            &self.bracket(&e(y), &self.bracket(&e(x), &e(z))),
                        );
                        expect_eq("Leibniz", &[x, y, z], lhs, rhs)?;
                    }
                }
            }
            Ok(())
        };
        run().into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_dim_nonabelian(field: Field) -> LieAlgebra {
        // [e1, e2] = e2
        let t = Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]);
        LieAlgebra::new(field, 2, t).unwrap()
    }

    #[test]
    fn abelian_and_two_dim_are_valid() {
        assert!(LieAlgebra::new(
            Field::Rationals,
            3,
            Tensor::zeros(Field::Rationals, &[3, 3, 3])
        )
        .is_ok());
        let g = two_dim_nonabelian(Field::Rationals);
        assert_eq!(
            g.bracket_basis(0, 1),
            &[Field::Rationals.zero(), Field::Rationals.one()]
        );
    }

    #[test]
    fn symmetric_bracket_is_rejected() {
        let f = Field::Rationals;
        // [e1,e2] = e1 and [e2,e1] = e1
        let t = Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 1, 0, 1, 0, 0, 0]);
        match LieAlgebra::new(f, 2, t) {
            Err(Error::Violation(v)) => {
                assert_eq!(v.clause, "antisymmetry");
                assert_eq!(v.indices, vec![0, 1]);
            }
            other => panic!("expected antisymmetry violation, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let f = Field::Rationals;
        // [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 breaks Jacobi
        let mut t = Tensor::zeros(f, &[3, 3, 3]);
        let mut set = |i: usize, j: usize, k: usize, c: i64| {
            t.set(&[i, j, k], f.from_i64(c));
            t.set(&[j, i, k], f.from_i64(-c));
        };
        set(0, 1, 2, 1);
        set(1, 2, 0, 1);
        set(0, 2, 0, 1);
        let err = LieAlgebra::new(f, 3, t).unwrap_err();
        assert!(
            matches!(err, Error::Violation(ref v) if v.clause == "Jacobi"),
            "{err:?}"
        );
    }

    #[test]
    fn diagonal_must_vanish_in_characteristic_two() {
        let f = Field::Prime(2);
        // [e0,e0] = e0 is symmetric-compatible over F2 but not alternating
        let t = Tensor::from_i64(f, &[1, 1, 1], &[1]);
        assert!(LieAlgebra::new(f, 1, t).is_err());
    }

    #[test]
    fn adjoint_action_is_a_homomorphism() {
        let g = two_dim_nonabelian(Field::Prime(5));
        assert!(check_action_homomorphism(&g, &g.adjoint_action(), 2, "homomorphism").is_pass());
    }
}
