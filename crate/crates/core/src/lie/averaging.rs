use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Tensor};
use crate::verdict::{expect_eq, Verdict, Violation};

use super::algebra::{check_matrix_shape, LeibnizAlgebra, LieAlgebra};

/// Verdicts for `[Px, Py] = P[Px, y]` and for the right-sided `[Px, Py] = P[x, Py]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragingCheck {
    pub left: Verdict,
    pub right: Verdict,
}

impl AveragingCheck {
    pub fn is_pass(&self) -> bool {
        self.left.is_pass() && self.right.is_pass()
    }

    /// The two forms are equivalent, so they must agree.
    pub fn agree(&self) -> bool {
        self.left.is_pass() == self.right.is_pass()
    }

    /// The left verdict, or an error if the two forms disagree.
    pub fn into_result(self) -> Result<()> {
        if !self.agree() {
            return Err(Error::Inconsistent(format!(
                "left-sided averaging check gives {:?} but right-sided gives {:?}",
                self.left, self.right
            )));
        }
        self.left.into_result().map_err(Error::from)
    }
}

pub fn check_averaging(g: &LieAlgebra, p: &Matrix) -> Result<AveragingCheck> {
    check_matrix_shape("averaging operator", g.field(), g.dim(), g.dim(), p)?;
    let images = p.columns();
    let n = g.dim();
    let left = || -> Result<(), Violation> {
        for i in 0..n {
            for j in 0..n {
                let lhs = g.bracket(&images[i], &images[j]);
                let rhs = p.apply(&g.bracket(&images[i], &g.unit(j)));
                expect_eq("averaging", &[i, j], lhs, rhs)?;
            }
        }
        Ok(())
    };
    let right = || -> Result<(), Violation> {
        for i in 0..n {
            for j in 0..n {
                let lhs = g.bracket(&images[i], &images[j]);
                let rhs = p.apply(&g.bracket(&g.unit(i), &images[j]));
                expect_eq("averaging-right", &[i, j], lhs, rhs)?;
            }
        }
        Ok(())
    };
    Ok(AveragingCheck {
        left: left().into(),
        right: right().into(),
    })
}

/// A Lie algebra with a validated averaging operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AveragingLieAlgebra {
    algebra: LieAlgebra,
    op: Matrix,
}

impl AveragingLieAlgebra {
    pub fn new(algebra: LieAlgebra, op: Matrix) -> Result<Self> {
        check_averaging(&algebra, &op)?.into_result()?;
        Ok(AveragingLieAlgebra { algebra, op })
    }

    pub fn with_identity(algebra: LieAlgebra) -> Self {
        let op = Matrix::identity(algebra.field(), algebra.dim());
        AveragingLieAlgebra { algebra, op }
    }

    pub fn with_zero(algebra: LieAlgebra) -> Self {
        let op = Matrix::zeros(algebra.field(), algebra.dim(), algebra.dim());
        AveragingLieAlgebra { algebra, op }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn op(&self) -> &Matrix {
        &self.op
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.algebra.bracket(x, y)
    }

    /// Checks that `m: self -> target` is a morphism of averaging Lie algebras.
    pub fn check_morphism(&self, target: &AveragingLieAlgebra, m: &Matrix) -> Verdict {
        if let Verdict::Fail(v) = self.algebra.check_homomorphism(&target.algebra, m) {
            return Verdict::Fail(v);
        }
        let lhs = target.op.mul(m);
        let rhs = m.mul(&self.op);
        first_column_difference("operator-commuting", &lhs, &rhs).into()
    }

    /// Checks that `m` is an averaging Lie algebra automorphism.
    pub fn check_automorphism(&self, m: &Matrix) -> Verdict {
        if !m.is_invertible() {
            return Verdict::Fail(Violation::structural("invertible", &[]));
        }
        self.check_morphism(self, m)
    }

    /// The induced Leibniz bracket `{x, y} = [Px, y]`.
    pub fn induced_leibniz(&self) -> LeibnizAlgebra {
        let n = self.dim();
        let f = self.field();
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            let pi = self.op.column(i);
            for j in 0..n {
                data.extend(self.algebra.bracket(&pi, &self.algebra.unit(j)));
            }
        }
        LeibnizAlgebra::new(f, n, Tensor::from_vec(f, &[n, n, n], data))
            .expect("an averaging operator always induces a Leibniz bracket")
    }

    /// The sub-averaging-algebra spanned by the columns of `basis`, which
    /// must be linearly independent, closed under the bracket and under the
    /// operator. Returns the subalgebra in the coordinates of `basis`.
    pub fn subalgebra(&self, basis: &Matrix) -> Result<AveragingLieAlgebra> {
        let f = self.field();
        let k = basis.cols();
        if basis.rank() != k {
            return Err(Error::Violation(Violation::structural(
                "independent basis",
                &[],
            )));
        }
        let cols = basis.columns();
        let coords = |v: &[Scalar], clause: &str, idx: &[usize]| -> Result<Vec<Scalar>> {
            basis.solve_affine(v).map(|s| s.particular).ok_or_else(|| {
                Error::Violation(Violation::new(clause, idx, v.to_vec(), Vec::new()))
            })
        };
        let mut data = Vec::with_capacity(k * k * k);
        for a in 0..k {
            for b in 0..k {
                data.extend(coords(
                    &self.bracket(&cols[a], &cols[b]),
                    "closed under bracket",
                    &[a, b],
                )?);
            }
        }
        let algebra = LieAlgebra::new(f, k, Tensor::from_vec(f, &[k, k, k], data))?;
        let mut op_cols = Vec::with_capacity(k);
        for (a, c) in cols.iter().enumerate() {
            op_cols.push(coords(&self.op.apply(c), "closed under operator", &[a])?);
        }
        AveragingLieAlgebra::new(algebra, Matrix::from_columns(f, k, &op_cols))
    }

    /// Checks that the column span of `basis` is an ideal preserved by the operator.
    pub fn check_operator_ideal(&self, basis: &Matrix) -> Verdict {
        let span_rank = basis.rank();
        let contains = |v: &[Scalar]| {
            basis
                .hstack(&Matrix::from_vec(self.field(), self.dim(), 1, v.to_vec()))
                .rank()
                == span_rank
        };
        let cols = basis.columns();
        for (a, c) in cols.iter().enumerate() {
            for j in 0..self.dim() {
                let v = self.bracket(&self.algebra.unit(j), c);
                if !contains(&v) {
                    return Verdict::Fail(Violation::new("ideal", &[j, a], v, Vec::new()));
                }
            }
            let v = self.op.apply(c);
            if !contains(&v) {
                return Verdict::Fail(Violation::new("operator-invariant", &[a], v, Vec::new()));
            }
        }
        Verdict::Pass
    }
}

pub(crate) fn first_column_difference(
    clause: &str,
    lhs: &Matrix,
    rhs: &Matrix,
) -> Result<(), Violation> {
    for c in 0..lhs.cols() {
        let (l, r) = (lhs.column(c), rhs.column(c));
        if l != r {
            return Err(Violation::new(clause, &[c], l, r));
        }
    }
    Ok(())
}

/// `g ⊕ ... ⊕ g` with its averaging operators `P` and `Q_2, ..., Q_n`.
#[derive(Clone, Debug)]
pub struct DoubleConstruction {
    pub algebra: LieAlgebra,
    /// `P(x_1, ..., x_n) = (x_2 + ... + x_n, 0, ..., 0)`
    pub p: Matrix,
    /// `q[i - 2]` is `Q_i(x_1, ..., x_n) = (x_i, 0, ..., 0)`.
    pub q: Vec<Matrix>,
}

/// The bracket `[(x_1..x_n), (y_1..y_n)] = ([x_1,y_1], [x_1,y_2] - [y_1,x_2], ..., [x_1,y_n] - [y_1,x_n])`
/// on `copies` copies of `g`, with its averaging operators.
pub fn double_construction(g: &LieAlgebra, copies: usize) -> Result<DoubleConstruction> {
    if copies < 2 {
        return Err(Error::DimensionMismatch {
            what: "number of copies".into(),
            expected: ">= 2".into(),
            found: copies.to_string(),
        });
    }
    let f = g.field();
    let n = g.dim();
    let total = n * copies;
    let algebra = LieAlgebra::from_basis_brackets(f, total, |u, v| {
        let (a, i) = (u / n, u % n);
        let (b, j) = (v / n, v % n);
        let mut out = vector::zeros(f, total);
        // on basis vectors only the x_1/y_1 terms survive
        let target = match (a, b) {
            (0, 0) => Some(0),
            (0, b) => Some(b),
            (a, 0) => Some(a),
            _ => None,
        };
        if let Some(t) = target {
            out[t * n..(t + 1) * n].clone_from_slice(g.bracket_basis(i, j));
        }
        out
    })?;
    let block = |copy: usize| {
        Matrix::from_fn(f, total, total, |r, c| {
            if r < n && c == copy * n + r {
                f.one()
            } else {
                f.zero()
            }
        })
    };
    let mut p = Matrix::zeros(f, total, total);
    for copy in 1..copies {
        p = p.add(&block(copy));
    }
    let q = (2..=copies).map(|i| block(i - 1)).collect();
    Ok(DoubleConstruction { algebra, p, q })
}

/// Semidirect product `g ⋉ V` with `[(x,u),(y,v)] = ([x,y], ψ_x v - ψ_y u)`;
/// `g` occupies the first coordinates.
pub fn semidirect_product(g: &LieAlgebra, action: &[Matrix], vdim: usize) -> Result<LieAlgebra> {
    let f = g.field();
    let n = g.dim();
    let total = n + vdim;
    LieAlgebra::from_basis_brackets(f, total, |u, v| {
        let mut out = vector::zeros(f, total);
        match (u < n, v < n) {
            (true, true) => out[..n].clone_from_slice(g.bracket_basis(u, v)),
            (true, false) => out[n..].clone_from_slice(&action[u].column(v - n)),
            (false, true) => out[n..].clone_from_slice(&vector::neg(&action[v].column(u - n))),
            (false, false) => {}
        }
        out
    })
}

/// Checks `[Tu, Tv] = T(ψ_{Tu} v)` on basis pairs of `V`.
pub fn check_embedding_tensor(g: &LieAlgebra, action: &[Matrix], t: &Matrix) -> Result<Verdict> {
    let f = g.field();
    let vdim = t.cols();
    check_matrix_shape("embedding tensor", f, g.dim(), vdim, t)?;
    check_action_shape(g, action, vdim)?;
    if let Verdict::Fail(v) =
        super::algebra::check_action_homomorphism(g, action, vdim, "homomorphism")
    {
        return Ok(Verdict::Fail(v));
    }
    let images = t.columns();
    let run = || -> Result<(), Violation> {
        for u in 0..vdim {
            let act = super::algebra::action_of(f, action, &images[u], vdim, vdim);
            for v in 0..vdim {
                let lhs = g.bracket(&images[u], &images[v]);
                let rhs = t.apply(&act.column(v));
                expect_eq("embedding tensor", &[u, v], lhs, rhs)?;
            }
        }
        Ok(())
    };
    Ok(run().into())
}

pub(crate) fn check_action_shape(g: &LieAlgebra, action: &[Matrix], vdim: usize) -> Result<()> {
    if action.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            what: "action".into(),
            expected: format!("{} matrices", g.dim()),
            found: format!("{} matrices", action.len()),
        });
    }
    for m in action {
        check_matrix_shape("action matrix", g.field(), vdim, vdim, m)?;
    }
    Ok(())
}

/// The averaging operator `P_T(x, u) = (T u, 0)` on `g ⋉ V`.
pub fn embedding_to_averaging(
    g: &LieAlgebra,
    action: &[Matrix],
    t: &Matrix,
) -> Result<AveragingLieAlgebra> {
    if let Verdict::Fail(v) = check_embedding_tensor(g, action, t)? {
        return Err(Error::NotAnEmbeddingTensor(v));
    }
    let n = g.dim();
    let vdim = t.cols();
    let f = g.field();
    let algebra = semidirect_product(g, action, vdim)?;
    let op = Matrix::from_fn(f, n + vdim, n + vdim, |r, c| {
        if r < n && c >= n {
            t.get(r, c - n).clone()
        } else {
            f.zero()
        }
    });
    AveragingLieAlgebra::new(algebra, op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::enumerate_linear_maps;

    fn two_dim(field: Field) -> LieAlgebra {
        let t = Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]);
        LieAlgebra::new(field, 2, t).unwrap()
    }

    #[test]
    fn identity_is_averaging() {
        let g = two_dim(Field::Rationals);
        assert!(check_averaging(&g, &Matrix::identity(Field::Rationals, 2))
            .unwrap()
            .is_pass());
    }

    #[test]
    fn double_construction_operators_are_averaging() {
        for copies in [2, 3] {
            let d = double_construction(&two_dim(Field::Rationals), copies).unwrap();
            assert_eq!(d.algebra.dim(), 2 * copies);
            assert!(check_averaging(&d.algebra, &d.p).unwrap().is_pass());
            assert_eq!(d.q.len(), copies - 1);
            for q in &d.q {
                assert!(check_averaging(&d.algebra, q).unwrap().is_pass());
            }
        }
        let abelian = double_construction(&LieAlgebra::abelian(Field::Rationals, 2), 2).unwrap();
        assert!(abelian.algebra.is_abelian());
    }

    #[test]
    fn double_construction_leibniz_bracket() {
        let f = Field::Rationals;
        let d = double_construction(&two_dim(f), 2).unwrap();
        let a = AveragingLieAlgebra::new(d.algebra.clone(), d.p.clone()).unwrap();
        let leib = a.induced_leibniz();
        // basis u0=(e1,0), u1=(e2,0), u2=(0,e1), u3=(0,e2); P u2 = u0, P u3 = u1.
        // {u2,u1} = [u0,u1] = u1, {u2,u3} = [u0,u3] = u3,
        // {u3,u0} = [u1,u0] = -u1, {u3,u2} = [u1,u2] = (0,[e2,e1]) = -u3.
        let mut expected = Tensor::zeros(f, &[4, 4, 4]);
        expected.set(&[2, 3, 3], f.one());
        expected.set(&[3, 2, 3], f.from_i64(-1));
        expected.set(&[2, 1, 1], f.one());
        expected.set(&[3, 0, 1], f.from_i64(-1));
        assert_eq!(leib.structure_constants(), &expected);
    }

    #[test]
    fn embedding_tensors_match_averaging_on_semidirect_product() {
        let f = Field::Prime(2);
        let g = two_dim(f);
        let action = g.adjoint_action();
        let semi = semidirect_product(&g, &action, 2).unwrap();
        let mut valid = 0;
        for t in enumerate_linear_maps(2, 2, f).unwrap().iter() {
            let is_embedding = check_embedding_tensor(&g, &action, &t).unwrap().is_pass();
            let op = Matrix::zeros(f, 2, 2)
                .hstack(&t)
                .vstack(&Matrix::zeros(f, 2, 4));
            let is_averaging = check_averaging(&semi, &op).unwrap().is_pass();
            assert_eq!(is_embedding, is_averaging, "T = {t}");
            if is_embedding {
                valid += 1;
                assert!(embedding_to_averaging(&g, &action, &t).is_ok());
            }
        }
        assert!(valid >= 2);
    }

    #[test]
    fn averaging_sides_agree_on_arbitrary_operators() {
        let f = Field::Prime(3);
        let g = two_dim(f);
        for p in enumerate_linear_maps(2, 2, f).unwrap().iter() {
            assert!(check_averaging(&g, &p).unwrap().agree());
        }
    }
}
