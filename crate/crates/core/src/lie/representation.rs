use crate::error::Result;
use crate::linalg::{Field, Matrix, Scalar};
use crate::verdict::{expect_eq, Verdict, Violation};

use super::algebra::{action_of, check_action_homomorphism, check_matrix_shape};
use super::averaging::{check_action_shape, AveragingLieAlgebra};

/// A representation `(V, ψ, Q)` of an averaging Lie algebra. `action[i]` is
/// the matrix of `ψ_{e_i}` on `V`.
///
/// Construction only checks shapes; [`Representation::check`] verifies the identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    base: AveragingLieAlgebra,
    vdim: usize,
    action: Vec<Matrix>,
    q: Matrix,
}

impl Representation {
    pub fn new(
        base: AveragingLieAlgebra,
        vdim: usize,
        action: Vec<Matrix>,
        q: Matrix,
    ) -> Result<Self> {
        check_action_shape(base.algebra(), &action, vdim)?;
        check_matrix_shape("Q", base.field(), vdim, vdim, &q)?;
        Ok(Representation {
            base,
            vdim,
            action,
            q,
        })
    }

    /// `V = g`, `ψ = ad`, `Q = P`.
    pub fn adjoint(base: &AveragingLieAlgebra) -> Self {
        Representation {
            vdim: base.dim(),
            action: base.algebra().adjoint_action(),
            q: base.op().clone(),
            base: base.clone(),
        }
    }

    /// `ψ = 0`, `Q = 0` on a space of dimension `vdim`.
    pub fn trivial(base: &AveragingLieAlgebra, vdim: usize) -> Self {
        let f = base.field();
        Representation {
            vdim,
            action: vec![Matrix::zeros(f, vdim, vdim); base.dim()],
            q: Matrix::zeros(f, vdim, vdim),
            base: base.clone(),
        }
    }

    pub fn base(&self) -> &AveragingLieAlgebra {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// The matrix of `ψ_x`.
    pub fn action_matrix(&self, x: &[Scalar]) -> Matrix {
        action_of(self.field(), &self.action, x, self.vdim, self.vdim)
    }

    /// `ψ_x v`
    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.action_matrix(x).apply(v)
    }

    /// Homomorphism property, then `ψ_{Px} Q v = Q(ψ_{Px} v)` ("rep-left"),
    /// then `Q(ψ_{Px} v) = Q(ψ_x Q v)` ("rep-right").
    pub fn check(&self) -> Verdict {
        if let Verdict::Fail(v) =
            check_action_homomorphism(self.base.algebra(), &self.action, self.vdim, "homomorphism")
        {
            return Verdict::Fail(v);
        }
        let p = self.base.op();
        let run = || -> Result<(), Violation> {
            for x in 0..self.base.dim() {
                let psi_px = self.action_matrix(&p.column(x));
                for v in 0..self.vdim {
                    let qv = self.q.column(v);
                    let a = psi_px.apply(&qv);
                    let b = self.q.apply(&psi_px.column(v));
                    let c = self.q.apply(&self.action[x].apply(&qv));
                    expect_eq("rep-left", &[x, v], a, b.clone())?;
                    expect_eq("rep-right", &[x, v], b, c)?;
                }
            }
            Ok(())
        };
        run().into()
    }
}

pub fn check_representation(r: &Representation) -> Verdict {
    r.check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::linalg::{enumerate_linear_maps, Tensor};

    fn two_dim(field: Field) -> LieAlgebra {
        LieAlgebra::new(
            field,
            2,
            Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
        )
        .unwrap()
    }

    #[test]
    fn adjoint_and_trivial_are_representations() {
        let a = AveragingLieAlgebra::with_identity(two_dim(Field::Rationals));
        assert!(Representation::adjoint(&a).check().is_pass());
        assert!(Representation::trivial(&a, 3).check().is_pass());
    }

    #[test]
    fn some_q_breaks_the_adjoint_representation() {
        let f = Field::Prime(2);
        let a = AveragingLieAlgebra::with_identity(two_dim(f));
        let mut falsifier = None;
        for q in enumerate_linear_maps(2, 2, f).unwrap().iter() {
            let r =
                Representation::new(a.clone(), 2, a.algebra().adjoint_action(), q.clone()).unwrap();
            if let Verdict::Fail(v) = r.check() {
                falsifier = Some((q, v));
                break;
            }
        }
        let (q, v) = falsifier.expect("some Q over F2 breaks the identities");
        assert_ne!(&q, a.op());
        assert!(v.clause.starts_with("rep-"));
    }
}
