use crate::error::{Error, Result};
use crate::lie::{
    check_action_homomorphism, check_action_shape, check_matrix_shape, AveragingLieAlgebra,
    LieAlgebra, Representation,
};
use crate::linalg::{vector, Matrix, Scalar, Tensor};
use crate::multilinear::AltMap;
use crate::verdict::{expect_eq, Verdict, Violation};

use super::two_term::{check_homotopy_averaging, is_strict, HomotopyAveraging, TwoTermLinf};

/// A crossed module `((g_1)_{P_1}, (g_0)_{P_0}, d, ρ)`; `rho[x]` is the matrix of `ρ_{e_x}` on `g_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedModule {
    pub g1: AveragingLieAlgebra,
    pub g0: AveragingLieAlgebra,
    pub d: Matrix,
    pub rho: Vec<Matrix>,
}

impl CrossedModule {
    /// Checks shapes only; see [`check_crossed_module`].
    pub fn new(
        g1: AveragingLieAlgebra,
        g0: AveragingLieAlgebra,
        d: Matrix,
        rho: Vec<Matrix>,
    ) -> Result<Self> {
        check_matrix_shape("d", g0.field(), g0.dim(), g1.dim(), &d)?;
        check_action_shape(g0.algebra(), &rho, g1.dim())?;
        Ok(CrossedModule { g1, g0, d, rho })
    }

    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        crate::lie::action_of(self.g0.field(), &self.rho, x, self.g1.dim(), self.g1.dim())
    }

    pub fn check(&self) -> Verdict {
        let (g0, g1) = (&self.g0, &self.g1);
        let rename = |v: Violation, clause: &str| Violation {
            clause: clause.into(),
            ..v
        };
        if let Verdict::Fail(v) = g1.algebra().check_homomorphism(g0.algebra(), &self.d) {
            return Verdict::Fail(rename(v, "d-bracket"));
        }
        if let Err(v) = crate::lie::first_column_difference(
            "d-averaging",
            &g0.op().mul(&self.d),
            &self.d.mul(g1.op()),
        ) {
            return Verdict::Fail(v);
        }
        if let Verdict::Fail(v) = g1.algebra().check_derivations(&self.rho, "derivation") {
            return Verdict::Fail(v);
        }
        if let Verdict::Fail(v) =
            check_action_homomorphism(g0.algebra(), &self.rho, g1.dim(), "homomorphism")
        {
            return Verdict::Fail(v);
        }
        let rep = Representation::new(g0.clone(), g1.dim(), self.rho.clone(), g1.op().clone())
            .expect("shapes were checked");
        if let Verdict::Fail(v) = rep.check() {
            return Verdict::Fail(v);
        }
        let run = || -> Result<(), Violation> {
            for h in 0..g1.dim() {
                let rho_dh = self.rho_of(&self.d.column(h));
                for k in 0..g1.dim() {
                    let rhs = g1.algebra().bracket_basis(h, k).to_vec();
                    expect_eq("Peiffer", &[h, k], rho_dh.column(k), rhs)?;
                }
            }
            for x in 0..g0.dim() {
                for h in 0..g1.dim() {
                    let lhs = self.d.apply(&self.rho[x].column(h));
                    let rhs = g0.bracket(&g0.algebra().unit(x), &self.d.column(h));
                    expect_eq("equivariance", &[x, h], lhs, rhs)?;
                }
            }
            Ok(())
        };
        run().into()
    }
}

pub fn check_crossed_module(c: &CrossedModule) -> Verdict {
    c.check()
}

/// `(g_P, g_P, Id, ad)`.
pub fn adjoint_crossed_module(g: &AveragingLieAlgebra) -> CrossedModule {
    CrossedModule {
        g1: g.clone(),
        g0: g.clone(),
        d: Matrix::identity(g.field(), g.dim()),
        rho: g.algebra().adjoint_action(),
    }
}

/// `(h_P, g_P, i, ad)` for an ideal `h` (the column span of `basis`) with `P(h) ⊂ h`.
pub fn ideal_crossed_module(g: &AveragingLieAlgebra, basis: &Matrix) -> Result<CrossedModule> {
    if let Verdict::Fail(v) = g.check_operator_ideal(basis) {
        return Err(Error::NotACrossedModule(v));
    }
    let h = g.subalgebra(basis)?;
    let cols = basis.columns();
    let coords = |v: &[Scalar]| {
        basis
            .solve_affine(v)
            .expect("ideal is closed under the bracket")
            .particular
    };
    let rho = (0..g.dim())
        .map(|x| {
            let images: Vec<_> = cols
                .iter()
                .map(|c| coords(&g.bracket(&g.algebra().unit(x), c)))
                .collect();
            Matrix::from_columns(g.field(), h.dim(), &images)
        })
        .collect();
    CrossedModule::new(h, g.clone(), basis.clone(), rho)
}

/// `(Ker f, g, i, ad)` for a morphism `f: g_P -> h_Q`, using the canonical kernel basis.
pub fn kernel_crossed_module(
    g: &AveragingLieAlgebra,
    target: &AveragingLieAlgebra,
    f: &Matrix,
) -> Result<CrossedModule> {
    check_matrix_shape("morphism", g.field(), target.dim(), g.dim(), f)?;
    if let Verdict::Fail(v) = g.check_morphism(target, f) {
        return Err(Error::Violation(v));
    }
    let kernel = f.kernel_basis();
    let basis = Matrix::from_columns(g.field(), g.dim(), &kernel);
    ideal_crossed_module(g, &basis)
}

/// Forward direction: `[h, k]_1 := ⟦dh, k⟧`, `ρ_x h := ⟦x, h⟧`.
pub fn strict_to_crossed(t: &TwoTermLinf, p: &HomotopyAveraging) -> Result<CrossedModule> {
    if !is_strict(t, p) {
        return Err(Error::NotStrict);
    }
    if let Verdict::Fail(v) = check_homotopy_averaging(t, p)? {
        return Err(Error::Violation(v));
    }
    let f = t.field;
    let g0 = AveragingLieAlgebra::new(LieAlgebra::new(f, t.n0, t.l2_00.clone())?, p.p0.clone())?;
    let g1_bracket = LieAlgebra::from_basis_brackets(f, t.n1, |h, k| {
        t.br01(&t.d.column(h), &vector::unit(f, t.n1, k))
    })?;
    let g1 = AveragingLieAlgebra::new(g1_bracket, p.p1.clone())?;
    let c = CrossedModule::new(g1, g0, t.d.clone(), t.l2_01.clone())?;
    if let Verdict::Fail(v) = c.check() {
        return Err(Error::Inconsistent(format!(
            "strict structure gives no crossed module: {v}"
        )));
    }
    Ok(c)
}

/// Backward direction: `⟦x, y⟧ := [x, y]_0`, `⟦x, h⟧ := ρ_x h`, `l_3 = 0`, `P_2 = 0`.
pub fn crossed_to_strict(c: &CrossedModule) -> Result<(TwoTermLinf, HomotopyAveraging)> {
    if let Verdict::Fail(v) = c.check() {
        return Err(Error::NotACrossedModule(v));
    }
    let f = c.g0.field();
    let (n0, n1) = (c.g0.dim(), c.g1.dim());
    let t = TwoTermLinf::new(
        c.d.clone(),
        c.g0.algebra().structure_constants().clone(),
        c.rho.clone(),
        AltMap::zero(f, 3, n0, n1),
    )?;
    let p = HomotopyAveraging {
        p0: c.g0.op().clone(),
        p1: c.g1.op().clone(),
        p2: AltMap::zero(f, 2, n0, n1),
    };
    match check_homotopy_averaging(&t, &p) {
        Ok(Verdict::Pass) => Ok((t, p)),
        Ok(Verdict::Fail(v)) | Err(Error::InvalidBase(v)) => Err(Error::Inconsistent(format!(
            "crossed module gives no strict structure: {v}"
        ))),
        Err(e) => Err(e),
    }
}

/// Which second component to use for the bracket on `g_0 ⊕ g_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemidirectBracket {
    /// `ρ_x k - ρ_y h + [h, k]_1`
    Standard,
    /// `ρ_x k - ρ_y k + [h, k]_1`, read literally; not antisymmetric in general.
    SecondSlotOnly,
}

/// The bracket tensor on `g_0 ⊕ g_1` (`g_0` coordinates first), unvalidated.
pub fn semidirect_bracket_tensor(c: &CrossedModule, variant: SemidirectBracket) -> Tensor {
    let f = c.g0.field();
    let (n0, n1) = (c.g0.dim(), c.g1.dim());
    let n = n0 + n1;
    let split = |u: usize| -> (Vec<Scalar>, Vec<Scalar>) {
        let e = vector::unit(f, n, u);
        (e[..n0].to_vec(), e[n0..].to_vec())
    };
    let mut data = Vec::with_capacity(n * n * n);
    for u in 0..n {
        let (x, h) = split(u);
        for v in 0..n {
            let (y, k) = split(v);
            let first = c.g0.bracket(&x, &y);
            let rho_y_arg = match variant {
                SemidirectBracket::Standard => &h,
                SemidirectBracket::SecondSlotOnly => &k,
            };
            let second = vector::add(
                &vector::sub(&c.rho_of(&x).apply(&k), &c.rho_of(&y).apply(rho_y_arg)),
                &c.g1.bracket(&h, &k),
            );
            data.extend(first);
            data.extend(second);
        }
    }
    Tensor::from_vec(f, &[n, n, n], data)
}

/// `(g_0 ⊕ g_1)_{P_0 ⊕ P_1}`.
pub fn crossed_semidirect(
    c: &CrossedModule,
    variant: SemidirectBracket,
) -> Result<AveragingLieAlgebra> {
    if let Verdict::Fail(v) = c.check() {
        return Err(Error::NotACrossedModule(v));
    }
    let n = c.g0.dim() + c.g1.dim();
    let algebra = LieAlgebra::new(c.g0.field(), n, semidirect_bracket_tensor(c, variant))?;
    AveragingLieAlgebra::new(algebra, c.g0.op().direct_sum(c.g1.op()))
}

/// `(g_0 ⊕ g_1)_{P_0 ⊕ P_1}` built directly from a strict structure with
/// `[(x,h),(y,k)] = (⟦x,y⟧, ⟦x,k⟧ - ⟦y,h⟧ + ⟦dh,k⟧)`.
pub fn strict_semidirect(t: &TwoTermLinf, p: &HomotopyAveraging) -> Result<AveragingLieAlgebra> {
    if !is_strict(t, p) {
        return Err(Error::NotStrict);
    }
    let f = t.field;
    let (n0, n1) = (t.n0, t.n1);
    let n = n0 + n1;
    let algebra = LieAlgebra::from_basis_brackets(f, n, |u, v| {
        let e = |w: usize| vector::unit(f, n, w);
        let (eu, ev) = (e(u), e(v));
        let (x, h) = (&eu[..n0], &eu[n0..]);
        let (y, k) = (&ev[..n0], &ev[n0..]);
        let mut out = t.br00(x, y);
        out.extend(vector::add(
            &vector::sub(&t.br01(x, k), &t.br01(y, h)),
            &t.br01(&t.d.apply(h), k),
        ));
        out
    })?;
    AveragingLieAlgebra::new(algebra, p.p0.direct_sum(&p.p1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::check_averaging;
    use crate::linalg::Field;

    fn two_dim(field: Field) -> AveragingLieAlgebra {
        let g = LieAlgebra::new(
            field,
            2,
            Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
        )
        .unwrap();
        AveragingLieAlgebra::with_identity(g)
    }

    #[test]
    fn adjoint_crossed_module_round_trips() {
        let a = two_dim(Field::Rationals);
        let c = adjoint_crossed_module(&a);
        assert!(c.check().is_pass());
        let (t, p) = crossed_to_strict(&c).unwrap();
        assert_eq!(strict_to_crossed(&t, &p).unwrap(), c);
        let semi = crossed_semidirect(&c, SemidirectBracket::Standard).unwrap();
        assert_eq!(semi, strict_semidirect(&t, &p).unwrap());
        assert!(check_averaging(semi.algebra(), semi.op())
            .unwrap()
            .is_pass());
    }

    #[test]
    fn literal_bracket_is_not_antisymmetric() {
        let c = adjoint_crossed_module(&two_dim(Field::Rationals));
        let err = crossed_semidirect(&c, SemidirectBracket::SecondSlotOnly).unwrap_err();
        assert!(
            matches!(err, Error::Violation(ref v) if v.clause == "antisymmetry"),
            "{err:?}"
        );
    }

    #[test]
    fn zero_rho_breaks_peiffer() {
        let a = two_dim(Field::Rationals);
        let mut c = adjoint_crossed_module(&a);
        c.rho = vec![Matrix::zeros(Field::Rationals, 2, 2); 2];
        assert_eq!(c.check().violation().unwrap().clause, "Peiffer");
    }

    #[test]
    fn kernel_of_projection_is_a_crossed_module() {
        let f = Field::Rationals;
        let a = two_dim(f);
        // the quotient by the ideal spanned by e2 is the 1-dim algebra; P induces Id there
        let target = AveragingLieAlgebra::with_identity(LieAlgebra::abelian(f, 1));
        let proj = Matrix::from_i64(f, 1, 2, &[1, 0]);
        let c = kernel_crossed_module(&a, &target, &proj).unwrap();
        assert_eq!(c.g1.dim(), 1);
        assert!(c.check().is_pass());
    }
}
