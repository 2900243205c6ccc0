use crate::error::{Error, Result};
use crate::lie::{action_of, check_action_shape, check_matrix_shape, AveragingLieAlgebra};
use crate::linalg::{enumerate_linear_maps, vector, Field, Matrix, Scalar};
use crate::multilinear::AltMap;
use crate::verdict::{expect_eq, Verdict, Violation};

/// A candidate non-abelian 2-cocycle `(χ, ψ, Φ)` of `g_P` with values in `h_Q`.
///
/// `psi[x]` is the matrix of `ψ_{e_x}` on `h`; `phi` is `Φ` as a `dim h × dim g` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonAbelianCocycle {
    pub base: AveragingLieAlgebra,
    pub coef: AveragingLieAlgebra,
    pub chi: AltMap,
    pub psi: Vec<Matrix>,
    pub phi: Matrix,
}

/// Result of [`check_cocycle`]. `verdict` covers the derivation property and
/// (A)–(D); `d` and `d1` are the separate verdicts of (D) and its variant (D1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    pub verdict: Verdict,
    pub d: Verdict,
    pub d1: Verdict,
}

impl CocycleCheck {
    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }

    /// Whether (D) and (D1) reached the same verdict.
    pub fn d_variants_agree(&self) -> bool {
        self.d.is_pass() == self.d1.is_pass()
    }
}

impl NonAbelianCocycle {
    /// Checks shapes only; see [`check_cocycle`].
    pub fn new(
        base: AveragingLieAlgebra,
        coef: AveragingLieAlgebra,
        chi: AltMap,
        psi: Vec<Matrix>,
        phi: Matrix,
    ) -> Result<Self> {
        let f = base.field();
        if coef.field() != f {
            return Err(Error::FieldMismatch {
                expected: f.to_string(),
                found: coef.field().to_string(),
            });
        }
        let (g, h) = (base.dim(), coef.dim());
        if (chi.arity(), chi.dim(), chi.codim(), chi.field()) != (2, g, h, f) {
            return Err(Error::DimensionMismatch {
                what: "chi".into(),
                expected: format!("alternating 2-map from dim {g} to dim {h}"),
                found: format!(
                    "arity {} from dim {} to dim {}",
                    chi.arity(),
                    chi.dim(),
                    chi.codim()
                ),
            });
        }
        check_action_shape(base.algebra(), &psi, h)?;
        check_matrix_shape("Phi", f, h, g, &phi)?;
        Ok(NonAbelianCocycle {
            base,
            coef,
            chi,
            psi,
            phi,
        })
    }

    /// `χ = 0`, `Φ = 0` and the given action.
    pub fn from_action(
        base: AveragingLieAlgebra,
        coef: AveragingLieAlgebra,
        psi: Vec<Matrix>,
    ) -> Result<Self> {
        let (f, g, h) = (base.field(), base.dim(), coef.dim());
        NonAbelianCocycle::new(
            base,
            coef,
            AltMap::zero(f, 2, g, h),
            psi,
            Matrix::zeros(f, h, g),
        )
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn gdim(&self) -> usize {
        self.base.dim()
    }

    pub fn hdim(&self) -> usize {
        self.coef.dim()
    }

    /// The matrix of `ψ_x`.
    pub fn psi_of(&self, x: &[Scalar]) -> Matrix {
        action_of(self.field(), &self.psi, x, self.hdim(), self.hdim())
    }

    pub fn chi_eval(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.chi.eval(&[x, y])
    }

    fn hbr(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.coef.bracket(a, b)
    }

    fn gbr(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.base.bracket(a, b)
    }

    pub fn check(&self) -> CocycleCheck {
        let d = self.check_d("(D)", false);
        let d1 = self.check_d("(D1)", true);
        let mut verdict = self
            .coef
            .algebra()
            .check_derivations(&self.psi, "derivation");
        for step in [Self::check_a, Self::check_b, Self::check_c] {
            if verdict.is_pass() {
                verdict = step(self);
            }
        }
        if verdict.is_pass() {
            verdict = d.clone();
        }
        CocycleCheck { verdict, d, d1 }
    }

    fn check_a(&self) -> Verdict {
        let (g, h) = (self.gdim(), self.hdim());
        let run = || -> Result<(), Violation> {
            for x in 0..g {
                for y in 0..g {
                    let comm = self.psi[x]
                        .commutator(&self.psi[y])
                        .sub(&self.psi_of(self.base.algebra().bracket_basis(x, y)));
                    let chi = self.chi.basis_value_or_zero(&[x, y]);
                    for k in 0..h {
                        let rhs = self.hbr(&chi, &self.coef.algebra().unit(k));
                        expect_eq("(A)", &[x, y, k], comm.column(k), rhs)?;
                    }
                }
            }
            Ok(())
        };
        run().into()
    }

    fn check_b(&self) -> Verdict {
        let (f, g, h) = (self.field(), self.gdim(), self.hdim());
        let e = |i: usize| vector::unit(f, g, i);
        let run = || -> Result<(), Violation> {
            for x in 0..g {
                for y in 0..g {
                    for z in 0..g {
                        let mut lhs = vector::zeros(f, h);
                        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                            lhs =
                                vector::add(&lhs, &self.psi[a].apply(&self.chi_eval(&e(b), &e(c))));
                            let ab = self.gbr(&e(a), &e(b));
                            lhs = vector::sub(&lhs, &self.chi_eval(&ab, &e(c)));
                        }
                        expect_eq("(B)", &[x, y, z], lhs, vector::zeros(f, h))?;
                    }
                }
            }
            Ok(())
        };
        run().into()
    }

    fn check_c(&self) -> Verdict {
        let (p, q) = (self.base.op(), self.coef.op());
        let run = || -> Result<(), Violation> {
            for x in 0..self.gdim() {
                let psi_px = self.psi_of(&p.column(x));
                let phi_x = self.phi.column(x);
                for k in 0..self.hdim() {
                    let hk = self.coef.algebra().unit(k);
                    let qh = q.column(k);
                    let lhs = psi_px.apply(&qh);
                    let phi_qh = self.hbr(&phi_x, &qh);
                    let mid = vector::sub(
                        &q.apply(&vector::add(&psi_px.column(k), &self.hbr(&phi_x, &hk))),
                        &phi_qh,
                    );
                    let right = vector::sub(&q.apply(&self.psi[x].apply(&qh)), &phi_qh);
                    expect_eq("(C)", &[x, k], lhs, mid.clone())?;
                    expect_eq("(C)-right", &[x, k], mid, right)?;
                }
            }
            Ok(())
        };
        run().into()
    }

    /// (D), or with `variant` the form (D1) with `P` moved onto the second argument.
    fn check_d(&self, clause: &str, variant: bool) -> Verdict {
        let (f, g, h) = (self.field(), self.gdim(), self.hdim());
        let (p, q) = (self.base.op(), self.coef.op());
        let run = || -> Result<(), Violation> {
            for x in 0..g {
                for y in 0..g {
                    let (ex, ey) = (vector::unit(f, g, x), vector::unit(f, g, y));
                    let (px, py) = (p.column(x), p.column(y));
                    let (phx, phy) = (self.phi.column(x), self.phi.column(y));
                    let mut acc = self.chi_eval(&px, &py);
                    let (chi_term, bracket, q_psi) = if variant {
                        (
                            self.chi_eval(&ex, &py),
                            self.gbr(&ex, &py),
                            vector::neg(&self.psi[x].apply(&phy)),
                        )
                    } else {
                        (
                            self.chi_eval(&px, &ey),
                            self.gbr(&px, &ey),
                            self.psi[y].apply(&phx),
                        )
                    };
                    acc = vector::sub(&acc, &q.apply(&chi_term));
                    acc = vector::sub(&acc, &self.phi.apply(&bracket));
                    acc = vector::add(&acc, &self.psi_of(&px).apply(&phy));
                    acc = vector::sub(&acc, &self.psi_of(&py).apply(&phx));
                    acc = vector::add(&acc, &q.apply(&q_psi));
                    acc = vector::add(&acc, &self.hbr(&phx, &phy));
                    expect_eq(clause, &[x, y], acc, vector::zeros(f, h))?;
                }
            }
            Ok(())
        };
        run().into()
    }
}

pub fn check_cocycle(c: &NonAbelianCocycle) -> CocycleCheck {
    c.check()
}

/// Outcome of an equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// A map `φ: g -> h` satisfying (E1)–(E3).
    Equivalent(Matrix),
    NotEquivalent,
    /// The search could not decide; the string says why.
    Indeterminate(String),
}

impl Equivalence {
    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            Equivalence::Equivalent(phi) => Some(phi),
            _ => None,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// Largest affine solution space that is searched exhaustively for (E2).
pub const MAX_EQUIVALENCE_SEARCH: u64 = 1 << 20;

fn same_algebras(c1: &NonAbelianCocycle, c2: &NonAbelianCocycle) -> Result<()> {
    if c1.base != c2.base || c1.coef != c2.coef {
        return Err(Error::DifferentAlgebras);
    }
    Ok(())
}

/// Checks that `phi` satisfies (E1)–(E3) for `c1` (unprimed) and `c2` (primed).
pub fn check_equivalence_witness(
    c1: &NonAbelianCocycle,
    c2: &NonAbelianCocycle,
    phi: &Matrix,
) -> Result<Verdict> {
    same_algebras(c1, c2)?;
    let (f, g, h) = (c1.field(), c1.gdim(), c1.hdim());
    check_matrix_shape("phi", f, h, g, phi)?;
    let e = |i: usize| vector::unit(f, g, i);
    let run = || -> Result<(), Violation> {
        for x in 0..g {
            let phx = phi.column(x);
            for k in 0..h {
                let lhs = vector::sub(&c1.psi[x].column(k), &c2.psi[x].column(k));
                expect_eq(
                    "(E1)",
                    &[x, k],
                    lhs,
                    c1.hbr(&phx, &c1.coef.algebra().unit(k)),
                )?;
            }
        }
        for x in 0..g {
            for y in x + 1..g {
                let lhs = vector::sub(&c1.chi_eval(&e(x), &e(y)), &c2.chi_eval(&e(x), &e(y)));
                let (phx, phy) = (phi.column(x), phi.column(y));
                let mut rhs = vector::sub(&c2.psi[x].apply(&phy), &c2.psi[y].apply(&phx));
                rhs = vector::sub(&rhs, &phi.apply(&c1.gbr(&e(x), &e(y))));
                rhs = vector::add(&rhs, &c1.hbr(&phx, &phy));
                expect_eq("(E2)", &[x, y], lhs, rhs)?;
            }
        }
        let lhs = c1.phi.sub(&c2.phi);
        let rhs = c1.coef.op().mul(phi).sub(&phi.mul(c1.base.op()));
        crate::lie::first_column_difference("(E3)", &lhs, &rhs)
    };
    Ok(run().into())
}

/// The linear part of (E1)–(E3) in the unknown `φ` (row-major), as `(A, b)`.
/// (E2) is included only when `include_e2` is set, dropping its quadratic term.
fn linear_system(
    c1: &NonAbelianCocycle,
    c2: &NonAbelianCocycle,
    include_e2: bool,
) -> (Matrix, Vec<Scalar>) {
    let (f, g, h) = (c1.field(), c1.gdim(), c1.hdim());
    let var = |a: usize, x: usize| a * g + x;
    let n = h * g;
    let hc = c1.coef.algebra().structure_constants();
    let gc = c1.base.algebra().structure_constants();
    let (p, q) = (c1.base.op(), c1.coef.op());
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    // (E1): (ψ_x - ψ'_x) e_k = Σ_a φ[a][x] [e_a, e_k]
    for x in 0..g {
        for k in 0..h {
            let diff = vector::sub(&c1.psi[x].column(k), &c2.psi[x].column(k));
            for r in 0..h {
                let mut row = vector::zeros(f, n);
                for a in 0..h {
                    row[var(a, x)] = hc.get(&[a, k, r]).clone();
                }
                rows.push(row);
                rhs.push(diff[r].clone());
            }
        }
    }
    // (E3): (Φ - Φ')[r][x] = Σ_a Q[r][a] φ[a][x] - Σ_b φ[r][b] P[b][x]
    let dphi = c1.phi.sub(&c2.phi);
    for x in 0..g {
        for r in 0..h {
            let mut row = vector::zeros(f, n);
            for a in 0..h {
                row[var(a, x)] += q.get(r, a);
            }
            for b in 0..g {
                row[var(r, b)] -= p.get(b, x);
            }
            rows.push(row);
            rhs.push(dphi.get(r, x).clone());
        }
    }
    if include_e2 {
        // (E2) without [φx, φy]: (χ - χ')(x,y) = ψ'_x φ(y) - ψ'_y φ(x) - φ[x,y]
        for x in 0..g {
            for y in x + 1..g {
                let ex = vector::unit(f, g, x);
                let ey = vector::unit(f, g, y);
                let diff = vector::sub(&c1.chi_eval(&ex, &ey), &c2.chi_eval(&ex, &ey));
                for r in 0..h {
                    let mut row = vector::zeros(f, n);
                    for a in 0..h {
                        row[var(a, y)] += c2.psi[x].get(r, a);
                        row[var(a, x)] -= c2.psi[y].get(r, a);
                    }
                    for b in 0..g {
                        row[var(r, b)] -= gc.get(&[x, y, b]);
                    }
                    rows.push(row);
                    rhs.push(diff[r].clone());
                }
            }
        }
    }
    let m = Matrix::from_vec(f, rows.len(), n, rows.into_iter().flatten().collect());
    (m, rhs)
}

fn phi_from(f: Field, h: usize, g: usize, v: Vec<Scalar>) -> Matrix {
    Matrix::from_vec(f, h, g, v)
}

/// Searches for `φ` with (E1)–(E3), `c1` unprimed and `c2` primed.
///
/// (E1) and (E3) are solved exactly. With abelian `h`, (E2) is linear and
/// joins the same solve. Otherwise the affine solution space is enumerated
/// over `F_p` when it has at most [`MAX_EQUIVALENCE_SEARCH`] points; over `Q`
/// only the canonical particular solution is tried.
pub fn cocycles_equivalent(c1: &NonAbelianCocycle, c2: &NonAbelianCocycle) -> Result<Equivalence> {
    same_algebras(c1, c2)?;
    let (f, g, h) = (c1.field(), c1.gdim(), c1.hdim());
    let abelian = c1.coef.algebra().is_abelian();
    let (a, b) = linear_system(c1, c2, abelian);
    let Some(sol) = a.solve_affine(&b) else {
        return Ok(Equivalence::NotEquivalent);
    };
    let works = |v: &[Scalar]| -> Result<bool> {
        let phi = phi_from(f, h, g, v.to_vec());
        Ok(check_equivalence_witness(c1, c2, &phi)?.is_pass())
    };
    if works(&sol.particular)? {
        return Ok(Equivalence::Equivalent(phi_from(f, h, g, sol.particular)));
    }
    if abelian || sol.kernel.is_empty() {
        return Ok(Equivalence::NotEquivalent);
    }
    let k = sol.kernel.len();
    let Some(order) = f.order() else {
        return Ok(Equivalence::Indeterminate(format!(
            "(E2) is quadratic and the affine solution space of (E1), (E3) has dimension {k} over Q"
        )));
    };
    let size = u32::try_from(k).ok().and_then(|k| order.checked_pow(k));
    if size.is_none_or(|s| s > MAX_EQUIVALENCE_SEARCH) {
        return Ok(Equivalence::Indeterminate(format!(
            "affine solution space of size {order}^{k} exceeds the search limit"
        )));
    }
    let coeffs = enumerate_linear_maps(1, k, f)?;
    for t in coeffs.iter() {
        let mut v = sol.particular.clone();
        for (i, c) in t.entries().iter().enumerate() {
            vector::axpy(&mut v, c, &sol.kernel[i]);
        }
        if works(&v)? {
            return Ok(Equivalence::Equivalent(phi_from(f, h, g, v)));
        }
    }
    Ok(Equivalence::NotEquivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{LieAlgebra, Representation};

    fn f2_line(p: i64) -> AveragingLieAlgebra {
        let f = Field::Prime(2);
        AveragingLieAlgebra::new(LieAlgebra::abelian(f, 1), Matrix::from_i64(f, 1, 1, &[p]))
            .unwrap()
    }

    fn nonabelian(field: Field) -> AveragingLieAlgebra {
        let t = crate::linalg::Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]);
        AveragingLieAlgebra::with_identity(LieAlgebra::new(field, 2, t).unwrap())
    }

    #[test]
    fn representation_with_zero_chi_phi_is_a_cocycle() {
        let g = nonabelian(Field::Rationals);
        let r = Representation::adjoint(&g);
        let h = AveragingLieAlgebra::new(LieAlgebra::abelian(Field::Rationals, 2), r.q().clone())
            .unwrap();
        let c = NonAbelianCocycle::from_action(g, h, r.action().to_vec()).unwrap();
        let check = c.check();
        assert!(check.is_pass(), "{:?}", check.verdict);
        assert!(check.d_variants_agree());
    }

    #[test]
    fn non_homomorphic_action_breaks_a() {
        let f = Field::Rationals;
        let g = nonabelian(f);
        let h = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        let psi = vec![
            Matrix::from_i64(f, 1, 1, &[0]),
            Matrix::from_i64(f, 1, 1, &[1]),
        ];
        let c = NonAbelianCocycle::from_action(g, h, psi).unwrap();
        assert_eq!(c.check().verdict.violation().unwrap().clause, "(A)");
    }

    #[test]
    fn d_and_d1_agree_on_every_f2_line_candidate() {
        let f = Field::Prime(2);
        for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for psi in 0..2 {
                for phi in 0..2 {
                    let c = NonAbelianCocycle::new(
                        f2_line(p),
                        f2_line(q),
                        AltMap::zero(f, 2, 1, 1),
                        vec![Matrix::from_i64(f, 1, 1, &[psi])],
                        Matrix::from_i64(f, 1, 1, &[phi]),
                    )
                    .unwrap();
                    assert!(c.check().d_variants_agree());
                }
            }
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_detects_phi_shift() {
        let f = Field::Prime(3);
        let g = AveragingLieAlgebra::with_identity(LieAlgebra::abelian(f, 1));
        let h = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        let c1 = NonAbelianCocycle::from_action(g.clone(), h.clone(), vec![Matrix::zeros(f, 1, 1)])
            .unwrap();
        assert_eq!(
            cocycles_equivalent(&c1, &c1).unwrap(),
            Equivalence::Equivalent(Matrix::zeros(f, 1, 1))
        );
        // Φ - Φ' = Qφ - φP = -φ with P = 1, Q = 0.
        let mut c2 = c1.clone();
        c2.phi = Matrix::from_i64(f, 1, 1, &[2]);
        let found = cocycles_equivalent(&c1, &c2).unwrap();
        assert_eq!(
            found,
            Equivalence::Equivalent(Matrix::from_i64(f, 1, 1, &[2]))
        );
        assert!(
            check_equivalence_witness(&c1, &c2, found.witness().unwrap())
                .unwrap()
                .is_pass()
        );
    }

    #[test]
    fn inequivalent_f2_line_cocycles_have_no_phi() {
        // P = 0, Q = 0: (E3) forces Φ = Φ', so Φ = 0 and Φ = 1 are inequivalent.
        let f = Field::Prime(2);
        let c1 =
            NonAbelianCocycle::from_action(f2_line(0), f2_line(0), vec![Matrix::zeros(f, 1, 1)])
                .unwrap();
        let mut c2 = c1.clone();
        c2.phi = Matrix::from_i64(f, 1, 1, &[1]);
        assert!(c2.check().is_pass());
        assert_eq!(
            cocycles_equivalent(&c1, &c2).unwrap(),
            Equivalence::NotEquivalent
        );
        for phi in enumerate_linear_maps(1, 1, f).unwrap().iter() {
            assert!(!check_equivalence_witness(&c1, &c2, &phi).unwrap().is_pass());
        }
    }

    /// `h = span(a, b) ⊕ span(z)` with `[a, b] = b` and `z` central; `g` abelian
    /// of dim 2, all operators zero, `χ(e_0, e_1) = z` against the zero cocycle.
    /// (E1) only pins `φ` modulo maps into the centre, where (E2) cannot be met.
    fn central_chi_pair(f: Field) -> (NonAbelianCocycle, NonAbelianCocycle) {
        let g = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 2));
        let h_alg = LieAlgebra::from_basis_brackets(f, 3, |i, j| match (i, j) {
            (0, 1) => vec![f.zero(), f.one(), f.zero()],
            (1, 0) => vec![f.zero(), f.from_i64(-1), f.zero()],
            _ => vec![f.zero(); 3],
        })
        .unwrap();
        let h = AveragingLieAlgebra::with_zero(h_alg);
        let zero = NonAbelianCocycle::from_action(g, h, vec![Matrix::zeros(f, 3, 3); 2]).unwrap();
        let mut central = zero.clone();
        central.chi = AltMap::from_vec(f, 2, 2, 3, vec![f.zero(), f.zero(), f.one()]);
        assert!(central.check().is_pass());
        (central, zero)
    }

    #[test]
    fn quadratic_obstruction_is_indeterminate_over_q() {
        let (c1, c2) = central_chi_pair(Field::Rationals);
        assert!(matches!(
            cocycles_equivalent(&c1, &c2).unwrap(),
            Equivalence::Indeterminate(_)
        ));
    }

    #[test]
    fn quadratic_obstruction_is_decided_over_f3() {
        let (c1, c2) = central_chi_pair(Field::Prime(3));
        assert_eq!(
            cocycles_equivalent(&c1, &c2).unwrap(),
            Equivalence::NotEquivalent
        );
    }
}
