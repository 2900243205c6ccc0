use crate::error::{Error, Result};
use crate::lie::{check_matrix_shape, first_column_difference, AveragingLieAlgebra, LieAlgebra};
use crate::linalg::{vector, Field, Matrix, Scalar};
use crate::multilinear::{combinations, AltMap};
use crate::verdict::{Verdict, Violation};

use super::cocycle::NonAbelianCocycle;

pub(crate) fn prefixed(prefix: &str, v: Violation) -> Violation {
    Violation {
        clause: format!("{prefix}: {}", v.clause),
        ..v
    }
}

/// A short exact sequence `0 -> h_Q --i--> e_U --p--> g_P -> 0`, with an optional section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    base: AveragingLieAlgebra,
    coef: AveragingLieAlgebra,
    total: AveragingLieAlgebra,
    i: Matrix,
    p: Matrix,
    s: Option<Matrix>,
    i_left: Matrix,
}

impl ExtensionData {
    /// Validates exactness and the morphism conditions; a supplied section must satisfy `p s = Id`.
    pub fn new(
        base: AveragingLieAlgebra,
        coef: AveragingLieAlgebra,
        total: AveragingLieAlgebra,
        i: Matrix,
        p: Matrix,
        s: Option<Matrix>,
    ) -> Result<Self> {
        let f = total.field();
        let (g, h, n) = (base.dim(), coef.dim(), total.dim());
        for (what, a) in [("base", &base), ("coefficients", &coef)] {
            if a.field() != f {
                return Err(Error::FieldMismatch {
                    expected: f.to_string(),
                    found: format!("{} for {what}", a.field()),
                });
            }
        }
        if n != g + h {
            return Err(Error::DimensionMismatch {
                what: "extension".into(),
                expected: format!("dim e = {}", g + h),
                found: n.to_string(),
            });
        }
        check_matrix_shape("i", f, n, h, &i)?;
        check_matrix_shape("p", f, g, n, &p)?;
        if let Verdict::Fail(v) = coef.check_morphism(&total, &i) {
            return Err(Error::NotAnExtension(prefixed("i", v)));
        }
        if let Verdict::Fail(v) = total.check_morphism(&base, &p) {
            return Err(Error::NotAnExtension(prefixed("p", v)));
        }
        if i.rank() != h {
            return Err(Error::NotAnExtension(Violation::structural(
                "i-injective",
                &[],
            )));
        }
        if p.rank() != g {
            return Err(Error::NotAnExtension(Violation::structural(
                "p-surjective",
                &[],
            )));
        }
        let zero = Matrix::zeros(f, g, h);
        first_column_difference("exactness", &p.mul(&i), &zero).map_err(Error::NotAnExtension)?;
        if let Verdict::Fail(v) = total.check_operator_ideal(&i) {
            return Err(Error::NotAnExtension(v));
        }
        if let Some(s) = &s {
            check_section(&p, s)?;
        }
        let default = default_section(&p)?;
        let tau_inv = default
            .hstack(&i)
            .inverse()
            .expect("a section and an injective kernel span e");
        let i_left = Matrix::from_fn(f, h, n, |r, c| tau_inv.get(g + r, c).clone());
        Ok(ExtensionData {
            base,
            coef,
            total,
            i,
            p,
            s,
            i_left,
        })
    }

    pub fn base(&self) -> &AveragingLieAlgebra {
        &self.base
    }

    pub fn coef(&self) -> &AveragingLieAlgebra {
        &self.coef
    }

    pub fn total(&self) -> &AveragingLieAlgebra {
        &self.total
    }

    pub fn i(&self) -> &Matrix {
        &self.i
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn section(&self) -> Option<&Matrix> {
        self.s.as_ref()
    }

    pub fn with_section(mut self, s: Matrix) -> Result<Self> {
        check_section(&self.p, &s)?;
        self.s = Some(s);
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.total.field()
    }

    pub fn gdim(&self) -> usize {
        self.base.dim()
    }

    pub fn hdim(&self) -> usize {
        self.coef.dim()
    }

    /// The stored section if present, else [`default_section`].
    pub fn section_or_default(&self) -> Matrix {
        self.s.clone().unwrap_or_else(|| self.default_section())
    }

    pub fn default_section(&self) -> Matrix {
        default_section(&self.p).expect("p was checked to be surjective")
    }

    /// The `h`-coordinates of `v`, which must lie in `ker p = im i`.
    pub fn kernel_coordinates(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if !vector::is_zero(&self.p.apply(v)) {
            return Err(Error::ValueOutsideKernel);
        }
        Ok(self.i_left.apply(v))
    }

    /// Whether `v ∈ im i`.
    pub fn in_kernel(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.p.apply(v))
    }

    /// `τ = [s | i]`, sending `(x, h)` to `s(x) + i(h)`.
    pub fn frame(&self, s: &Matrix) -> Result<Matrix> {
        check_section(&self.p, s)?;
        Ok(s.hstack(&self.i))
    }
}

fn check_section(p: &Matrix, s: &Matrix) -> Result<()> {
    if (s.rows(), s.cols()) != (p.cols(), p.rows())
        || s.field() != p.field()
        || !p.mul(s).is_identity()
    {
        return Err(Error::NotASection);
    }
    Ok(())
}

/// The right inverse of `p` sending each basis vector to its canonical
/// preimage: pivot coordinates of the RREF solved, free coordinates zero.
pub fn default_section(p: &Matrix) -> Result<Matrix> {
    let f = p.field();
    let mut columns = Vec::with_capacity(p.rows());
    for j in 0..p.rows() {
        let sol = p
            .solve_affine(&vector::unit(f, p.rows(), j))
            .ok_or(Error::NotSurjective)?;
        columns.push(sol.particular);
    }
    Ok(Matrix::from_columns(f, p.cols(), &columns))
}

/// `e = g ⊕ h` with `[(x,h),(y,k)] = ([x,y], ψ_x k - ψ_y h + χ(x,y) + [h,k])`,
/// `U(x,h) = (Px, Qh + Φx)`, `i(h) = (0,h)`, `p(x,h) = x` and `s(x) = (x,0)`.
pub fn build_extension(c: &NonAbelianCocycle) -> Result<ExtensionData> {
    if let Verdict::Fail(v) = c.check().verdict {
        return Err(Error::NotACocycle(v));
    }
    let (f, g, h) = (c.field(), c.gdim(), c.hdim());
    let n = g + h;
    let split = |u: usize| -> (Vec<Scalar>, Vec<Scalar>) {
        let e = vector::unit(f, n, u);
        (e[..g].to_vec(), e[g..].to_vec())
    };
    let algebra = LieAlgebra::from_basis_brackets(f, n, |u, v| {
        let ((x, hh), (y, k)) = (split(u), split(v));
        let mut second = vector::sub(&c.psi_of(&x).apply(&k), &c.psi_of(&y).apply(&hh));
        second = vector::add(&second, &c.chi_eval(&x, &y));
        second = vector::add(&second, &c.coef.bracket(&hh, &k));
        let mut out = c.base.bracket(&x, &y);
        out.extend(second);
        out
    })
    .map_err(|e| Error::Inconsistent(format!("extension bracket of a valid cocycle: {e}")))?;
    let (pm, qm) = (c.base.op(), c.coef.op());
    let u = Matrix::from_fn(f, n, n, |r, col| match (r < g, col < g) {
        (true, true) => pm.get(r, col).clone(),
        (false, true) => c.phi.get(r - g, col).clone(),
        (false, false) => qm.get(r - g, col - g).clone(),
        (true, false) => f.zero(),
    });
    let total = AveragingLieAlgebra::new(algebra, u)
        .map_err(|e| Error::Inconsistent(format!("extension operator of a valid cocycle: {e}")))?;
    let i = Matrix::from_fn(
        f,
        n,
        h,
        |r, col| if r == g + col { f.one() } else { f.zero() },
    );
    let p = Matrix::from_fn(f, g, n, |r, col| if r == col { f.one() } else { f.zero() });
    let s = p.transpose();
    ExtensionData::new(c.base.clone(), c.coef.clone(), total, i, p, Some(s))
        .map_err(|e| Error::Inconsistent(format!("built extension fails validation: {e}")))
}

/// `χ(x,y) = [sx,sy] - s[x,y]`, `ψ_x h = [sx,h]`, `Φ(x) = U(sx) - s(Px)`, read through `i`.
pub fn extract_cocycle(e: &ExtensionData, s: &Matrix) -> Result<NonAbelianCocycle> {
    check_section(&e.p, s)?;
    let (f, g, h) = (e.field(), e.gdim(), e.hdim());
    let total = &e.total;
    let sx: Vec<Vec<Scalar>> = s.columns();
    let mut chi_data = Vec::new();
    for t in combinations(g, 2) {
        let v = vector::sub(
            &total.bracket(&sx[t[0]], &sx[t[1]]),
            &s.apply(e.base.algebra().bracket_basis(t[0], t[1])),
        );
        chi_data.extend(e.kernel_coordinates(&v)?);
    }
    let chi = AltMap::from_vec(f, 2, g, h, chi_data);
    let mut psi = Vec::with_capacity(g);
    for x in &sx {
        let mut cols = Vec::with_capacity(h);
        for k in 0..h {
            cols.push(e.kernel_coordinates(&total.bracket(x, &e.i.column(k)))?);
        }
        psi.push(Matrix::from_columns(f, h, &cols));
    }
    let mut phi_cols = Vec::with_capacity(g);
    for (x, col) in sx.iter().enumerate() {
        let v = vector::sub(&total.op().apply(col), &s.apply(&e.base.op().column(x)));
        phi_cols.push(e.kernel_coordinates(&v)?);
    }
    let phi = Matrix::from_columns(f, h, &phi_cols);
    let c = NonAbelianCocycle::new(e.base.clone(), e.coef.clone(), chi, psi, phi)?;
    if let Verdict::Fail(v) = c.check().verdict {
        return Err(Error::Inconsistent(format!("extracted cocycle fails {v}")));
    }
    Ok(c)
}

/// Checks that `tau: e1 -> e2` is an averaging morphism with `tau i1 = i2` and `p2 tau = p1`.
pub fn check_extension_equivalence(
    e1: &ExtensionData,
    e2: &ExtensionData,
    tau: &Matrix,
) -> Result<Verdict> {
    if e1.base != e2.base || e1.coef != e2.coef {
        return Err(Error::DifferentAlgebras);
    }
    let n = e1.total.dim();
    check_matrix_shape("tau", e1.field(), n, n, tau)?;
    if let Verdict::Fail(v) = e1.total.check_morphism(&e2.total, tau) {
        return Ok(Verdict::Fail(prefixed("tau", v)));
    }
    let run = || -> Result<(), Violation> {
        first_column_difference("i-commuting", &tau.mul(&e1.i), &e2.i)?;
        first_column_difference("p-commuting", &e2.p.mul(tau), &e1.p)
    };
    Ok(run().into())
}

/// `τ = [s | i]` from the extension rebuilt out of `extract_cocycle(e, s)` back to `e`,
/// verified to be an invertible equivalence of extensions.
pub fn reconstruction_isomorphism(e: &ExtensionData, s: &Matrix) -> Result<Matrix> {
    let rebuilt = build_extension(&extract_cocycle(e, s)?)?;
    let tau = e.frame(s)?;
    if !tau.is_invertible() {
        return Err(Error::Inconsistent("[s | i] is not invertible".into()));
    }
    if let Verdict::Fail(v) = check_extension_equivalence(&rebuilt, e, &tau)? {
        return Err(Error::Inconsistent(format!("reconstruction map fails {v}")));
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Representation;
    use crate::linalg::Tensor;
    use crate::multilinear::AltMap;

    fn nonabelian(field: Field) -> LieAlgebra {
        LieAlgebra::new(
            field,
            2,
            Tensor::from_i64(field, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
        )
        .unwrap()
    }

    fn adjoint_cocycle(f: Field) -> NonAbelianCocycle {
        let g = AveragingLieAlgebra::with_identity(nonabelian(f));
        let r = Representation::adjoint(&g);
        let h = AveragingLieAlgebra::new(LieAlgebra::abelian(f, 2), r.q().clone()).unwrap();
        NonAbelianCocycle::from_action(g, h, r.action().to_vec()).unwrap()
    }

    #[test]
    fn zero_cocycle_builds_the_semidirect_product() {
        let f = Field::Rationals;
        let c = adjoint_cocycle(f);
        let e = build_extension(&c).unwrap();
        let expected = crate::lie::semidirect_product(c.base.algebra(), &c.psi, 2).unwrap();
        assert_eq!(e.total().algebra(), &expected);
        assert_eq!(e.total().op(), &c.base.op().direct_sum(c.coef.op()));
    }

    #[test]
    fn extract_inverts_build() {
        let c = adjoint_cocycle(Field::Prime(3));
        let e = build_extension(&c).unwrap();
        assert_eq!(extract_cocycle(&e, e.section().unwrap()).unwrap(), c);
        assert_eq!(&e.default_section(), e.section().unwrap());
    }

    #[test]
    fn default_section_of_permuted_projection() {
        let f = Field::Rationals;
        let p = Matrix::from_i64(f, 2, 3, &[0, 1, 0, 0, 0, 1]);
        let s = default_section(&p).unwrap();
        assert_eq!(s, Matrix::from_i64(f, 3, 2, &[0, 0, 1, 0, 0, 1]));
        assert!(p.mul(&s).is_identity());
        assert_eq!(
            default_section(&Matrix::zeros(f, 1, 2)),
            Err(Error::NotSurjective)
        );
    }

    #[test]
    fn two_sections_give_equivalent_cocycles() {
        let f = Field::Prime(5);
        let c = adjoint_cocycle(f);
        let e = build_extension(&c).unwrap();
        let s = e.default_section();
        let shift = Matrix::from_i64(f, 2, 2, &[1, 2, 0, 3]);
        let s2 = s.add(&e.i().mul(&shift));
        let c2 = extract_cocycle(&e, &s2).unwrap();
        // φ = s - s' read in h-coordinates
        let phi = shift.neg();
        assert!(
            super::super::cocycle::check_equivalence_witness(&c, &c2, &phi)
                .unwrap()
                .is_pass()
        );
    }

    #[test]
    fn reconstruction_map_is_an_equivalence() {
        let f = Field::Prime(3);
        let mut c = adjoint_cocycle(f);
        c.chi = AltMap::zero(f, 2, 2, 2);
        let e = build_extension(&c).unwrap();
        let s2 = e
            .default_section()
            .add(&e.i().mul(&Matrix::from_i64(f, 2, 2, &[1, 0, 1, 1])));
        let tau = reconstruction_isomorphism(&e, &s2).unwrap();
        assert!(tau.is_invertible());
    }

    #[test]
    fn broken_projection_is_rejected() {
        let f = Field::Rationals;
        let c = adjoint_cocycle(f);
        let e = build_extension(&c).unwrap();
        let bad_p = Matrix::from_i64(f, 2, 4, &[1, 0, 1, 0, 0, 1, 0, 0]);
        let err = ExtensionData::new(
            c.base.clone(),
            c.coef.clone(),
            e.total().clone(),
            e.i().clone(),
            bad_p,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAnExtension(_)));
    }
}
