use crate::error::{Error, Result};
use crate::lie::{check_matrix_shape, first_column_difference, AveragingLieAlgebra};
use crate::linalg::{Matrix, Scalar};
use crate::multilinear::{combinations, AltMap};
use crate::verdict::{Verdict, Violation};

use super::cocycle::{cocycles_equivalent, Equivalence, NonAbelianCocycle};
use super::extension::{extract_cocycle, prefixed, ExtensionData};

/// A pair `(β, α) ∈ Aut(h_Q) × Aut(g_P)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutomorphismPair {
    pub beta: Matrix,
    pub alpha: Matrix,
}

impl AutomorphismPair {
    pub fn identity(g: &AveragingLieAlgebra, h: &AveragingLieAlgebra) -> Self {
        AutomorphismPair {
            beta: Matrix::identity(h.field(), h.dim()),
            alpha: Matrix::identity(g.field(), g.dim()),
        }
    }

    /// Checks that `β` and `α` are averaging automorphisms of `h_Q` and `g_P`.
    pub fn check(&self, g: &AveragingLieAlgebra, h: &AveragingLieAlgebra) -> Result<Verdict> {
        check_matrix_shape("beta", h.field(), h.dim(), h.dim(), &self.beta)?;
        check_matrix_shape("alpha", g.field(), g.dim(), g.dim(), &self.alpha)?;
        if let Verdict::Fail(v) = h.check_automorphism(&self.beta) {
            return Ok(Verdict::Fail(prefixed("beta", v)));
        }
        Ok(match g.check_automorphism(&self.alpha) {
            Verdict::Fail(v) => Verdict::Fail(prefixed("alpha", v)),
            Verdict::Pass => Verdict::Pass,
        })
    }

    fn require(&self, g: &AveragingLieAlgebra, h: &AveragingLieAlgebra) -> Result<()> {
        match self.check(g, h)? {
            Verdict::Pass => Ok(()),
            Verdict::Fail(v) => Err(Error::NotAutomorphisms(v)),
        }
    }

    pub fn inverse(&self) -> Option<AutomorphismPair> {
        Some(AutomorphismPair {
            beta: self.beta.inverse()?,
            alpha: self.alpha.inverse()?,
        })
    }
}

/// `(χ, ψ, Φ)` transformed by `(β, α)` without checking the result.
pub(crate) fn transform_unchecked(
    pair: &AutomorphismPair,
    c: &NonAbelianCocycle,
) -> NonAbelianCocycle {
    let (f, g, h) = (c.field(), c.gdim(), c.hdim());
    let ai = pair.alpha.inverse().expect("alpha is invertible");
    let bi = pair.beta.inverse().expect("beta is invertible");
    let ai_cols = ai.columns();
    let mut chi_data = Vec::new();
    for t in combinations(g, 2) {
        chi_data.extend(pair.beta.apply(&c.chi_eval(&ai_cols[t[0]], &ai_cols[t[1]])));
    }
    let psi = ai_cols
        .iter()
        .map(|x| pair.beta.mul(&c.psi_of(x)).mul(&bi))
        .collect();
    NonAbelianCocycle {
        base: c.base.clone(),
        coef: c.coef.clone(),
        chi: AltMap::from_vec(f, 2, g, h, chi_data),
        psi,
        phi: pair.beta.mul(&c.phi).mul(&ai),
    }
}

/// `χ' = β χ(α⁻¹·, α⁻¹·)`, `ψ'_x = β ψ_{α⁻¹x} β⁻¹`, `Φ' = β Φ α⁻¹`; the result is re-checked.
pub fn transform_cocycle(
    pair: &AutomorphismPair,
    c: &NonAbelianCocycle,
) -> Result<NonAbelianCocycle> {
    pair.require(&c.base, &c.coef)?;
    let t = transform_unchecked(pair, c);
    if let Verdict::Fail(v) = t.check().verdict {
        return Err(Error::Inconsistent(format!(
            "transformed cocycle fails {v}"
        )));
    }
    Ok(t)
}

/// Componentwise difference of two cocycles over the same algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleDifference {
    pub chi: AltMap,
    pub psi: Vec<Matrix>,
    pub phi: Matrix,
}

impl CocycleDifference {
    pub fn between(a: &NonAbelianCocycle, b: &NonAbelianCocycle) -> Self {
        CocycleDifference {
            chi: a.chi.sub(&b.chi),
            psi: a.psi.iter().zip(&b.psi).map(|(x, y)| x.sub(y)).collect(),
            phi: a.phi.sub(&b.phi),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.chi.is_zero() && self.psi.iter().all(Matrix::is_zero) && self.phi.is_zero()
    }
}

/// The Wells class of a pair: the transformed-minus-original difference and
/// whether the two cocycles are equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellsClass {
    pub section: Matrix,
    pub original: NonAbelianCocycle,
    pub transformed: NonAbelianCocycle,
    pub difference: CocycleDifference,
    pub outcome: Equivalence,
}

impl WellsClass {
    /// `Some(true)` when a witness was found, `None` when undecided.
    pub fn inducible(&self) -> Option<bool> {
        match self.outcome {
            Equivalence::Equivalent(_) => Some(true),
            Equivalence::NotEquivalent => Some(false),
            Equivalence::Indeterminate(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Matrix> {
        self.outcome.witness()
    }
}

/// [`wells_class_with_section`] at the default section.
pub fn wells_class(pair: &AutomorphismPair, e: &ExtensionData) -> Result<WellsClass> {
    wells_class_with_section(pair, e, &e.default_section())
}

/// Extracts `(χ, ψ, Φ)` along `s`, transforms it by the pair and searches for
/// `φ` with the transformed cocycle unprimed and the original primed in (E1)–(E3).
pub fn wells_class_with_section(
    pair: &AutomorphismPair,
    e: &ExtensionData,
    s: &Matrix,
) -> Result<WellsClass> {
    let original = extract_cocycle(e, s)?;
    let transformed = transform_cocycle(pair, &original)?;
    let outcome = cocycles_equivalent(&transformed, &original)?;
    Ok(WellsClass {
        section: s.clone(),
        difference: CocycleDifference::between(&transformed, &original),
        original,
        transformed,
        outcome,
    })
}

/// [`lift_automorphism_with_section`] at the default section.
pub fn lift_automorphism(
    pair: &AutomorphismPair,
    e: &ExtensionData,
    phi: &Matrix,
) -> Result<Matrix> {
    lift_automorphism_with_section(pair, e, &e.default_section(), phi)
}

/// `γ(h + s(x)) = β(h) + φα(x) + s(α(x))`, verified to be an averaging
/// automorphism with `γ|_h = β` and `p γ s = α`.
pub fn lift_automorphism_with_section(
    pair: &AutomorphismPair,
    e: &ExtensionData,
    s: &Matrix,
    phi: &Matrix,
) -> Result<Matrix> {
    pair.require(e.base(), e.coef())?;
    let (f, g, h) = (e.field(), e.gdim(), e.hdim());
    check_matrix_shape("phi", f, h, g, phi)?;
    let tau = e.frame(s)?;
    let tau_inv = tau
        .inverse()
        .expect("[s | i] is invertible for an extension");
    let phi_alpha = phi.mul(&pair.alpha);
    let n = g + h;
    let block = Matrix::from_fn(f, n, n, |r, c| match (r < g, c < g) {
        (true, true) => pair.alpha.get(r, c).clone(),
        (false, true) => phi_alpha.get(r - g, c).clone(),
        (false, false) => pair.beta.get(r - g, c - g).clone(),
        (true, false) => f.zero(),
    });
    let gamma = tau.mul(&block).mul(&tau_inv);
    if let Verdict::Fail(v) = e.total().check_automorphism(&gamma) {
        return Err(Error::NotAWitness(prefixed("gamma", v)));
    }
    let run = || -> Result<(), Violation> {
        first_column_difference("restriction", &gamma.mul(e.i()), &e.i().mul(&pair.beta))?;
        first_column_difference("projection", &e.p().mul(&gamma).mul(s), &pair.alpha)
    };
    run().map_err(Error::NotAWitness)?;
    Ok(gamma)
}

/// Whether `γ` is an averaging automorphism of `e_U` preserving `im i`.
pub fn check_restrictable(e: &ExtensionData, gamma: &Matrix) -> Result<Verdict> {
    let n = e.total().dim();
    check_matrix_shape("gamma", e.field(), n, n, gamma)?;
    if let Verdict::Fail(v) = e.total().check_automorphism(gamma) {
        return Ok(Verdict::Fail(v));
    }
    let image = gamma.mul(e.i());
    for (k, col) in image.columns().iter().enumerate() {
        if !e.in_kernel(col) {
            return Ok(Verdict::Fail(Violation::new(
                "kernel-preserving",
                &[k],
                col.clone(),
                Vec::new(),
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// [`project_automorphism_with_section`] at the default section.
pub fn project_automorphism(e: &ExtensionData, gamma: &Matrix) -> Result<AutomorphismPair> {
    project_automorphism_with_section(e, gamma, &e.default_section())
}

/// `Π(γ) = (γ|_h, p γ s)`.
pub fn project_automorphism_with_section(
    e: &ExtensionData,
    gamma: &Matrix,
    s: &Matrix,
) -> Result<AutomorphismPair> {
    match check_restrictable(e, gamma)? {
        Verdict::Pass => {}
        Verdict::Fail(v) if v.clause == "kernel-preserving" => return Err(Error::NotRestrictable),
        Verdict::Fail(v) => return Err(Error::NotAnAutomorphism(v)),
    }
    e.frame(s)?;
    let image = gamma.mul(e.i());
    let cols: Vec<Vec<Scalar>> = image
        .columns()
        .iter()
        .map(|c| e.kernel_coordinates(c))
        .collect::<Result<_>>()?;
    Ok(AutomorphismPair {
        beta: Matrix::from_columns(e.field(), e.hdim(), &cols),
        alpha: e.p().mul(gamma).mul(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::build_extension;
    use crate::lie::{LieAlgebra, Representation};
    use crate::linalg::{Field, Tensor};

    fn adjoint_extension(f: Field) -> ExtensionData {
        let alg = LieAlgebra::new(
            f,
            2,
            Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
        )
        .unwrap();
        let g = AveragingLieAlgebra::with_identity(alg);
        let r = Representation::adjoint(&g);
        let h = AveragingLieAlgebra::new(LieAlgebra::abelian(f, 2), r.q().clone()).unwrap();
        build_extension(&NonAbelianCocycle::from_action(g, h, r.action().to_vec()).unwrap())
            .unwrap()
    }

    #[test]
    fn identity_pair_is_inducible_with_identity_lift() {
        let e = adjoint_extension(Field::Prime(3));
        let pair = AutomorphismPair::identity(e.base(), e.coef());
        let w = wells_class(&pair, &e).unwrap();
        assert!(w.difference.is_zero());
        assert_eq!(w.inducible(), Some(true));
        let gamma = lift_automorphism(&pair, &e, w.witness().unwrap()).unwrap();
        assert!(gamma.is_identity());
        assert_eq!(project_automorphism(&e, &gamma).unwrap(), pair);
    }

    #[test]
    fn transform_then_inverse_is_identity() {
        let f = Field::Prime(5);
        let e = adjoint_extension(f);
        let c = extract_cocycle(&e, &e.default_section()).unwrap();
        // x ↦ e_1 scaled: (e0, e1) ↦ (e0, 2 e1) is an automorphism of the 2-dim algebra;
        // on h = g as a module, β = α intertwines the adjoint action.
        let alpha = Matrix::from_i64(f, 2, 2, &[1, 0, 0, 2]);
        let pair = AutomorphismPair {
            beta: alpha.clone(),
            alpha,
        };
        let t = transform_cocycle(&pair, &c).unwrap();
        assert_eq!(transform_cocycle(&pair.inverse().unwrap(), &t).unwrap(), c);
    }

    #[test]
    fn projection_of_a_lift_returns_the_pair() {
        let f = Field::Prime(5);
        let e = adjoint_extension(f);
        let alpha = Matrix::from_i64(f, 2, 2, &[1, 0, 3, 1]);
        let pair = AutomorphismPair {
            beta: alpha.clone(),
            alpha,
        };
        assert!(pair.check(e.base(), e.coef()).unwrap().is_pass());
        let w = wells_class(&pair, &e).unwrap();
        let phi = w
            .witness()
            .expect("split extension: every compatible pair lifts");
        let gamma = lift_automorphism(&pair, &e, phi).unwrap();
        assert_eq!(project_automorphism(&e, &gamma).unwrap(), pair);
        let s2 = e
            .default_section()
            .add(&e.i().mul(&Matrix::from_i64(f, 2, 2, &[1, 1, 0, 2])));
        assert_eq!(
            project_automorphism_with_section(&e, &gamma, &s2).unwrap(),
            pair
        );
        assert_eq!(
            wells_class_with_section(&pair, &e, &s2)
                .unwrap()
                .inducible(),
            Some(true)
        );
    }

    #[test]
    fn swap_of_g_and_h_is_not_restrictable() {
        let f = Field::Prime(3);
        let g = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        let h = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        let e = build_extension(
            &NonAbelianCocycle::from_action(g, h, vec![Matrix::zeros(f, 1, 1)]).unwrap(),
        )
        .unwrap();
        let swap = Matrix::from_i64(f, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(project_automorphism(&e, &swap), Err(Error::NotRestrictable));
    }
}
