use crate::cohomology::{is_coboundary, is_cocycle, Cochain};
use crate::error::{Error, Result};
use crate::lie::Representation;
use crate::linalg::Matrix;
use crate::multilinear::DenseMap;
use crate::verdict::{expect_eq, Verdict, Violation};

use super::enumerate::{enumerate_automorphisms, enumerate_restrictable, is_kernel_element};
use super::extension::{extract_cocycle, ExtensionData};
use super::wells::{
    check_restrictable, project_automorphism_with_section, transform_unchecked, AutomorphismPair,
};

/// `β(ψ_x h) = ψ_{α(x)} β(h)` on basis pairs (clause "compatible").
pub fn check_compatible_pair(pair: &AutomorphismPair, r: &Representation) -> Verdict {
    let run = || -> Result<(), Violation> {
        for x in 0..r.base().dim() {
            let lhs = pair.beta.mul(&r.action()[x]);
            let rhs = r.action_matrix(&pair.alpha.column(x)).mul(&pair.beta);
            for k in 0..r.vdim() {
                expect_eq("compatible", &[x, k], lhs.column(k), rhs.column(k))?;
            }
        }
        Ok(())
    };
    run().into()
}

fn require_abelian(e: &ExtensionData) -> Result<()> {
    if e.coef().algebra().is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

/// The representation `ψ_x h = [s(x), h]` on abelian `h`, with `Q` from `h_Q`.
pub fn induced_representation(e: &ExtensionData) -> Result<Representation> {
    require_abelian(e)?;
    let c = extract_cocycle(e, &e.default_section())?;
    let r = Representation::new(e.base().clone(), e.hdim(), c.psi, e.coef().op().clone())?;
    if let Verdict::Fail(v) = r.check() {
        return Err(Error::Inconsistent(format!(
            "induced action is not a representation: {v}"
        )));
    }
    Ok(r)
}

/// Checks that `e` is an abelian extension inducing exactly the representation `r`.
pub fn check_abelian_extension(e: &ExtensionData, r: &Representation) -> Result<()> {
    let induced = induced_representation(e)?;
    if r.base() != e.base() || r.vdim() != e.hdim() {
        return Err(Error::DifferentAlgebras);
    }
    crate::lie::first_column_difference("Q", r.q(), induced.q())
        .map_err(Error::RepresentationMismatch)?;
    for x in 0..r.base().dim() {
        if let Err(v) =
            crate::lie::first_column_difference("action", &r.action()[x], &induced.action()[x])
        {
            return Err(Error::RepresentationMismatch(Violation {
                indices: vec![x, v.indices[0]],
                ..v
            }));
        }
    }
    Ok(())
}

/// The abelian Wells class of a compatible pair as a degree-2 cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianWells {
    pub representation: Representation,
    pub class: Cochain,
    /// A degree-1 cochain `φ` with `δφ = class`, when the class is zero.
    pub witness: Option<Cochain>,
}

impl AbelianWells {
    pub fn is_zero_class(&self) -> bool {
        self.witness.is_some()
    }
}

/// `[(χ_{(β,α)}, Φ_{(β,α)}) - (χ, Φ)]` in `H²` of the induced representation.
pub fn abelian_wells(pair: &AutomorphismPair, e: &ExtensionData) -> Result<AbelianWells> {
    let r = induced_representation(e)?;
    if let Verdict::Fail(v) = pair.check(e.base(), e.coef())? {
        return Err(Error::NotAutomorphisms(v));
    }
    if let Verdict::Fail(v) = check_compatible_pair(pair, &r) {
        return Err(Error::NotCompatible(v));
    }
    let original = extract_cocycle(e, &e.default_section())?;
    let transformed = transform_unchecked(pair, &original);
    let (f, g, h) = (e.field(), e.gdim(), e.hdim());
    let dphi = transformed.phi.sub(&original.phi);
    let theta = DenseMap::from_fn(f, 1, g, h, |t| dphi.column(t[0]));
    let class = Cochain::new(2, transformed.chi.sub(&original.chi), Some(theta))?;
    if !is_cocycle(&r, &class) {
        return Err(Error::Inconsistent(
            "difference of compatible transforms is not a 2-cocycle".into(),
        ));
    }
    let witness = is_coboundary(&r, &class)?;
    Ok(AbelianWells {
        representation: r,
        class,
        witness,
    })
}

/// `ρ(β, α)(x, h) = (α(x), β(h))` in the frame `[s | i]`.
pub fn semidirect_splitting(
    e: &ExtensionData,
    s: &Matrix,
    pair: &AutomorphismPair,
) -> Result<Matrix> {
    let tau = e.frame(s)?;
    let tau_inv = tau
        .inverse()
        .expect("[s | i] is invertible for an extension");
    Ok(tau.mul(&pair.alpha.direct_sum(&pair.beta)).mul(&tau_inv))
}

/// Finite-field counts behind the split decomposition of `Aut_h(e_U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCounts {
    pub restrictable: usize,
    pub compatible: usize,
    pub kernel: usize,
    /// Pairs in `C_ψ` for which `ρ(β, α)` is not in `Aut_h(e_U)` or `Π ρ(β, α) ≠ (β, α)`.
    pub splitting_failures: Vec<AutomorphismPair>,
}

impl SplitCounts {
    pub fn holds(&self) -> bool {
        self.splitting_failures.is_empty() && self.restrictable == self.compatible * self.kernel
    }
}

/// Outcome of [`check_split_semidirect`]; `counts` is present when the
/// automorphism groups were small enough to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAudit {
    pub counts: Option<SplitCounts>,
}

impl SplitAudit {
    pub fn verdict(&self) -> Verdict {
        match &self.counts {
            Some(c) if !c.splitting_failures.is_empty() => {
                Verdict::Fail(Violation::structural("splitting", &[]))
            }
            Some(c) if !c.holds() => Verdict::Fail(Violation::structural(
                "order",
                &[c.restrictable, c.compatible, c.kernel],
            )),
            _ => Verdict::Pass,
        }
    }
}

/// For an abelian extension with a section `s` that is an averaging morphism:
/// confirms `(χ, Φ) = (0, 0)` along `s`, and over small prime fields checks
/// `Π ρ = Id` on `C_ψ` and `|Aut_h(e_U)| = |C_ψ| · |Aut^{h,g}_h(e_U)|`.
pub fn check_split_semidirect(e: &ExtensionData, s: &Matrix) -> Result<SplitAudit> {
    let r = induced_representation(e)?;
    e.frame(s)?;
    if let Verdict::Fail(v) = e.base().check_morphism(e.total(), s) {
        return Err(Error::NotSplit(format!("section is not a morphism: {v}")));
    }
    let c = extract_cocycle(e, s)?;
    if !c.chi.is_zero() || !c.phi.is_zero() {
        return Err(Error::NotSplit(
            "chi or Phi is nonzero along the section".into(),
        ));
    }
    let restrictable = match enumerate_restrictable(e) {
        Ok(list) => list,
        Err(Error::NotEnumerable | Error::FieldTooLarge(_)) => {
            return Ok(SplitAudit { counts: None })
        }
        Err(err) => return Err(err),
    };
    let kernel = restrictable
        .iter()
        .filter(|g| is_kernel_element(e, g))
        .count();
    let mut compatible = 0;
    let mut splitting_failures = Vec::new();
    for beta in enumerate_automorphisms(e.coef())? {
        for alpha in enumerate_automorphisms(e.base())? {
            let pair = AutomorphismPair {
                beta: beta.clone(),
                alpha,
            };
            if !check_compatible_pair(&pair, &r).is_pass() {
                continue;
            }
            compatible += 1;
            let rho = semidirect_splitting(e, s, &pair)?;
            let ok = check_restrictable(e, &rho)?.is_pass()
                && project_automorphism_with_section(e, &rho, s)? == pair;
            if !ok {
                splitting_failures.push(pair);
            }
        }
    }
    Ok(SplitAudit {
        counts: Some(SplitCounts {
            restrictable: restrictable.len(),
            compatible,
            kernel,
            splitting_failures,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{build_extension, wells_class, NonAbelianCocycle};
    use crate::lie::{AveragingLieAlgebra, LieAlgebra};
    use crate::linalg::Field;

    fn f2_trivial() -> ExtensionData {
        let f = Field::Prime(2);
        let g = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        let h = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        build_extension(
            &NonAbelianCocycle::from_action(g, h, vec![Matrix::zeros(f, 1, 1)]).unwrap(),
        )
        .unwrap()
    }

    /// `g = F_2²` abelian with `P = 0`, `h = F_2`, `Φ = e_0^*`.
    fn f2_phi_twisted() -> ExtensionData {
        let f = Field::Prime(2);
        let g = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 2));
        let h = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 1));
        let mut c = NonAbelianCocycle::from_action(g, h, vec![Matrix::zeros(f, 1, 1); 2]).unwrap();
        c.phi = Matrix::from_i64(f, 1, 2, &[1, 0]);
        build_extension(&c).unwrap()
    }

    #[test]
    fn trivial_split_counts_match() {
        let e = f2_trivial();
        let audit = check_split_semidirect(&e, &e.default_section()).unwrap();
        let counts = audit.counts.clone().unwrap();
        // Aut_h: γ = [[1,0],[a,1]], a ∈ F_2; C_ψ = {(1,1)}.
        assert_eq!(
            (counts.restrictable, counts.compatible, counts.kernel),
            (2, 1, 2)
        );
        assert!(audit.verdict().is_pass());
    }

    #[test]
    fn phi_twist_gives_a_nonzero_class_and_a_non_inducible_pair() {
        let f = Field::Prime(2);
        let e = f2_phi_twisted();
        let swap = AutomorphismPair {
            beta: Matrix::identity(f, 1),
            alpha: Matrix::from_i64(f, 2, 2, &[0, 1, 1, 0]),
        };
        let w = abelian_wells(&swap, &e).unwrap();
        assert!(!w.is_zero_class());
        assert_eq!(wells_class(&swap, &e).unwrap().inducible(), Some(false));
        let id = AutomorphismPair::identity(e.base(), e.coef());
        assert!(abelian_wells(&id, &e).unwrap().is_zero_class());
        assert!(matches!(
            check_split_semidirect(&e, &e.default_section()),
            Err(Error::NotSplit(_))
        ));
    }

    #[test]
    fn incompatible_pair_is_reported() {
        let f = Field::Prime(3);
        let alg = LieAlgebra::new(
            f,
            2,
            crate::linalg::Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
        )
        .unwrap();
        let g = AveragingLieAlgebra::with_zero(alg);
        let r = Representation::adjoint(&g);
        let h = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 2));
        let e = build_extension(
            &NonAbelianCocycle::from_action(g.clone(), h, r.action().to_vec()).unwrap(),
        )
        .unwrap();
        let pair = AutomorphismPair {
            beta: Matrix::from_i64(f, 2, 2, &[1, 0, 0, 2]),
            alpha: Matrix::identity(f, 2),
        };
        assert!(matches!(
            abelian_wells(&pair, &e),
            Err(Error::NotCompatible(_))
        ));
        assert!(check_abelian_extension(&e, &r).is_ok());
        assert!(matches!(
            check_abelian_extension(&e, &Representation::trivial(&g, 2)),
            Err(Error::RepresentationMismatch(_))
        ));
    }
}
