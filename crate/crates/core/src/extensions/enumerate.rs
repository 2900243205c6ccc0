//! Exhaustive enumeration over small prime fields.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lie::AveragingLieAlgebra;
use crate::linalg::{enumerate_linear_maps, Matrix};
use crate::multilinear::{binomial, AltMap};

use super::cocycle::{cocycles_equivalent, Equivalence, NonAbelianCocycle};
use super::extension::ExtensionData;
use super::wells::{
    check_restrictable, lift_automorphism, project_automorphism, wells_class, AutomorphismPair,
};

/// Largest number of candidate matrices or cocycles tried by a brute-force search.
pub const MAX_ENUMERATION: u64 = 1 << 16;

fn candidates(
    rows: usize,
    cols: usize,
    a: &AveragingLieAlgebra,
) -> Result<crate::linalg::LinearMaps> {
    let maps = enumerate_linear_maps(cols, rows, a.field())?;
    if maps.len() > MAX_ENUMERATION {
        return Err(Error::FieldTooLarge(format!(
            "{} candidate {rows}x{cols} matrices",
            maps.len()
        )));
    }
    Ok(maps)
}

/// All averaging automorphisms of `a`.
pub fn enumerate_automorphisms(a: &AveragingLieAlgebra) -> Result<Vec<Matrix>> {
    let maps = candidates(a.dim(), a.dim(), a)?;
    Ok(maps
        .iter()
        .filter(|m| a.check_automorphism(m).is_pass())
        .collect())
}

/// `Aut_h(e_U)`: automorphisms of the total algebra preserving `im i`.
pub fn enumerate_restrictable(e: &ExtensionData) -> Result<Vec<Matrix>> {
    let maps = candidates(e.total().dim(), e.total().dim(), e.total())?;
    let mut out = Vec::new();
    for m in maps.iter() {
        if check_restrictable(e, &m)?.is_pass() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Membership in `Aut^{h,g}_h(e_U)` tested as `γ i = i` and `p γ = p`, without a section.
pub fn is_kernel_element(e: &ExtensionData, gamma: &Matrix) -> bool {
    &gamma.mul(e.i()) == e.i() && &e.p().mul(gamma) == e.p()
}

/// `Aut(h_Q) × Aut(g_P)`.
pub fn enumerate_pairs(e: &ExtensionData) -> Result<Vec<AutomorphismPair>> {
    let betas = enumerate_automorphisms(e.coef())?;
    let alphas = enumerate_automorphisms(e.base())?;
    Ok(betas
        .iter()
        .flat_map(|b| {
            alphas.iter().map(move |a| AutomorphismPair {
                beta: b.clone(),
                alpha: a.clone(),
            })
        })
        .collect())
}

/// Every valid non-abelian 2-cocycle of `g_P` with values in `h_Q`.
pub fn enumerate_cocycles(
    g: &AveragingLieAlgebra,
    h: &AveragingLieAlgebra,
) -> Result<Vec<NonAbelianCocycle>> {
    let f = g.field();
    let (gd, hd) = (g.dim(), h.dim());
    let chi_len = binomial(gd, 2) * hd;
    let total = chi_len + gd * hd * hd + hd * gd;
    let all = enumerate_linear_maps(1, total, f)?;
    if all.len() > MAX_ENUMERATION {
        return Err(Error::FieldTooLarge(format!(
            "{} candidate cocycles",
            all.len()
        )));
    }
    let mut out = Vec::new();
    for v in all.iter() {
        let data = v.entries();
        let chi = AltMap::from_vec(f, 2, gd, hd, data[..chi_len].to_vec());
        let mut rest = &data[chi_len..];
        let mut psi = Vec::with_capacity(gd);
        for _ in 0..gd {
            psi.push(Matrix::from_vec(f, hd, hd, rest[..hd * hd].to_vec()));
            rest = &rest[hd * hd..];
        }
        let phi = Matrix::from_vec(f, hd, gd, rest.to_vec());
        let c = NonAbelianCocycle::new(g.clone(), h.clone(), chi, psi, phi)?;
        if c.check().is_pass() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Partitions cocycles into equivalence classes (indices into `cocycles`),
/// comparing each against the first member of every existing class.
pub fn cocycle_classes(cocycles: &[NonAbelianCocycle]) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, c) in cocycles.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            match cocycles_equivalent(c, &cocycles[class[0]])? {
                Equivalence::Equivalent(_) => {
                    class.push(k);
                    placed = true;
                    break;
                }
                Equivalence::NotEquivalent => {}
                Equivalence::Indeterminate(why) => return Err(Error::FieldTooLarge(why)),
            }
        }
        if !placed {
            classes.push(vec![k]);
        }
    }
    Ok(classes)
}

/// Element-by-element check of `ker Π = Aut^{h,g}_h(e_U)` and `ker W = im Π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceAudit {
    pub restrictable: usize,
    pub kernel: usize,
    pub pairs: usize,
    pub image: usize,
    pub inducible: usize,
    /// `γ` where `Π(γ) = (Id, Id)` disagrees with the direct membership test.
    pub kernel_mismatches: Vec<Matrix>,
    /// Pairs where the Wells verdict disagrees with membership in `im Π`.
    pub image_mismatches: Vec<AutomorphismPair>,
    /// Inducible pairs whose constructed lift does not project back.
    pub lift_failures: Vec<AutomorphismPair>,
}

impl ExactSequenceAudit {
    pub fn holds(&self) -> bool {
        self.kernel_mismatches.is_empty()
            && self.image_mismatches.is_empty()
            && self.lift_failures.is_empty()
    }
}

pub fn exact_sequence_audit(e: &ExtensionData) -> Result<ExactSequenceAudit> {
    let restrictable = enumerate_restrictable(e)?;
    let identity = AutomorphismPair::identity(e.base(), e.coef());
    let mut image = HashSet::new();
    let mut kernel = 0;
    let mut kernel_mismatches = Vec::new();
    for gamma in &restrictable {
        let pair = project_automorphism(e, gamma)?;
        let member = is_kernel_element(e, gamma);
        kernel += usize::from(member);
        if (pair == identity) != member {
            kernel_mismatches.push(gamma.clone());
        }
        image.insert(pair);
    }
    let pairs = enumerate_pairs(e)?;
    let mut inducible = 0;
    let mut image_mismatches = Vec::new();
    let mut lift_failures = Vec::new();
    for pair in &pairs {
        let w = wells_class(pair, e)?;
        let Some(ind) = w.inducible() else {
            return Err(Error::FieldTooLarge(
                "undecided equivalence during audit".into(),
            ));
        };
        if ind != image.contains(pair) {
            image_mismatches.push(pair.clone());
        }
        if let Some(phi) = w.witness() {
            inducible += 1;
            let lifted = lift_automorphism(pair, e, phi).and_then(|g| project_automorphism(e, &g));
            if lifted.as_ref() != Ok(pair) {
                lift_failures.push(pair.clone());
            }
        }
    }
    Ok(ExactSequenceAudit {
        restrictable: restrictable.len(),
        kernel,
        pairs: pairs.len(),
        image: image.len(),
        inducible,
        kernel_mismatches,
        image_mismatches,
        lift_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::build_extension;
    use crate::lie::LieAlgebra;
    use crate::linalg::Field;

    fn line(f: Field, p: i64) -> AveragingLieAlgebra {
        AveragingLieAlgebra::new(LieAlgebra::abelian(f, 1), Matrix::from_i64(f, 1, 1, &[p]))
            .unwrap()
    }

    #[test]
    fn f2_line_cocycles() {
        let f = Field::Prime(2);
        // P = Q = 0: every (ψ, Φ) is a cocycle and (E3) separates Φ.
        let all = enumerate_cocycles(&line(f, 0), &line(f, 0)).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(cocycle_classes(&all).unwrap().len(), 4);
    }

    #[test]
    fn audit_of_the_trivial_f2_extension() {
        let f = Field::Prime(2);
        let c =
            NonAbelianCocycle::from_action(line(f, 0), line(f, 0), vec![Matrix::zeros(f, 1, 1)])
                .unwrap();
        let audit = exact_sequence_audit(&build_extension(&c).unwrap()).unwrap();
        assert!(audit.holds());
        assert_eq!(
            (
                audit.restrictable,
                audit.kernel,
                audit.pairs,
                audit.inducible
            ),
            (2, 2, 1, 1)
        );
    }
}
