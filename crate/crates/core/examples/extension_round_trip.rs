//! Cocycle to extension and back, along two different sections.

use avglie::extensions::{
    build_extension, check_equivalence_witness, cocycles_equivalent, extract_cocycle,
    reconstruction_isomorphism, NonAbelianCocycle,
};
use avglie::{AltMap, AveragingLieAlgebra, Field, LieAlgebra, Matrix};

fn main() -> avglie::Result<()> {
    let f = Field::Prime(3);
    // g = F_3^2 abelian with P = 0, h = F_3 with Q = Id, χ(e0, e1) = 1.
    let g = AveragingLieAlgebra::with_zero(LieAlgebra::abelian(f, 2));
    let h = AveragingLieAlgebra::with_identity(LieAlgebra::abelian(f, 1));
    let chi = AltMap::from_vec(f, 2, 2, 1, vec![f.one()]);
    let c = NonAbelianCocycle::new(
        g,
        h,
        chi,
        vec![Matrix::zeros(f, 1, 1); 2],
        Matrix::zeros(f, 1, 2),
    )?;
    assert!(c.check().is_pass());

    let e = build_extension(&c)?;
    let s = e.section_or_default();
    assert_eq!(extract_cocycle(&e, &s)?, c);
    reconstruction_isomorphism(&e, &s)?;

    let shift = Matrix::from_i64(f, 1, 2, &[1, 2]);
    let s2 = s.add(&e.i().mul(&shift));
    let c2 = extract_cocycle(&e, &s2)?;
    println!(
        "χ along s': {:?}",
        c2.chi
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!(
        "Φ along s': {:?}",
        c2.phi
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!(
        "witness φ = s - s' verifies: {}",
        check_equivalence_witness(&c, &c2, &shift.neg())?.is_pass()
    );
    println!(
        "search finds a witness: {:?}",
        cocycles_equivalent(&c, &c2)?.witness().map(|m| m
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>())
    );
    Ok(())
}
