//! Strict structures and crossed modules, skeletal structures and 3-cocycles.

use avglie::homotopy::{
    adjoint_crossed_module, crossed_semidirect, crossed_to_strict, semidirect_bracket_tensor,
    skeletal_to_triple, strict_to_crossed, triple_to_skeletal, SemidirectBracket,
};
use avglie::lie::check_lie_bracket;
use avglie::{AveragingLieAlgebra, Field, LieAlgebra, Tensor};

fn main() -> avglie::Result<()> {
    let f = Field::Rationals;
    let g = LieAlgebra::new(
        f,
        2,
        Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
    )?;
    let a = AveragingLieAlgebra::with_identity(g);

    let crossed = adjoint_crossed_module(&a);
    let (t, p) = crossed_to_strict(&crossed)?;
    println!(
        "adjoint crossed module -> strict -> crossed is identity: {}",
        strict_to_crossed(&t, &p)? == crossed
    );

    let semidirect = crossed_semidirect(&crossed, SemidirectBracket::Standard)?;
    println!("semidirect averaging algebra of dim {}", semidirect.dim());
    let literal = check_lie_bracket(&semidirect_bracket_tensor(
        &crossed,
        SemidirectBracket::SecondSlotOnly,
    ));
    println!(
        "with ρ_y k in the second slot: {:?}",
        literal.violation().map(ToString::to_string)
    );

    // The skeletal structure of the adjoint representation with zero 3-cocycle.
    let r = avglie::Representation::adjoint(&a);
    let zero = avglie::cohomology::Cochain::zero_for(&r, 3);
    let (t, p) = triple_to_skeletal(&a, &r, &zero)?;
    let triple = skeletal_to_triple(&t, &p)?;
    println!(
        "skeletal round trip returns the cocycle: {}",
        triple.cocycle == zero
    );
    Ok(())
}
