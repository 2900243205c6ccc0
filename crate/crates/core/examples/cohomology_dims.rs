//! Dimensions of the cochain complex of an averaging Lie algebra with coefficients in itself.

use avglie::cohomology::cohomology_dim;
use avglie::lie::{double_construction, AveragingLieAlgebra};
use avglie::{Field, LieAlgebra, Representation, Tensor};

fn main() -> avglie::Result<()> {
    let f = Field::Rationals;
    let g = LieAlgebra::new(
        f,
        2,
        Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
    )?;
    let two = double_construction(&g, 2)?;
    let a = AveragingLieAlgebra::new(two.algebra, two.p)?;
    let adjoint = Representation::adjoint(&a);
    println!("degree  dim C^n  rank d^n  rank d^(n-1)  dim H^n");
    for n in 1..=3 {
        let d = cohomology_dim(&adjoint, n);
        println!(
            "{n:>6}  {:>7}  {:>8}  {:>12}  {:>7}",
            d.cochain_dim, d.rank_delta, d.rank_previous, d.cohomology_dim
        );
    }
    Ok(())
}
