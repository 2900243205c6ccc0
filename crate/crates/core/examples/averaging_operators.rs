//! Averaging operators from the double construction and from an embedding tensor.

use avglie::lie::{double_construction, embedding_to_averaging, AveragingLieAlgebra};
use avglie::{Field, LieAlgebra, Matrix, Tensor};

fn main() -> avglie::Result<()> {
    let f = Field::Rationals;
    // [e0, e1] = e1
    let g = LieAlgebra::new(
        f,
        2,
        Tensor::from_i64(f, &[2, 2, 2], &[0, 0, 0, 1, 0, -1, 0, 0]),
    )?;

    let three = double_construction(&g, 3)?;
    for (name, op) in std::iter::once(("P", &three.p)).chain(three.q.iter().map(|q| ("Q_i", q))) {
        let a = AveragingLieAlgebra::new(three.algebra.clone(), op.clone())?;
        println!(
            "{name} on 3 copies: averaging, induced Leibniz bracket {:?}",
            a.induced_leibniz().structure_constants().shape()
        );
    }

    // T = e0 e0^* is an embedding tensor for the adjoint representation.
    let t = Matrix::from_i64(f, 2, 2, &[1, 0, 0, 0]);
    let a = embedding_to_averaging(&g, &g.adjoint_action(), &t)?;
    println!(
        "P_T on g ⋉ g (dim {}):\n{:?}",
        a.dim(),
        a.op()
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    match AveragingLieAlgebra::new(g, Matrix::from_i64(f, 2, 2, &[0, 0, 0, 1])) {
        Err(e) => println!("projection onto e1 is rejected: {e}"),
        Ok(_) => unreachable!("projection onto e1 is not averaging"),
    }
    Ok(())
}
