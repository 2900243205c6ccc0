//! Lie algebras by structure constants, averaging operators and their representations.

mod algebra;
mod averaging;
mod representation;

pub use algebra::{
    action_of, check_action_homomorphism, check_lie_bracket, LeibnizAlgebra, LieAlgebra,
};
pub use averaging::{
    check_averaging, check_embedding_tensor, double_construction, embedding_to_averaging,
    semidirect_product, AveragingCheck, AveragingLieAlgebra, DoubleConstruction,
};
pub use representation::{check_representation, Representation};

pub(crate) use algebra::{check_matrix_shape, check_shape};
pub(crate) use averaging::{check_action_shape, first_column_difference};
