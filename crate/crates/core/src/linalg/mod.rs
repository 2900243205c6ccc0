//! Exact scalars, dense matrices and tensors, and finite-field enumeration.

mod enumerate;
mod matrix;
mod scalar;
mod tensor;
pub mod vector;

pub use enumerate::{enumerate_linear_maps, enumerate_vectors, LinearMaps};
pub use matrix::{AffineSolution, Matrix, Rref};
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use tensor::Tensor;
