pub mod cli;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod homotopy;
pub mod lie;
pub mod linalg;
pub mod multilinear;
pub mod verdict;

pub use error::{Error, Result};
pub use lie::{AveragingLieAlgebra, LieAlgebra, Representation};
pub use linalg::{Field, Matrix, Scalar, Tensor};
pub use multilinear::{AltMap, DenseMap};
pub use verdict::{Verdict, Violation};
