//! 2-term L∞-algebras with homotopy averaging operators, and crossed modules.

mod crossed;
mod two_term;

pub use crossed::{
    adjoint_crossed_module, check_crossed_module, crossed_semidirect, crossed_to_strict,
    ideal_crossed_module, kernel_crossed_module, semidirect_bracket_tensor, strict_semidirect,
    strict_to_crossed, CrossedModule, SemidirectBracket,
};
pub use two_term::{
    check_homotopy_averaging, check_two_term, cocycle_violation, is_strict, skeletal_equivalent,
    skeletal_to_triple, triple_to_skeletal, HomotopyAveraging, SkeletalTriple, TwoTermLinf,
};
