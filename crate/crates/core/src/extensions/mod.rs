//! Non-abelian extensions, their cocycles, the Wells map and automorphism lifting.

mod abelian;
mod cocycle;
mod enumerate;
mod extension;
mod wells;

pub use abelian::{
    abelian_wells, check_abelian_extension, check_compatible_pair, check_split_semidirect,
    induced_representation, semidirect_splitting, AbelianWells, SplitAudit, SplitCounts,
};
pub use cocycle::{
    check_cocycle, check_equivalence_witness, cocycles_equivalent, CocycleCheck, Equivalence,
    NonAbelianCocycle, MAX_EQUIVALENCE_SEARCH,
};
pub use enumerate::{
    cocycle_classes, enumerate_automorphisms, enumerate_cocycles, enumerate_pairs,
    enumerate_restrictable, exact_sequence_audit, is_kernel_element, ExactSequenceAudit,
    MAX_ENUMERATION,
};
pub use extension::{
    build_extension, check_extension_equivalence, default_section, extract_cocycle,
    reconstruction_isomorphism, ExtensionData,
};
pub use wells::{
    check_restrictable, lift_automorphism, lift_automorphism_with_section, project_automorphism,
    project_automorphism_with_section, transform_cocycle, wells_class, wells_class_with_section,
    AutomorphismPair, CocycleDifference, WellsClass,
};
