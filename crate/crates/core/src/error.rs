use thiserror::Error;

use crate::verdict::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: String,
        found: String,
    },
    #[error("{0}")]
    Violation(Violation),
    #[error("not an embedding tensor: {0}")]
    NotAnEmbeddingTensor(Violation),
    #[error("base structure is not a 2-term L-infinity algebra: {0}")]
    InvalidBase(Violation),
    #[error("structure is not skeletal (d != 0)")]
    NotSkeletal,
    #[error("structure is not strict (l3 or P2 nonzero)")]
    NotStrict,
    #[error("not a crossed module: {0}")]
    NotACrossedModule(Violation),
    #[error("not a cocycle: {0}")]
    NotACocycle(Violation),
    #[error("bilinear component is not alternating at {0:?}")]
    NotAlternating(Vec<usize>),
    #[error("not an extension: {0}")]
    NotAnExtension(Violation),
    #[error("map is not a section of the projection")]
    NotASection,
    #[error("value lies outside the kernel of the projection")]
    ValueOutsideKernel,
    #[error("projection is not surjective")]
    NotSurjective,
    #[error("not a pair of automorphisms: {0}")]
    NotAutomorphisms(Violation),
    #[error("automorphism does not preserve the kernel")]
    NotRestrictable,
    #[error("not an automorphism of the extension: {0}")]
    NotAnAutomorphism(Violation),
    #[error("witness does not produce a lift: {0}")]
    NotAWitness(Violation),
    #[error("coefficient algebra is not abelian")]
    NotAbelian,
    #[error("pair is not compatible with the action: {0}")]
    NotCompatible(Violation),
    #[error("extension is not split: {0}")]
    NotSplit(String),
    #[error("search space too large: {0}")]
    FieldTooLarge(String),
    #[error("the rationals cannot be enumerated")]
    NotEnumerable,
    #[error("cocycles or extensions are over different algebras")]
    DifferentAlgebras,
    #[error("induced action differs from the prescribed representation: {0}")]
    RepresentationMismatch(Violation),
    #[error("inconsistent checker verdicts: {0}")]
    Inconsistent(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Violation(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
