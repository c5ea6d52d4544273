use alloc::boxed::Box;
use alloc::string::String;

use crate::{Clause, Label, Report};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate element label {0}")]
    DuplicateLabel(Label),
    #[error("duplicate pair ({0}, {1}) in {2}")]
    DuplicatePair(Label, Label, &'static str),
    #[error("label {0} is not in the universe")]
    UnknownLabel(Label),
    #[error("universe of {0} elements exceeds the limit of {1}")]
    UniverseTooLarge(usize, usize),
    #[error("relations are over different universes")]
    UniverseMismatch,
    #[error("operation {op} is not total: no image for {at}")]
    PartialOperation { op: String, at: Label },
    #[error("invalid theory: {0}")]
    InvalidTheory(String),
    #[error("structure is not a model of the theory: {0}")]
    NotAModel(Box<Report>),
    #[error("invalid V-formation: {0}")]
    InvalidVFormation(String),
    #[error("map is not an embedding: {0}")]
    NotAnEmbedding(Box<Report>),
    #[error("theory outside the constructive cases ({0}); use the search oracle")]
    Inadmissible(Clause),
    #[error("constructed amalgam failed verification: {0}")]
    VerificationFailed(Box<Report>),
    #[error("not a poset extension: {0}")]
    NotAPosetExtension(Box<Report>),
    #[error("order on A ∪ B differs from the four-term union at ({0}, {1})")]
    NotASuperamalgam(Label, Label),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(Box<Report>),
    #[error("not a poset: {0}")]
    NotAPoset(Box<Report>),
    #[error("theory requires transitivity; free amalgamation does not apply")]
    TheoryRequiresTransitivity,
    #[error("operator is not isotone: {0} ≤ {1} but images are not")]
    NotIsotone(Label, Label),
    #[error("operator is not extensive at {0}")]
    NotExtensive(Label),
    #[error("operator is not contractive at {0}")]
    NotContractive(Label),
    #[error("unknown operation {0}")]
    UnknownOperation(String),
    #[error("unsupported operations: {0}")]
    UnsupportedOperations(String),
    #[error("search time budget exceeded after {nodes} nodes")]
    TimeBudgetExceeded { nodes: u64 },
    #[error("size {0} exceeds the supported bound {1}")]
    SizeBoundExceeded(usize, usize),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
}
