//! Finite structures with two binary relations `≤` and `≪`, and the
//! machinery to amalgamate them.
//!
//! * [`construct`] builds amalgams by composition-union, lifts `≪` along
//!   poset extensions, linearizes, and verifies amalgams at the AP, SAP and
//!   superamalgamation levels.
//! * [`auxrel`] covers auxiliary relations, causal spaces and
//!   operator-induced relations.
//! * [`oracle`] is an exhaustive backtracking search for amalgams, used as
//!   ground truth and to certify that no amalgam exists.
//! * [`fraisse`] enumerates finite models up to isomorphism, checks
//!   amalgamation exhaustively at small sizes, and grows finite
//!   approximations of Fraïssé limits.
//! * [`fixtures`] encodes the classical counterexamples as executable instances.
//!
//! The crate is `no_std` and only needs `alloc`. Universes hold at most
//! [`MAX_ELEMENTS`] points.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod canon;
mod error;
mod label;
mod relation;
mod report;
mod structure;
mod theory;
mod validate;
mod vformation;

pub mod auxrel;
pub mod construct;
pub mod fixtures;
pub mod fraisse;
pub mod oracle;

pub use canon::{canonical_form, canonical_label, canonical_order, canonical_structure, CanonicalForm, CANONICAL_BOUND};
pub use construct::Clause;
pub use error::Error;
pub use label::{l, Label};
pub use relation::{Relation, MAX_ELEMENTS};
pub use report::{Report, Violation};
pub use structure::{compose, transitive_closure, BinRel, LabelMap, Structure, StructureBuilder};
pub use theory::{Condition, Conditions, Degeneracy, Extras, Preserves, Prop, RelProps, Theory};
pub use validate::{check_rel_props, is_embedding, validate};
pub use vformation::{normalize_instance, Amalgam, Normalized, VFormation};
