//! The Hilbert calculus: axiom schemata, proofs, the checker and a few
//! derived lemmas.

pub mod builder;
pub mod lemmas;
pub mod proof;
pub mod schema;

pub use builder::{BuildError, ProofBuilder};
pub use lemmas::{derived_lemmas, lemma, Lemma};
pub use proof::{check_proof, EmptyProof, Justification, Proof, Reject, RejectReason, Step, StepId};
pub use schema::{instantiate, match_axiom, AxiomName, Binding, BindingError, UnknownAxiom};
