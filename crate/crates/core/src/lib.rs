//! Exact semantics, decision procedures and a proof checker for the
//! infinitary equational logic of δ-algebras over the standard model `[0,1]`.
//!
//! * [`syntax`]: terms, formulas, eventually periodic sequences, theories.
//! * [`eval`]: exact rational evaluation.
//! * [`solver`]: satisfiability, entailment and optimization over `[0,1]`.
//! * [`calculus`]: axiom schemata and the proof checker.
//! * [`meta`]: deduction exponents, premise bundling, interpolation.
//! * [`approx`]: lattice approximation of sampled functions.
//! * [`cli`]: text formats and the `dlog` command line.

pub mod approx;
pub mod calculus;
pub mod cli;
pub mod eval;
pub mod identities;
pub mod meta;
pub mod solver;
pub mod syntax;
