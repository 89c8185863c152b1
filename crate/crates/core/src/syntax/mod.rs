//! Terms, formulas, eventually periodic argument sequences and the
//! translations between them.

pub mod epseq;
pub mod formula;
pub mod rational;
pub mod scalar;
pub mod term;
pub mod translate;

pub use epseq::{EmptyPeriod, EpSeq};
pub use formula::Formula;
pub use rational::{rat, Rational};
pub use scalar::{binary_expansion, scalar_term, ScalarOutOfRange};
pub use term::{Equation, Term, Theory};
pub use translate::{formula_to_term, term_to_formula, ReservedVariable, RESERVED_VAR};
