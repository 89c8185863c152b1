//! Term ↔ formula translation.

use thiserror::Error;

use super::formula::Formula;
use super::term::Term;

/// Variable used to spell `0` as `¬(p0 → p0)`.
pub const RESERVED_VAR: &str = "p0";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variable `{RESERVED_VAR}` is reserved for the translation of 0")]
pub struct ReservedVariable;

/// `t_α`: replaces every `α → β` by `¬α ⊕ β`.
pub fn formula_to_term(f: &Formula) -> Term {
    match f {
        Formula::PVar(v) => Term::var(v.clone()),
        Formula::Imp(a, b) => Term::oplus(Term::neg(formula_to_term(a)), formula_to_term(b)),
        Formula::Neg(a) => Term::neg(formula_to_term(a)),
        Formula::Delta(s) => Term::delta_seq(s.map(formula_to_term)),
    }
}

/// `α_t`: expands derived operators, then replaces `a ⊕ b` by `¬a → b` and
/// `0` by `¬(p0 → p0)`.
pub fn term_to_formula(t: &Term) -> Result<Formula, ReservedVariable> {
    if t.vars().contains(RESERVED_VAR) {
        return Err(ReservedVariable);
    }
    Ok(primitive_to_formula(&t.expand()))
}

fn primitive_to_formula(t: &Term) -> Formula {
    match t {
        Term::Var(v) => Formula::var(v.clone()),
        Term::Zero => Formula::falsum_over(Formula::var(RESERVED_VAR)),
        Term::Neg(a) => Formula::neg(primitive_to_formula(a)),
        Term::Oplus(a, b) => {
            Formula::imp(Formula::neg(primitive_to_formula(a)), primitive_to_formula(b))
        }
        Term::Delta(s) => Formula::delta_seq(s.map(primitive_to_formula)),
        other => unreachable!("expand left a derived constructor: {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implication_becomes_negated_sum() {
        let f = Formula::imp(Formula::var("x"), Formula::var("y"));
        assert_eq!(
            formula_to_term(&f),
            Term::oplus(Term::neg(Term::var("x")), Term::var("y"))
        );
    }

    #[test]
    fn zero_uses_reserved_variable() {
        let p0 = Formula::var("p0");
        assert_eq!(
            term_to_formula(&Term::Zero).unwrap(),
            Formula::neg(Formula::imp(p0.clone(), p0))
        );
        assert_eq!(term_to_formula(&Term::var("p0")), Err(ReservedVariable));
    }
}
