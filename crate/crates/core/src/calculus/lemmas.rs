//! Proof templates for derived schemata. Each template is written over the
//! propositional variables `alpha`, `beta`, `gamma` and instantiated by
//! uniform substitution.

use std::collections::BTreeMap;

use super::proof::Proof;
use crate::cli::parse_proof;
use crate::syntax::Formula;

const TEMPLATES: [(&str, &str); 5] = [
    ("identity", include_str!("../../lemmas/identity.proof")),
    ("double_negation_intro", include_str!("../../lemmas/double_negation_intro.proof")),
    ("double_negation_elim", include_str!("../../lemmas/double_negation_elim.proof")),
    ("exchange", include_str!("../../lemmas/exchange.proof")),
    ("contraposition", include_str!("../../lemmas/contraposition.proof")),
];

/// Template variables, in the order [`instantiate_lemma`] expects them.
pub const TEMPLATE_VARS: [&str; 3] = ["alpha", "beta", "gamma"];

#[derive(Debug, Clone)]
pub struct Lemma {
    pub name: &'static str,
    pub proof: Proof,
}

impl Lemma {
    pub fn statement(&self) -> &Formula {
        self.proof.conclusion()
    }

    /// Substitutes `args[i]` for the i-th template variable.
    pub fn instantiate(&self, args: &[Formula]) -> Proof {
        let sub: BTreeMap<String, Formula> =
            TEMPLATE_VARS.iter().zip(args).map(|(v, f)| (v.to_string(), f.clone())).collect();
        self.proof.substitute(&sub)
    }
}

/// `α→α`, `α→¬¬α`, `¬¬α→α`, `(α→(β→γ))→(β→(α→γ))` and `(α→¬β)→(β→¬α)`.
pub fn derived_lemmas() -> Vec<Lemma> {
    TEMPLATES
        .iter()
        .map(|(name, text)| Lemma {
            name,
            proof: parse_proof(text).expect("shipped lemma templates parse"),
        })
        .collect()
}

pub fn lemma(name: &str) -> Option<Lemma> {
    derived_lemmas().into_iter().find(|l| l.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;
    use crate::cli::parse_formula;

    #[test]
    fn templates_check() {
        for l in derived_lemmas() {
            assert!(check_proof(&[], &l.proof).is_ok(), "{} fails", l.name);
        }
    }

    #[test]
    fn instances() {
        let (x, y, z) = (Formula::var("x"), Formula::var("y"), Formula::var("z"));
        let args = [x, y, z];
        for (name, want) in [
            ("identity", "(to x x)"),
            ("double_negation_elim", "(to (neg (neg x)) x)"),
            ("exchange", "(to (to x (to y z)) (to y (to x z)))"),
        ] {
            let p = lemma(name).unwrap().instantiate(&args);
            assert_eq!(check_proof(&[], &p), Ok(&parse_formula(want).unwrap()));
        }
    }
}
