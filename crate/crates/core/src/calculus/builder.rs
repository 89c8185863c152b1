//! Incremental construction of proofs: each rule application computes its
//! conclusion, so only the skeleton has to be written by hand.

use std::collections::HashMap;

use thiserror::Error;

use super::lemmas::lemma;
use super::proof::{Justification, Proof, Step, StepId};
use super::schema::{instantiate, AxiomName, Binding, BindingError};
use crate::syntax::{EpSeq, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Binding(#[from] BindingError),
    #[error("no step {0}")]
    UnknownStep(StepId),
    #[error("step {0} is not an implication")]
    NotImplication(StepId),
    #[error("antecedent of step {implication} is not the formula of step {premise}")]
    AntecedentMismatch { premise: StepId, implication: StepId },
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("a proof needs at least one step")]
    Empty,
}

#[derive(Debug, Clone, Default)]
pub struct ProofBuilder {
    steps: Vec<Step>,
    index: HashMap<StepId, usize>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        ProofBuilder::default()
    }

    fn push(&mut self, formula: Formula, justification: Justification) -> StepId {
        let id = self.steps.len() as StepId + 1;
        self.index.insert(id, self.steps.len());
        self.steps.push(Step::new(id, formula.canonical(), justification));
        id
    }

    pub fn formula(&self, id: StepId) -> Result<&Formula, BuildError> {
        self.index
            .get(&id)
            .map(|&i| &self.steps[i].formula)
            .ok_or(BuildError::UnknownStep(id))
    }

    pub fn hyp(&mut self, f: Formula) -> StepId {
        self.push(f, Justification::Hypothesis)
    }

    pub fn axiom(&mut self, name: AxiomName, b: Binding) -> Result<StepId, BuildError> {
        let f = instantiate(name, &b)?;
        Ok(self.push(f, Justification::Axiom(name, b)))
    }

    /// Modus ponens from `premise` (α) and `implication` (α → β).
    pub fn mp(&mut self, premise: StepId, implication: StepId) -> Result<StepId, BuildError> {
        let a = self.formula(premise)?;
        let (ante, cons) = self.formula(implication)?.as_imp().ok_or(BuildError::NotImplication(implication))?;
        if ante != a {
            return Err(BuildError::AntecedentMismatch { premise, implication });
        }
        let cons = cons.clone();
        Ok(self.push(cons, Justification::ModusPonens { premise, implication }))
    }

    pub fn delta(&mut self, ids: EpSeq<StepId>) -> Result<StepId, BuildError> {
        let family = ids.try_map(|&id| self.formula(id).cloned())?;
        Ok(self.push(Formula::delta_seq(family), Justification::DeltaRule(ids)))
    }

    /// From `α → β` and `β → γ`, derives `α → γ` through L2.
    pub fn chain(&mut self, ab: StepId, bc: StepId) -> Result<StepId, BuildError> {
        let (a, b) = self.formula(ab)?.as_imp().ok_or(BuildError::NotImplication(ab))?;
        let (_, c) = self.formula(bc)?.as_imp().ok_or(BuildError::NotImplication(bc))?;
        let binding = Binding::new().bind("alpha", a.clone()).bind("beta", b.clone()).bind("gamma", c.clone());
        let l2 = self.axiom(AxiomName::L2, binding)?;
        let bc_ac = self.mp(ab, l2)?;
        self.mp(bc, bc_ac)
    }

    /// Inlines an instance of a derived lemma and returns its last step.
    pub fn lemma(&mut self, name: &str, args: &[Formula]) -> Result<StepId, BuildError> {
        let l = lemma(name).ok_or_else(|| BuildError::UnknownLemma(name.to_string()))?;
        let proof = l.instantiate(args);
        let mut renumber: HashMap<StepId, StepId> = HashMap::new();
        let mut last = 0;
        for step in proof.steps() {
            let map = |id: &StepId| renumber[id];
            let j = match &step.justification {
                Justification::ModusPonens { premise, implication } => {
                    Justification::ModusPonens { premise: map(premise), implication: map(implication) }
                }
                Justification::DeltaRule(ids) => Justification::DeltaRule(ids.map(map)),
                j => j.clone(),
            };
            last = self.push(step.formula.clone(), j);
            renumber.insert(step.id, last);
        }
        Ok(last)
    }

    pub fn finish(self) -> Result<Proof, BuildError> {
        Proof::new(self.steps).map_err(|_| BuildError::Empty)
    }
}
