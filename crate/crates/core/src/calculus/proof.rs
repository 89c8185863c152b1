//! Proofs and the proof checker.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use super::schema::{instantiate, AxiomName, Binding};
use crate::syntax::term::write_delta;
use crate::syntax::{EpSeq, Formula};

pub type StepId = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomName, Binding),
    Hypothesis,
    /// Modus ponens from `premise` (α) and `implication` (α → β).
    ModusPonens { premise: StepId, implication: StepId },
    /// The δ-rule over an eventually periodic family of earlier steps.
    DeltaRule(EpSeq<StepId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub id: StepId,
    pub formula: Formula,
    pub justification: Justification,
}

impl Step {
    pub fn new(id: StepId, formula: Formula, justification: Justification) -> Self {
        Step { id, formula, justification }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a proof needs at least one step")]
pub struct EmptyProof;

/// A nonempty sequence of steps; the last step's formula is what is proved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    steps: Vec<Step>,
}

impl Proof {
    pub fn new(steps: Vec<Step>) -> Result<Self, EmptyProof> {
        if steps.is_empty() {
            return Err(EmptyProof);
        }
        Ok(Proof { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn steps_mut(&mut self) -> &mut [Step] {
        &mut self.steps
    }

    pub fn conclusion(&self) -> &Formula {
        &self.steps.last().expect("nonempty").formula
    }

    /// Hypotheses cited by the proof.
    pub fn hypotheses(&self) -> Vec<&Formula> {
        self.steps
            .iter()
            .filter(|s| s.justification == Justification::Hypothesis)
            .map(|s| &s.formula)
            .collect()
    }

    /// Uniform substitution of formulas for propositional variables, applied
    /// to step formulas and axiom bindings alike.
    pub fn substitute(&self, sub: &BTreeMap<String, Formula>) -> Proof {
        let steps = self
            .steps
            .iter()
            .map(|s| Step {
                id: s.id,
                formula: s.formula.substitute(sub),
                justification: match &s.justification {
                    Justification::Axiom(n, b) => Justification::Axiom(*n, b.substitute(sub)),
                    j => j.clone(),
                },
            })
            .collect();
        Proof { steps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectReason {
    BadAxiomBinding,
    UnknownHypothesis,
    MpMismatch,
    DeltaPremiseMismatch,
    ForwardReference,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::BadAxiomBinding => "bad-axiom-binding",
            RejectReason::UnknownHypothesis => "unknown-hypothesis",
            RejectReason::MpMismatch => "mp-mismatch",
            RejectReason::DeltaPremiseMismatch => "delta-premise-mismatch",
            RejectReason::ForwardReference => "forward-reference",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}: {detail}")]
pub struct Reject {
    pub step: StepId,
    pub reason: RejectReason,
    pub detail: String,
}

/// Checks `proof` against the hypotheses `theta`. On success returns the
/// proved formula; otherwise the first offending step.
pub fn check_proof<'p>(theta: &[Formula], proof: &'p Proof) -> Result<&'p Formula, Reject> {
    let hyps: Vec<Formula> = theta.iter().map(Formula::canonical).collect();
    let mut proved: HashMap<StepId, Formula> = HashMap::new();
    let mut last: Option<StepId> = None;
    for step in &proof.steps {
        let reject = |reason, detail: String| Reject { step: step.id, reason, detail };
        if last.is_some_and(|l| step.id <= l) {
            return Err(reject(
                RejectReason::ForwardReference,
                format!("step ids must increase (previous {})", last.unwrap()),
            ));
        }
        let lookup = |id: StepId| {
            proved
                .get(&id)
                .ok_or_else(|| reject(RejectReason::ForwardReference, format!("step {id} is not an earlier step")))
        };
        let phi = step.formula.canonical();
        match &step.justification {
            Justification::Axiom(name, b) => {
                let inst = instantiate(*name, b)
                    .map_err(|e| reject(RejectReason::BadAxiomBinding, e.to_string()))?;
                if inst != phi {
                    return Err(reject(
                        RejectReason::BadAxiomBinding,
                        format!("{name} under this binding gives {inst}"),
                    ));
                }
            }
            Justification::Hypothesis => {
                if !hyps.contains(&phi) {
                    return Err(reject(RejectReason::UnknownHypothesis, format!("{phi} is not a hypothesis")));
                }
            }
            Justification::ModusPonens { premise, implication } => {
                let a = lookup(*premise)?;
                let ab = lookup(*implication)?;
                let Some((ante, cons)) = ab.as_imp() else {
                    return Err(reject(RejectReason::MpMismatch, format!("step {implication} is not an implication")));
                };
                if ante != a {
                    return Err(reject(
                        RejectReason::MpMismatch,
                        format!("antecedent of step {implication} differs from step {premise}"),
                    ));
                }
                if *cons != phi {
                    return Err(reject(RejectReason::MpMismatch, format!("modus ponens yields {cons}")));
                }
            }
            Justification::DeltaRule(ids) => {
                let family = ids.try_map(|id| lookup(*id).cloned())?;
                let expected = Formula::delta_seq(family);
                if expected != phi {
                    return Err(reject(
                        RejectReason::DeltaPremiseMismatch,
                        format!("the δ-rule on these premises yields {expected}"),
                    ));
                }
            }
        }
        proved.insert(step.id, phi);
        last = Some(step.id);
    }
    Ok(proof.conclusion())
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mv, phi) in &self.scalars {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "(bind {mv} {phi})")?;
        }
        for (mv, s) in &self.seqs {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "(bindseq {mv} ")?;
            write_seq_blocks(f, s)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_seq_blocks<T: fmt::Display>(f: &mut fmt::Formatter<'_>, s: &EpSeq<T>) -> fmt::Result {
    f.write_str("(pre")?;
    for x in s.preperiod() {
        write!(f, " {x}")?;
    }
    f.write_str(") (per")?;
    for x in s.period() {
        write!(f, " {x}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(name, b) if b.scalars.is_empty() && b.seqs.is_empty() => {
                write!(f, "(axiom {name})")
            }
            Justification::Axiom(name, b) => write!(f, "(axiom {name} {b})"),
            Justification::Hypothesis => f.write_str("(hyp)"),
            Justification::ModusPonens { premise, implication } => write!(f, "(mp {premise} {implication})"),
            Justification::DeltaRule(ids) => write_delta(f, ids),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(step {} {}\n  {})", self.id, self.formula, self.justification)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
