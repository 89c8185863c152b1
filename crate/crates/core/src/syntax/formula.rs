use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::epseq::{EmptyPeriod, EpSeq};
use super::term::write_delta;

/// Formulas of the infinitary calculus: variables, `→`, `¬` and `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    PVar(String),
    Imp(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    Delta(EpSeq<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::PVar(name.into())
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn delta(pre: Vec<Formula>, per: Vec<Formula>) -> Result<Formula, EmptyPeriod> {
        Ok(Formula::Delta(EpSeq::new(pre, per)?))
    }

    pub fn delta_seq(seq: EpSeq<Formula>) -> Formula {
        Formula::Delta(seq.canonical())
    }

    /// `¬(α → α)`, the formula standing for `0`.
    pub fn falsum_over(a: Formula) -> Formula {
        Formula::neg(Formula::imp(a.clone(), a))
    }

    /// `ĥα = δ(α, ⟨¬(α→α)⟩)`.
    pub fn hhat(a: Formula) -> Formula {
        let zero = Formula::falsum_over(a.clone());
        Formula::delta_seq(EpSeq::raw(vec![a], vec![zero]).expect("nonempty period"))
    }

    /// `α ↔ β` as its two implications.
    pub fn iff(a: Formula, b: Formula) -> [Formula; 2] {
        [Formula::imp(a.clone(), b.clone()), Formula::imp(b, a)]
    }

    /// Recognizes `ĥα` and returns `α`.
    pub fn as_hhat(&self) -> Option<&Formula> {
        let Formula::Delta(s) = self else { return None };
        match (s.preperiod(), s.period()) {
            ([a], [z]) if *z == Formula::falsum_over(a.clone()) => Some(a),
            _ => None,
        }
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Neg(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_delta(&self) -> Option<&EpSeq<Formula>> {
        match self {
            Formula::Delta(s) => Some(s),
            _ => None,
        }
    }

    /// Deep canonicalization of every δ argument sequence.
    pub fn canonical(&self) -> Formula {
        match self {
            Formula::PVar(_) => self.clone(),
            Formula::Imp(a, b) => Formula::imp(a.canonical(), b.canonical()),
            Formula::Neg(a) => Formula::neg(a.canonical()),
            Formula::Delta(s) => Formula::delta_seq(s.map(Formula::canonical)),
        }
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::PVar(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Imp(a, b) => Formula::imp(a.substitute(map), b.substitute(map)),
            Formula::Neg(a) => Formula::neg(a.substitute(map)),
            Formula::Delta(s) => Formula::delta_seq(s.map(|f| f.substitute(map))),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::PVar(v) => {
                out.insert(v.clone());
            }
            Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Neg(a) => a.collect_vars(out),
            Formula::Delta(s) => s.slots().for_each(|f| f.collect_vars(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::PVar(_) => 1,
            Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Neg(a) => 1 + a.depth(),
            Formula::Delta(s) => 1 + s.slots().map(Formula::depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = self.as_hhat() {
            return write!(f, "(hhat {a})");
        }
        match self {
            Formula::PVar(v) => write!(f, "{v}"),
            Formula::Imp(a, b) => write!(f, "(to {a} {b})"),
            Formula::Neg(a) => write!(f, "(neg {a})"),
            Formula::Delta(s) => write_delta(f, s),
        }
    }
}
