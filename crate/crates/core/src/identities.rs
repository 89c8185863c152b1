//! The defining identities of δ-algebras, checked in `[0,1]` by exact
//! evaluation. `fm(t)` is written as the δ-term `δ(t, 0, 0, …)` so that the
//! checks exercise the series evaluation rather than a shortcut.

use std::fmt;

use crate::eval::{eval, EvalError, Valuation};
use crate::syntax::{EpSeq, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `d(δ(x⃗), δ(x₁, 0⃗)) = δ(0, x₂, x₃, …)`
    I,
    /// `fm(δ(x⃗)) = δ(fm(x₁), fm(x₂), …)`
    II,
    /// `δ(x, x, …) = x`
    III,
    /// `δ(0, x⃗) = fm(δ(x⃗))`
    IV,
    /// `δ(x⃗) ≤ δ(x⃗ ⊕ y⃗)`
    V,
    /// `fm(x ⊖ y) = fm(x) ⊖ fm(y)`
    VI,
}

impl Identity {
    pub const ALL: [Identity; 6] = [Identity::I, Identity::II, Identity::III, Identity::IV, Identity::V, Identity::VI];
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::I => "(i)",
            Identity::II => "(ii)",
            Identity::III => "(iii)",
            Identity::IV => "(iv)",
            Identity::V => "(v)",
            Identity::VI => "(vi)",
        };
        f.pad(s)
    }
}

/// `δ(t, 0, 0, …)`
pub fn fm(t: Term) -> Term {
    Term::delta(vec![t], vec![Term::Zero]).expect("nonempty period")
}

/// The two sides of an identity instance; for [`Identity::V`] the left side
/// should be at most the right.
pub fn sides(id: Identity, xs: &EpSeq<Term>, ys: &EpSeq<Term>) -> (Term, Term) {
    let delta = |s: EpSeq<Term>| Term::delta_seq(s);
    match id {
        Identity::I => {
            let head_only = EpSeq::new(vec![xs.head().clone()], vec![Term::Zero]).expect("nonempty");
            (
                Term::dist(delta(xs.clone()), delta(head_only)),
                delta(xs.tail().cons(Term::Zero)),
            )
        }
        Identity::II => (fm(delta(xs.clone())), delta(xs.map(|x| fm(x.clone())))),
        Identity::III => (delta(EpSeq::constant(xs.head().clone())), xs.head().clone()),
        Identity::IV => (delta(xs.cons(Term::Zero)), fm(delta(xs.clone()))),
        Identity::V => (
            delta(xs.clone()),
            delta(xs.zip_with(ys, |a, b| Term::oplus(a.clone(), b.clone()))),
        ),
        Identity::VI => {
            let (x, y) = (xs.head().clone(), ys.head().clone());
            (fm(Term::ominus(x.clone(), y.clone())), Term::ominus(fm(x), fm(y)))
        }
    }
}

/// Whether the instance holds exactly at `f`.
pub fn holds(id: Identity, xs: &EpSeq<Term>, ys: &EpSeq<Term>, f: &Valuation) -> Result<bool, EvalError> {
    let (l, r) = sides(id, xs, ys);
    let (l, r) = (eval(&l, f)?, eval(&r, f)?);
    Ok(if id == Identity::V { l <= r } else { l == r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::rat;

    #[test]
    fn instances_hold() {
        let (x, y) = (Term::var("x"), Term::var("y"));
        let xs = EpSeq::new(vec![x.clone(), Term::One], vec![Term::neg(y.clone()), x.clone()]).unwrap();
        let ys = EpSeq::new(vec![], vec![y.clone(), Term::odot(x, y)]).unwrap();
        let f = Valuation::new().with("x", rat(2, 7)).unwrap().with("y", rat(5, 9)).unwrap();
        for id in Identity::ALL {
            assert!(holds(id, &xs, &ys, &f).unwrap(), "{id}");
        }
    }
}
