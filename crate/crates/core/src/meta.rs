//! Constructive metatheorems on top of the solver: the local deduction
//! exponent, premise bundling, interpolation for theories over a shared
//! inventory, and interpolation on finitely many disjoint pieces.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::solver::{entails, minimal_unsat_subset_with, satisfiable, EntailResult, SolverError};
use crate::syntax::rational::is_unit;
use crate::syntax::{EpSeq, Equation, Rational, Term, Theory};

/// Default bound on the exponent searched by [`deduction_exponent`].
pub const DEFAULT_ITER_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetaError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no exponent up to {0} works")]
    IterationCap(u64),
    #[error("the first theory is unsatisfiable")]
    Sat1Failed,
    #[error("the second theory is unsatisfiable")]
    Sat2Failed,
    #[error("the union of the two theories is satisfiable, so no interpolant exists")]
    UnionSatisfiable,
    #[error("piece {0} is unsatisfiable")]
    PieceUnsatisfiable(usize),
    #[error("pieces {0} and {1} overlap")]
    PiecesOverlap(usize, usize),
    #[error("target value {0} lies outside [0,1]")]
    TargetOutOfRange(Rational),
    #[error("no pieces given")]
    NoPieces,
    #[error("constructed term fails verification: {0}")]
    Verification(String),
}

/// `t^k`, written without a wrapper when `k = 1`.
pub fn power(t: &Term, k: u64) -> Term {
    if k == 1 {
        t.clone()
    } else {
        Term::power(t.clone(), k)
    }
}

/// Least `k ≥ 1` in `1..=cap` satisfying a predicate that is monotone in `k`
/// (false up to some point, true from then on). Probes `1, 2, 4, …` and then
/// bisects the last gap.
fn least_monotone<F>(cap: u64, mut holds: F) -> Result<u64, MetaError>
where
    F: FnMut(u64) -> Result<bool, MetaError>,
{
    let mut failed = 0u64;
    let mut k = 1u64;
    loop {
        if holds(k)? {
            break;
        }
        failed = k;
        if k >= cap {
            return Err(MetaError::IterationCap(cap));
        }
        k = (k * 2).min(cap);
    }
    let (mut lo, mut hi) = (failed, k);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The least `k` with `Σ ⊨ (sᵏ → t) ≈ 1`, given `Σ ∪ {s ≈ 1} ⊨ t ≈ 1`.
///
/// `sᵏ⁺¹ ≤ sᵏ` pointwise, so the property is monotone in `k` and the least
/// witness can be located by galloping.
pub fn deduction_exponent(theory: &Theory, s: &Term, t: &Term, cap: u64) -> Result<u64, MetaError> {
    let pre = theory.clone().with(Equation::is_one(s.clone()));
    if !entails(&pre, &Equation::is_one(t.clone()))?.is_entailed() {
        return Err(MetaError::Precondition(format!(
            "Σ ∪ {{{s} ≈ 1}} does not entail {t} ≈ 1"
        )));
    }
    least_monotone(cap.max(1), |k| {
        let goal = Equation::is_one(Term::imp(power(s, k), t.clone()));
        Ok(entails(theory, &goal)?.is_entailed())
    })
}

/// `δ(family) ≈ 1`, which holds exactly when every member of the family
/// equals `1`.
pub fn bundle_theory(family: &EpSeq<Term>) -> Equation {
    Equation::is_one(Term::delta_seq(family.clone()))
}

/// The distinct slot equations `tᵢ ≈ 1` that a bundled family stands for.
pub fn unbundled(family: &EpSeq<Term>) -> Theory {
    let mut seen: Vec<&Term> = Vec::new();
    for t in family.slots() {
        if !seen.contains(&t) {
            seen.push(t);
        }
    }
    seen.into_iter().map(|t| Equation::is_one(t.clone())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpolantKind {
    /// The first theory has no model; `1` is an interpolant.
    VacuousFirst,
    /// The second theory has no model; `0` is an interpolant.
    VacuousSecond,
    /// Built from a minimal core `u` of the second theory as `uᵏ`.
    Core { core_size: usize, k: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpolant {
    pub term: Term,
    pub kind: InterpolantKind,
}

/// A term `s` with `Σ₁ ⊨ s ≈ 0` and `Σ₂ ⊨ s ≈ 1`, for jointly inconsistent
/// theories. Both theories are read over the union of their variables.
pub fn interpolant(sigma1: &Theory, sigma2: &Theory, cap: u64) -> Result<Interpolant, MetaError> {
    if !satisfiable(sigma1)?.is_sat() {
        return Ok(Interpolant { term: Term::One, kind: InterpolantKind::VacuousFirst });
    }
    if !satisfiable(sigma2)?.is_sat() {
        return Ok(Interpolant { term: Term::Zero, kind: InterpolantKind::VacuousSecond });
    }
    let normalized: Theory =
        sigma2.equations.iter().map(|e| Equation::is_one(e.one_form())).collect();
    let core = minimal_unsat_subset_with(sigma1, &normalized)?.ok_or(MetaError::UnionSatisfiable)?;
    let u = Term::meet_all(core.equations.iter().map(|e| e.lhs.clone()));
    let k = least_monotone(cap.max(1), |k| {
        let goal = Equation::is_one(Term::neg(power(&u, k)));
        Ok(entails(sigma1, &goal)?.is_entailed())
    })?;
    Ok(Interpolant {
        term: power(&u, k),
        kind: InterpolantKind::Core { core_size: core.len(), k },
    })
}

/// `r·s`, with the trivial scalars folded away.
fn scaled(r: &Rational, s: Term) -> Term {
    if r.is_zero() {
        Term::Zero
    } else if r.is_one() {
        s
    } else {
        Term::scalar(r.clone(), s)
    }
}

/// A term equal to `rᵢ` on the models of each `Cᵢ`, for pairwise jointly
/// inconsistent pieces.
///
/// For every ordered pair `i ≠ j` an interpolant `sᵢⱼ` is `1` on `Cᵢ` and `0`
/// on `Cⱼ`; then `sᵢ = ⋀ⱼ sᵢⱼ` is `1` on `Cᵢ` and `0` on every other piece,
/// and the result is `⋁ᵢ rᵢ·sᵢ`.
pub fn multipoint_interpolant(pieces: &[(Theory, Rational)], cap: u64) -> Result<Term, MetaError> {
    if pieces.is_empty() {
        return Err(MetaError::NoPieces);
    }
    for (i, (c, r)) in pieces.iter().enumerate() {
        if !is_unit(r) {
            return Err(MetaError::TargetOutOfRange(r.clone()));
        }
        if !satisfiable(c)?.is_sat() {
            return Err(MetaError::PieceUnsatisfiable(i));
        }
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if satisfiable(&pieces[i].0.union(&pieces[j].0))?.is_sat() {
                return Err(MetaError::PiecesOverlap(i, j));
            }
        }
    }
    if pieces.len() == 1 {
        return Ok(Term::constant(pieces[0].1.clone()));
    }
    let mut disjuncts = Vec::new();
    for (i, (ci, ri)) in pieces.iter().enumerate() {
        if ri.is_zero() {
            continue;
        }
        let mut sij = Vec::new();
        for (j, (cj, _)) in pieces.iter().enumerate() {
            if i != j {
                let s = interpolant(cj, ci, cap)?.term;
                if !sij.contains(&s) {
                    sij.push(s);
                }
            }
        }
        disjuncts.push(scaled(ri, Term::meet_all(sij)));
    }
    let a = Term::join_all(disjuncts);
    for (i, (c, r)) in pieces.iter().enumerate() {
        let goal = Equation::new(a.clone(), Term::constant(r.clone()));
        if let EntailResult::Refuted(f) = entails(c, &goal)? {
            return Err(MetaError::Verification(format!("piece {i} at {f}")));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval, Valuation};
    use crate::syntax::rat;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn galloping_finds_least_witness() {
        for target in [1u64, 2, 3, 7, 8, 9, 100, 1000] {
            let mut calls = 0;
            let k = least_monotone(1 << 16, |k| {
                calls += 1;
                Ok(k >= target)
            })
            .unwrap();
            assert_eq!(k, target);
            assert!(calls <= 2 * 64);
        }
        assert_eq!(least_monotone(10, |_| Ok(false)), Err(MetaError::IterationCap(10)));
        assert_eq!(least_monotone(10, |k| Ok(k >= 10)), Ok(10));
    }

    #[test]
    fn deduction_examples() {
        let cap = DEFAULT_ITER_CAP;
        let empty = Theory::empty();
        assert_eq!(deduction_exponent(&empty, &x(), &Term::odot(x(), x()), cap), Ok(2));
        assert_eq!(deduction_exponent(&empty, &x(), &x(), cap), Ok(1));
        let th = Theory::new(vec![Equation::is_one(Term::oplus(x(), x()))]);
        assert_eq!(deduction_exponent(&th, &x(), &Term::oplus(x(), x()), cap), Ok(1));
        assert!(matches!(
            deduction_exponent(&empty, &x(), &Term::var("y"), cap),
            Err(MetaError::Precondition(_))
        ));
    }

    #[test]
    fn interpolant_examples() {
        let s1 = Theory::new(vec![Equation::is_zero(x())]);
        let s2 = Theory::new(vec![Equation::is_one(x())]);
        let s = interpolant(&s1, &s2, DEFAULT_ITER_CAP).unwrap();
        assert_eq!(s.term, x());

        let s1 = Theory::new(vec![Equation::is_one(Term::oplus(x(), x()))]);
        let s2 = Theory::new(vec![Equation::is_zero(x())]);
        let s = interpolant(&s1, &s2, DEFAULT_ITER_CAP).unwrap();
        assert!(entails(&s1, &Equation::is_zero(s.term.clone())).unwrap().is_entailed());
        assert!(entails(&s2, &Equation::is_one(s.term.clone())).unwrap().is_entailed());

        let bad = Theory::new(vec![Equation::new(Term::Zero, Term::One)]);
        assert_eq!(interpolant(&bad, &s2, 8).unwrap().term, Term::One);
        assert_eq!(interpolant(&s2, &bad, 8).unwrap().term, Term::Zero);
        assert_eq!(interpolant(&s2, &s2, 8), Err(MetaError::UnionSatisfiable));
    }

    #[test]
    fn multipoint_two_pieces() {
        let c1 = Theory::new(vec![Equation::is_zero(x())]);
        let c2 = Theory::new(vec![Equation::is_one(x())]);
        let a = multipoint_interpolant(&[(c1.clone(), rat(1, 3)), (c2.clone(), rat(2, 3))], 64).unwrap();
        let at = |v| eval(&a, &Valuation::new().with("x", v).unwrap()).unwrap();
        assert_eq!(at(rat(0, 1)), rat(1, 3));
        assert_eq!(at(rat(1, 1)), rat(2, 3));

        let a = multipoint_interpolant(&[(c1.clone(), rat(0, 1)), (c2.clone(), rat(0, 1))], 64).unwrap();
        assert_eq!(a, Term::Zero);
        assert_eq!(
            multipoint_interpolant(&[(c1.clone(), rat(0, 1)), (c1, rat(1, 1))], 64),
            Err(MetaError::PiecesOverlap(0, 1))
        );
        assert_eq!(multipoint_interpolant(&[(Theory::empty(), rat(1, 2))], 64), Ok(Term::constant(rat(1, 2))));
    }

    #[test]
    fn multipoint_three_pieces() {
        let at_point = |r: Rational| Theory::new(vec![Equation::new(x(), Term::constant(r))]);
        let pieces = vec![
            (at_point(rat(0, 1)), rat(1, 2)),
            (at_point(rat(1, 2)), rat(1, 1)),
            (at_point(rat(1, 1)), rat(1, 4)),
        ];
        let a = multipoint_interpolant(&pieces, 64).unwrap();
        for (c, r) in &pieces {
            let p = c.equations[0].rhs.clone();
            let v = eval(&p, &Valuation::new()).unwrap();
            assert_eq!(eval(&a, &Valuation::new().with("x", v).unwrap()).unwrap(), *r);
        }
    }

    #[test]
    fn bundling_a_two_slot_family() {
        let fam = EpSeq::new(vec![x()], vec![Term::var("y")]).unwrap();
        let eq = bundle_theory(&fam);
        let parts = unbundled(&fam);
        assert_eq!(parts.len(), 2);
        assert!(crate::solver::entails_all(&parts, &Theory::new(vec![eq.clone()])).unwrap());
        assert!(crate::solver::entails_all(&Theory::new(vec![eq]), &parts).unwrap());
    }
}
