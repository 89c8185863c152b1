//! Decision procedures over `[0,1]`-valuations.
//!
//! Each query is linearized into a DAG of affine and `min`/`max` nodes. A
//! depth-first search fixes the side of every undecided `min`/`max` node,
//! abandoning a branch as soon as its guards become infeasible; each
//! surviving branch is a closed polytope on which every node is affine, so an
//! exact linear program answers the query there.

pub mod affine;
pub mod linearize;
pub mod simplex;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::eval::{eval, EvalError, Valuation};
use crate::syntax::rational::is_unit;
use crate::syntax::{Equation, Rational, Term, Theory};
use affine::{Affine, Constraint};
use linearize::{Dag, Node, Pick};
pub use simplex::Sense;
use simplex::{feasible_point, solve, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("scalar {0} lies outside [0,1]")]
    ScalarOutOfRange(Rational),
    #[error("the theory has no model in [0,1]")]
    Unsatisfiable,
    #[error("internal error: solution failed to re-verify: {0}")]
    Verification(String),
}

impl From<EvalError> for SolverError {
    fn from(e: EvalError) -> Self {
        SolverError::Verification(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Valuation),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntailResult {
    Entailed,
    Refuted(Valuation),
}

impl EntailResult {
    pub fn is_entailed(&self) -> bool {
        matches!(self, EntailResult::Entailed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremum {
    pub value: Rational,
    pub argpoint: Valuation,
}

/// Counters from one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub splits: usize,
    pub leaves: usize,
    pub lp_calls: usize,
}

fn check_scalars(t: &Term) -> Result<(), SolverError> {
    if let Term::Scalar(r, _) = t {
        if !is_unit(r) {
            return Err(SolverError::ScalarOutOfRange(r.clone()));
        }
    }
    t.children().into_iter().try_for_each(check_scalars)
}

/// The linearized form of a theory plus an optional objective term.
struct Engine<'a> {
    dag: Dag<'a>,
    vars: Vec<String>,
    /// `checkpoints[i]`: node pairs forced equal once `i` nodes are resolved.
    checkpoints: Vec<Vec<(usize, usize)>>,
    stats: SearchStats,
}

type Visit<'v> = dyn FnMut(&[Affine], &[Constraint], &mut SearchStats) -> ControlFlow<()> + 'v;

impl<'a> Engine<'a> {
    fn build(
        theory: &'a Theory,
        objective: Option<&'a Term>,
    ) -> Result<(Engine<'a>, Option<usize>), SolverError> {
        let mut vars: BTreeSet<String> = theory.variables();
        if let Some(t) = objective {
            check_scalars(t)?;
            vars.extend(t.vars());
        }
        let vars: Vec<String> = vars.into_iter().collect();
        let mut dag = Dag::new(&vars);
        let mut checkpoints: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for eq in &theory.equations {
            check_scalars(&eq.lhs)?;
            check_scalars(&eq.rhs)?;
            let (l, r) = (dag.insert(&eq.lhs), dag.insert(&eq.rhs));
            checkpoints.resize(dag.nodes.len() + 1, Vec::new());
            checkpoints[dag.nodes.len()].push((l, r));
        }
        let root = objective.map(|t| dag.insert(t));
        checkpoints.resize(dag.nodes.len() + 1, Vec::new());
        let stats = SearchStats { splits: dag.split_count(), ..SearchStats::default() };
        Ok((Engine { dag, vars, checkpoints, stats }, root))
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn valuation(&self, point: &[Rational]) -> Valuation {
        let mut v = Valuation::new();
        for (name, x) in self.vars.iter().zip(point) {
            v.set(name.clone(), x.clone()).expect("LP points lie in the unit box");
        }
        v
    }

    fn feasible(&mut self, cons: &[Constraint]) -> bool {
        self.stats.lp_calls += 1;
        feasible_point(self.nvars(), cons).is_some()
    }

    fn explore(&mut self, visit: &mut Visit<'_>) {
        let mut values = Vec::with_capacity(self.dag.nodes.len());
        let mut cons = Vec::new();
        let _ = self.go(0, &mut values, &mut cons, visit);
    }

    fn go(
        &mut self,
        start: usize,
        values: &mut Vec<Affine>,
        cons: &mut Vec<Constraint>,
        visit: &mut Visit<'_>,
    ) -> ControlFlow<()> {
        let cons_len = cons.len();
        let n = self.nvars();
        let result = 'walk: {
            let mut i = start;
            loop {
                let mut added = false;
                for &(l, r) in &self.checkpoints[i] {
                    let diff = &values[l] - &values[r];
                    if diff.is_constant() {
                        if !diff.constant.is_zero() {
                            break 'walk ControlFlow::Continue(());
                        }
                    } else {
                        cons.push(Constraint::eq(diff));
                        added = true;
                    }
                }
                if added && !self.feasible(cons) {
                    break 'walk ControlFlow::Continue(());
                }
                if i == self.dag.nodes.len() {
                    self.stats.leaves += 1;
                    break 'walk visit(values, cons, &mut self.stats);
                }
                let (pv, qv, p_guard, q_guard) = match &self.dag.nodes[i] {
                    Node::Var(k) => {
                        values.push(Affine::var(n, *k));
                        i += 1;
                        continue;
                    }
                    Node::Affine(lin) => {
                        values.push(lin.resolve(values, n));
                        i += 1;
                        continue;
                    }
                    Node::Split { pick, p, q } => {
                        let (pv, qv) = (p.resolve(values, n), q.resolve(values, n));
                        let d = &pv - &qv;
                        // p is the value where d ≤ 0 for min, d ≥ 0 for max
                        let (p_guard, q_guard) = match pick {
                            Pick::Min => (Constraint::le(d.clone()), Constraint::ge(d)),
                            Pick::Max => (Constraint::ge(d.clone()), Constraint::le(d)),
                        };
                        (pv, qv, p_guard, q_guard)
                    }
                };
                if always(&p_guard) {
                    values.push(pv);
                } else if always(&q_guard) {
                    values.push(qv);
                } else {
                    cons.push(p_guard.clone());
                    let p_ok = self.feasible(cons);
                    cons.pop();
                    if !p_ok {
                        values.push(qv);
                    } else {
                        cons.push(q_guard.clone());
                        let q_ok = self.feasible(cons);
                        cons.pop();
                        if !q_ok {
                            values.push(pv);
                        } else {
                            for (v, g) in [(pv, p_guard), (qv, q_guard)] {
                                cons.push(g);
                                values.push(v);
                                let r = self.go(i + 1, values, cons, visit);
                                values.pop();
                                cons.pop();
                                if r.is_break() {
                                    break 'walk r;
                                }
                            }
                            break 'walk ControlFlow::Continue(());
                        }
                    }
                }
                i += 1;
            }
        };
        values.truncate(start);
        cons.truncate(cons_len);
        result
    }
}

/// The guard `expr ≤ 0` holds on the whole box.
fn always(guard: &Constraint) -> bool {
    !guard.expr.box_range().1.is_positive()
}

fn verify_model(theory: &Theory, f: &Valuation) -> Result<(), SolverError> {
    for eq in &theory.equations {
        let (l, r) = (eval(&eq.lhs, f)?, eval(&eq.rhs, f)?);
        if l != r {
            return Err(SolverError::Verification(format!("{eq} fails at {f}")));
        }
    }
    Ok(())
}

/// Decides whether some valuation into `[0,1]` satisfies every equation.
pub fn satisfiable(theory: &Theory) -> Result<SatResult, SolverError> {
    satisfiable_with_stats(theory).map(|(r, _)| r)
}

pub fn satisfiable_with_stats(theory: &Theory) -> Result<(SatResult, SearchStats), SolverError> {
    let (mut engine, _) = Engine::build(theory, None)?;
    let nvars = engine.nvars();
    let mut witness: Option<Vec<Rational>> = None;
    engine.explore(&mut |_, cons, stats| {
        stats.lp_calls += 1;
        match feasible_point(nvars, cons) {
            Some(p) => {
                witness = Some(p);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    let result = match witness {
        Some(p) => {
            let f = engine.valuation(&p);
            verify_model(theory, &f)?;
            SatResult::Sat(f)
        }
        None => SatResult::Unsat,
    };
    Ok((result, engine.stats))
}

/// Exact optimum of `t` over the models of `theory`.
pub fn extremum(t: &Term, theory: &Theory, sense: Sense) -> Result<Extremum, SolverError> {
    extremum_until(t, theory, sense, None).map(|(e, _)| e)
}

/// As [`extremum`], stopping early once a branch beats `stop_beyond`.
fn extremum_until(
    t: &Term,
    theory: &Theory,
    sense: Sense,
    stop_beyond: Option<&Rational>,
) -> Result<(Extremum, SearchStats), SolverError> {
    let (mut engine, root) = Engine::build(theory, Some(t))?;
    let root = root.expect("objective inserted");
    let nvars = engine.nvars();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    engine.explore(&mut |values, cons, stats| {
        stats.lp_calls += 1;
        if let LpOutcome::Optimal { value, point } = solve(nvars, cons, Some((&values[root], sense)))
        {
            let better = match &best {
                None => true,
                Some((b, _)) => match sense {
                    Sense::Max => value > *b,
                    Sense::Min => value < *b,
                },
            };
            if better {
                best = Some((value, point));
            }
        }
        match (&best, stop_beyond) {
            (Some((b, _)), Some(limit)) => {
                let beyond = match sense {
                    Sense::Max => b > limit,
                    Sense::Min => b < limit,
                };
                if beyond {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            }
            _ => ControlFlow::Continue(()),
        }
    });
    let (value, point) = best.ok_or(SolverError::Unsatisfiable)?;
    let argpoint = engine.valuation(&point);
    verify_model(theory, &argpoint)?;
    let at = eval(t, &argpoint)?;
    if at != value {
        return Err(SolverError::Verification(format!(
            "objective {t} is {at} at {argpoint}, expected {value}"
        )));
    }
    Ok((Extremum { value, argpoint }, engine.stats))
}

/// Decides `theory ⊨ goal` by maximizing `d(lhs, rhs)` over the models of
/// `theory`: the goal is entailed exactly when that maximum is `0`.
pub fn entails(theory: &Theory, goal: &Equation) -> Result<EntailResult, SolverError> {
    entails_with_stats(theory, goal).map(|(r, _)| r)
}

pub fn entails_with_stats(
    theory: &Theory,
    goal: &Equation,
) -> Result<(EntailResult, SearchStats), SolverError> {
    let distance = goal.distance();
    match extremum_until(&distance, theory, Sense::Max, Some(&Rational::zero())) {
        Err(SolverError::Unsatisfiable) => Ok((EntailResult::Entailed, SearchStats::default())),
        Err(e) => Err(e),
        Ok((ex, stats)) if ex.value.is_zero() => Ok((EntailResult::Entailed, stats)),
        Ok((ex, stats)) => Ok((EntailResult::Refuted(ex.argpoint), stats)),
    }
}

/// Entailment of every member of `goals`.
pub fn entails_all(theory: &Theory, goals: &Theory) -> Result<bool, SolverError> {
    for g in &goals.equations {
        if !entails(theory, g)?.is_entailed() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deletion-based shrinking: for an unsatisfiable theory returns a subset
/// that is still unsatisfiable and from which no single member can be
/// dropped. Returns `None` when the theory is satisfiable.
pub fn minimal_unsat_subset(theory: &Theory) -> Result<Option<Theory>, SolverError> {
    minimal_unsat_subset_with(&Theory::empty(), theory)
}

/// Shrinks `candidates` while `base ∪ candidates` stays unsatisfiable.
pub fn minimal_unsat_subset_with(
    base: &Theory,
    candidates: &Theory,
) -> Result<Option<Theory>, SolverError> {
    if satisfiable(&base.union(candidates))?.is_sat() {
        return Ok(None);
    }
    let mut kept = candidates.equations.clone();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        let th = base.union(&Theory::new(trial.clone()));
        if satisfiable(&th)?.is_sat() {
            i += 1;
        } else {
            kept = trial;
        }
    }
    Ok(Some(Theory::new(kept)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::rational::rat;

    fn x() -> Term {
        Term::var("x")
    }

    fn witness(r: SatResult) -> Valuation {
        match r {
            SatResult::Sat(f) => f,
            SatResult::Unsat => panic!("expected SAT"),
        }
    }

    #[test]
    fn sat_examples() {
        let th = Theory::new(vec![Equation::is_zero(x()), Equation::is_one(x())]);
        assert_eq!(satisfiable(&th).unwrap(), SatResult::Unsat);

        let th = Theory::new(vec![Equation::is_zero(Term::dist(x(), Term::neg(x())))]);
        let f = witness(satisfiable(&th).unwrap());
        assert_eq!(f.get("x"), Some(&rat(1, 2)));

        let th = Theory::new(vec![Equation::is_one(Term::half(x()))]);
        assert_eq!(satisfiable(&th).unwrap(), SatResult::Unsat);
    }

    #[test]
    fn entail_examples() {
        let taut = Equation::is_one(Term::oplus(Term::neg(x()), x()));
        assert_eq!(entails(&Theory::empty(), &taut).unwrap(), EntailResult::Entailed);

        let th = Theory::new(vec![Equation::new(x(), Term::neg(x()))]);
        let goal = Equation::is_zero(Term::dist(x(), Term::constant(rat(1, 2))));
        assert_eq!(entails(&th, &goal).unwrap(), EntailResult::Entailed);

        let th = Theory::new(vec![Equation::is_one(Term::oplus(x(), x()))]);
        match entails(&th, &Equation::is_one(x())).unwrap() {
            EntailResult::Refuted(f) => assert_eq!(f.get("x"), Some(&rat(1, 2))),
            EntailResult::Entailed => panic!("x⊕x=1 does not force x=1"),
        }
    }

    #[test]
    fn extremum_examples() {
        let e = extremum(&x(), &Theory::empty(), Sense::Max).unwrap();
        assert_eq!((e.value, e.argpoint.get("x").cloned()), (rat(1, 1), Some(rat(1, 1))));

        let e = extremum(&Term::half(x()), &Theory::empty(), Sense::Max).unwrap();
        assert_eq!((e.value, e.argpoint.get("x").cloned()), (rat(1, 2), Some(rat(1, 1))));

        let th = Theory::new(vec![Equation::is_zero(Term::dist(x(), Term::constant(rat(1, 4))))]);
        let e = extremum(&Term::oplus(x(), x()), &th, Sense::Min).unwrap();
        assert_eq!((e.value, e.argpoint.get("x").cloned()), (rat(1, 2), Some(rat(1, 4))));
    }

    #[test]
    fn extremum_of_unsatisfiable_theory_errors() {
        let th = Theory::new(vec![Equation::new(Term::Zero, Term::One)]);
        assert_eq!(extremum(&x(), &th, Sense::Max), Err(SolverError::Unsatisfiable));
    }

    #[test]
    fn shrinker_finds_core() {
        let y = Term::var("y");
        let th = Theory::new(vec![
            Equation::is_one(y.clone()),
            Equation::is_zero(x()),
            Equation::is_zero(y),
            Equation::is_one(x()),
        ]);
        let core = minimal_unsat_subset(&th).unwrap().unwrap();
        assert_eq!(core.len(), 2);
        assert_eq!(satisfiable(&core).unwrap(), SatResult::Unsat);
        assert_eq!(minimal_unsat_subset(&Theory::empty()).unwrap(), None);
    }

    #[test]
    fn out_of_range_scalar_is_rejected() {
        let th = Theory::new(vec![Equation::is_one(Term::scalar(rat(3, 2), x()))]);
        assert_eq!(satisfiable(&th), Err(SolverError::ScalarOutOfRange(rat(3, 2))));
    }
}
