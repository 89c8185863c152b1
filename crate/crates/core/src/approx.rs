//! Lattice approximation of sampled functions by terms: exact affine pieces,
//! two-point fits, the greedy meet/join construction and δ-limit assembly.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::eval::{eval, EvalError, Valuation};
use crate::syntax::rational::{ceil_int, clamp01, is_unit};
use crate::syntax::{EmptyPeriod, Rational, Term};

/// The variable standing for coordinate `j` (1-based): `x1, x2, …`.
pub fn coordinate(j: usize) -> Term {
    Term::var(format!("x{j}"))
}

fn scaled(r: &Rational, t: Term) -> Term {
    if r.is_zero() {
        Term::Zero
    } else if r.is_one() {
        t
    } else if t == Term::One {
        Term::constant(r.clone())
    } else {
        Term::scalar(r.clone(), t)
    }
}

/// A term evaluating to `clamp₀₁(a·y + b)` for every value `y ∈ [0,1]` of
/// the term `y`.
///
/// With `a < 0` the line is rewritten over `¬y` as `(−a)·¬y + (a + b)`, so
/// the slope is nonnegative. Then, for an integer `N` bounding the slope and
/// the intercept, `N·(c/N·y ⊕ d/N)` (intercept `d ≥ 0`) or `N·(c/N·y ⊖ |d|/N)`
/// (`d < 0`) truncates at both ends exactly where the clamp does.
pub fn affine_over(a: &Rational, b: &Rational, y: Term) -> Term {
    if a.is_zero() {
        return Term::constant(clamp01(b.clone()));
    }
    let (y, c, d) = if a.is_negative() {
        (Term::neg(y), -a, a + b)
    } else {
        (y, a.clone(), b.clone())
    };
    let n = ceil_int(&c).max(ceil_int(&d.abs())).max(1.into());
    let big_n = Rational::from_integer(n.clone());
    let slope = scaled(&(&c / &big_n), y);
    let offset = scaled(&(d.abs() / &big_n), Term::One);
    let inner = match (d.is_negative(), offset == Term::Zero) {
        (_, true) => slope,
        (false, false) => Term::oplus(slope, offset),
        (true, false) => Term::ominus(slope, offset),
    };
    let n: u64 = n.try_into().expect("multiplier fits in u64");
    if n == 1 {
        inner
    } else {
        Term::multiple(n, inner)
    }
}

/// `clamp₀₁(a·xⱼ + b)` over coordinate `j` (1-based).
pub fn affine_term(a: &Rational, b: &Rational, j: usize) -> Term {
    affine_over(a, b, coordinate(j))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("the two points coincide")]
    SamePoint,
    #[error("the sample set is empty")]
    NoSamples,
    #[error("sample {0} has the wrong dimension")]
    Dimension(usize),
    #[error("sample {0} has a coordinate or value outside [0,1]")]
    OutOfUnit(usize),
    #[error("samples {0} and {1} are the same point")]
    Duplicate(usize, usize),
    #[error("epsilon must be positive")]
    Epsilon,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The affine fit through `(u, fu)` and `(v, fv)` along the first coordinate
/// where the points differ; exact at both points.
pub fn two_point_fit(u: &[Rational], v: &[Rational], fu: &Rational, fv: &Rational) -> Result<Term, ApproxError> {
    let j = u
        .iter()
        .zip(v)
        .position(|(a, b)| a != b)
        .ok_or(ApproxError::SamePoint)?;
    let a = (fu - fv) / (&u[j] - &v[j]);
    let b = fu - &a * &u[j];
    Ok(affine_term(&a, &b, j + 1))
}

/// Finitely many points of `[0,1]ⁿ` with target values in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    dim: usize,
    points: Vec<Vec<Rational>>,
    values: Vec<Rational>,
}

impl SampleSet {
    pub fn new(dim: usize, samples: Vec<(Vec<Rational>, Rational)>) -> Result<Self, ApproxError> {
        if samples.is_empty() {
            return Err(ApproxError::NoSamples);
        }
        for (i, (p, f)) in samples.iter().enumerate() {
            if p.len() != dim {
                return Err(ApproxError::Dimension(i));
            }
            if !is_unit(f) || !p.iter().all(is_unit) {
                return Err(ApproxError::OutOfUnit(i));
            }
            if let Some(j) = samples[..i].iter().position(|(q, _)| q == p) {
                return Err(ApproxError::Duplicate(j, i));
            }
        }
        let (points, values) = samples.into_iter().unzip();
        Ok(SampleSet { dim, points, values })
    }

    /// Samples of `f` on the grid `0, 1/m, …, 1` (one dimension).
    pub fn grid(m: u64, f: impl Fn(&Rational) -> Rational) -> Result<Self, ApproxError> {
        let samples = (0..=m)
            .map(|i| {
                let x = Rational::new(i.into(), m.into());
                let y = f(&x);
                (vec![x], y)
            })
            .collect();
        SampleSet::new(1, samples)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn valuation(&self, i: usize) -> Valuation {
        let mut f = Valuation::new();
        for (j, x) in self.points[i].iter().enumerate() {
            f.set(format!("x{}", j + 1), x.clone()).expect("coordinates lie in [0,1]");
        }
        f
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    pub term: Term,
    pub epsilon: Rational,
    /// `eval(term)` at each sample.
    pub values: Vec<Rational>,
    /// `|eval(term) − f|` at each sample.
    pub errors: Vec<Rational>,
    pub max_error: Rational,
}

/// A term with its values at every sample.
struct Piece {
    term: Term,
    at: Vec<Rational>,
}

fn evaluate(term: Term, s: &SampleSet) -> Result<Piece, ApproxError> {
    let at = (0..s.len()).map(|i| eval(&term, &s.valuation(i))).collect::<Result<_, _>>()?;
    Ok(Piece { term, at })
}

/// Index of the sample where `excess` is largest and positive.
fn worst(excess: impl Iterator<Item = Rational>) -> Option<usize> {
    let mut best: Option<(usize, Rational)> = None;
    for (i, e) in excess.enumerate() {
        if e.is_positive() && best.as_ref().is_none_or(|(_, b)| e > *b) {
            best = Some((i, e));
        }
    }
    best.map(|(i, _)| i)
}

/// Greedy construction of `λᵤ = ⋀ s_{u,v}` with `λᵤ < f + ε` on every sample.
fn lower_envelope(s: &SampleSet, u: usize, eps: &Rational) -> Result<Piece, ApproxError> {
    let f = s.values();
    let mut fits: Vec<Option<Piece>> = (0..s.len()).map(|_| None).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut at: Vec<Rational> = vec![Rational::one(); s.len()];
    // a violation is λ(w) ≥ f(w) + ε
    while let Some(w) = worst(at.iter().zip(f).map(|(l, fw)| violation(l - fw, eps))) {
        let mut picked = None;
        for v in (0..s.len()).filter(|&v| v != u && !chosen.contains(&v)) {
            if fits[v].is_none() {
                let t = two_point_fit(&s.points()[u], &s.points()[v], &f[u], &f[v])?;
                fits[v] = Some(evaluate(t, s)?);
            }
            let fit = fits[v].as_ref().unwrap();
            if fit.at[w] < &f[w] + eps {
                picked = Some(v);
                break;
            }
        }
        let v = picked.expect("the fit through w itself repairs w");
        chosen.push(v);
        let fit = fits[v].as_ref().unwrap();
        for (l, x) in at.iter_mut().zip(&fit.at) {
            if x < l {
                *l = x.clone();
            }
        }
    }
    let term = Term::meet_all(chosen.iter().map(|&v| fits[v].as_ref().unwrap().term.clone()));
    Ok(Piece { term, at })
}

/// A lattice term `μ = ⋁ λᵤ` with `f(w) − ε < μ(w) < f(w) + ε` at every
/// sample `w`.
pub fn lattice_approximation(s: &SampleSet, eps: &Rational) -> Result<ApproxReport, ApproxError> {
    if !eps.is_positive() {
        return Err(ApproxError::Epsilon);
    }
    let f = s.values();
    let term = if s.len() == 1 {
        Term::constant(f[0].clone())
    } else {
        let mut lambdas: Vec<Option<Piece>> = (0..s.len()).map(|_| None).collect();
        let mut chosen: Vec<usize> = Vec::new();
        let mut at: Vec<Rational> = vec![Rational::zero(); s.len()];
        // a violation is μ(w) ≤ f(w) − ε
        while let Some(w) = worst(at.iter().zip(f).map(|(m, fw)| violation(fw - m, eps))) {
            let mut picked = None;
            for u in (0..s.len()).filter(|u| !chosen.contains(u)) {
                if lambdas[u].is_none() {
                    lambdas[u] = Some(lower_envelope(s, u, eps)?);
                }
                if lambdas[u].as_ref().unwrap().at[w] > &f[w] - eps {
                    picked = Some(u);
                    break;
                }
            }
            let u = picked.expect("λ_w covers w");
            chosen.push(u);
            for (m, x) in at.iter_mut().zip(&lambdas[u].as_ref().unwrap().at) {
                if x > m {
                    *m = x.clone();
                }
            }
        }
        Term::join_all(chosen.iter().map(|&u| lambdas[u].as_ref().unwrap().term.clone()))
    };
    report(term, s, eps)
}

/// Positive exactly when `gap ≥ ε`, and then increasing in `gap`.
fn violation(gap: Rational, eps: &Rational) -> Rational {
    if gap >= *eps {
        gap - eps + Rational::one()
    } else {
        Rational::zero()
    }
}

/// Evaluates `term` at every sample and collects the exact errors.
pub fn report(term: Term, s: &SampleSet, eps: &Rational) -> Result<ApproxReport, ApproxError> {
    let values: Vec<Rational> = (0..s.len()).map(|i| eval(&term, &s.valuation(i))).collect::<Result<_, _>>()?;
    let errors: Vec<Rational> = values.iter().zip(s.values()).map(|(m, f)| (m - f).abs()).collect();
    let max_error = errors.iter().max().cloned().unwrap_or_else(Rational::zero);
    Ok(ApproxReport { term, epsilon: eps.clone(), values, errors, max_error })
}

/// `δ(seq) ⊕ δ(seq)` for the sequence with the given preperiod and period.
pub fn delta_limit(pre: Vec<Term>, per: Vec<Term>) -> Result<Term, EmptyPeriod> {
    let d = Term::delta(pre, per)?;
    Ok(Term::oplus(d.clone(), d))
}
