#![allow(dead_code)]

use deltalog::calculus::{AxiomName, Binding};
use deltalog::eval::{eval, Valuation};
use deltalog::syntax::{rat, EpSeq, Formula, Rational, Term};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn var(rng: &mut impl Rng, vars: &[&str]) -> Term {
    Term::var(vars[rng.gen_range(0..vars.len())])
}

pub fn leaf(rng: &mut impl Rng, vars: &[&str]) -> Term {
    match rng.gen_range(0..6) {
        0 => Term::Zero,
        1 => Term::One,
        2 => Term::constant(rat(rng.gen_range(1..16), 16)),
        _ => var(rng, vars),
    }
}

/// Random term of depth at most `depth` using every operator.
pub fn term(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Term {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng, vars);
    }
    let d = depth - 1;
    match rng.gen_range(0..14) {
        0 => Term::neg(term(rng, d, vars)),
        1 => Term::oplus(term(rng, d, vars), term(rng, d, vars)),
        2 => Term::odot(term(rng, d, vars), term(rng, d, vars)),
        3 => Term::ominus(term(rng, d, vars), term(rng, d, vars)),
        4 => Term::imp(term(rng, d, vars), term(rng, d, vars)),
        5 => Term::meet(term(rng, d, vars), term(rng, d, vars)),
        6 => Term::join(term(rng, d, vars), term(rng, d, vars)),
        7 => Term::dist(term(rng, d, vars), term(rng, d, vars)),
        8 => Term::half(term(rng, d, vars)),
        9 => Term::scalar(rat(rng.gen_range(0..=9), 9), term(rng, d, vars)),
        10 => Term::power(term(rng, d, vars), rng.gen_range(0..=3)),
        11 => Term::multiple(rng.gen_range(0..=3), term(rng, d, vars)),
        _ => Term::delta_seq(seq(rng, d, vars)),
    }
}

pub fn seq(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> EpSeq<Term> {
    let pre = (0..rng.gen_range(0..3)).map(|_| term(rng, depth, vars)).collect();
    let per = (0..rng.gen_range(1..4)).map(|_| term(rng, depth, vars)).collect();
    EpSeq::new(pre, per).unwrap()
}

pub fn rational01(rng: &mut impl Rng, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    rat(rng.gen_range(0..=q), q)
}

pub fn valuation(rng: &mut impl Rng, vars: &[&str], max_den: i64) -> Valuation {
    let mut f = Valuation::new();
    for v in vars {
        f.set(*v, rational01(rng, max_den)).unwrap();
    }
    f
}

pub fn formula(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::var(vars[rng.gen_range(0..vars.len())]);
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Formula::neg(formula(rng, d, vars)),
        1 | 2 => Formula::imp(formula(rng, d, vars), formula(rng, d, vars)),
        _ => Formula::delta_seq(formula_seq(rng, d, vars)),
    }
}

pub fn formula_seq(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> EpSeq<Formula> {
    let pre = (0..rng.gen_range(0..3)).map(|_| formula(rng, depth, vars)).collect();
    let per = (0..rng.gen_range(1..3)).map(|_| formula(rng, depth, vars)).collect();
    EpSeq::new(pre, per).unwrap()
}

/// A random binding with exactly the metavariables `name` expects.
pub fn binding(rng: &mut impl Rng, name: AxiomName, vars: &[&str]) -> Binding {
    let (scalars, seqs) = name.metavariables();
    let mut b = Binding::new();
    for mv in scalars {
        b = b.bind(mv, formula(rng, 2, vars));
    }
    for mv in seqs {
        b = b.bind_seq(mv, formula_seq(rng, 1, vars));
    }
    b
}

/// All points of the grid with step `1/m` over `vars`.
pub fn grid(vars: &[&str], m: i64) -> Vec<Valuation> {
    let mut out = vec![Valuation::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|f| (0..=m).map(move |i| f.clone().with(*v, rat(i, m)).unwrap()))
            .collect();
    }
    out
}

/// Minimum and maximum of `t` on the grid.
pub fn grid_extrema(t: &Term, points: &[Valuation]) -> (Rational, Rational) {
    let vals: Vec<Rational> = points.iter().map(|f| eval(t, f).unwrap()).collect();
    (vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
}
