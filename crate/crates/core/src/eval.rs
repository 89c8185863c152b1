//! Exact evaluation in the standard algebra `[0,1]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::syntax::rational::{clamp01, is_unit, Rational};
use crate::syntax::{formula_to_term, EpSeq, Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value assigned to variable `{0}`")]
    Unbound(String),
    #[error("scalar {0} lies outside [0,1]")]
    ScalarOutOfRange(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("value {value} for `{var}` lies outside [0,1]")]
pub struct OutOfUnit {
    pub var: String,
    pub value: Rational,
}

/// An assignment of truth values in `[0,1]` to variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<String, Rational>);

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn set(&mut self, var: impl Into<String>, value: Rational) -> Result<(), OutOfUnit> {
        let var = var.into();
        if !is_unit(&value) {
            return Err(OutOfUnit { var, value });
        }
        self.0.insert(var, value);
        Ok(())
    }

    pub fn with(mut self, var: impl Into<String>, value: Rational) -> Result<Self, OutOfUnit> {
        self.set(var, value)?;
        Ok(self)
    }

    pub fn get(&self, var: &str) -> Option<&Rational> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<BTreeMap<String, Rational>> for Valuation {
    type Error = OutOfUnit;

    fn try_from(map: BTreeMap<String, Rational>) -> Result<Self, OutOfUnit> {
        let mut v = Valuation::new();
        for (k, r) in map {
            v.set(k, r)?;
        }
        Ok(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Value of `δ` on a sequence of reals:
/// `Σ_{i≤p} vᵢ/2ⁱ + 2^{-p}·(Σ_{j≤q} wⱼ/2ʲ)/(1 − 2^{-q})`.
pub fn delta_value(seq: &EpSeq<Rational>) -> Rational {
    let p = seq.preperiod().len();
    let q = seq.period().len();
    // Horner: Σ vᵢ 2^{p-i} and Σ wⱼ 2^{q-j}
    let horner = |vals: &[Rational]| {
        vals.iter().fold(Rational::zero(), |acc, v| acc * Rational::from_integer(BigInt::from(2)) + v)
    };
    let two_p = Rational::from_integer(BigInt::one() << p);
    let two_q_minus_one = Rational::from_integer((BigInt::one() << q) - 1);
    (horner(seq.preperiod()) + horner(seq.period()) / two_q_minus_one) / two_p
}

/// Total weight of each distinct slot of a δ presentation: preperiod slot `i`
/// weighs `2^-i`, period slot `j` weighs `2^{q-p-j}/(2^q − 1)`.
pub fn aggregated_weights<T: Eq + std::hash::Hash>(seq: &EpSeq<T>) -> Vec<(&T, Rational)> {
    let mut index: HashMap<&T, usize> = HashMap::new();
    let mut distinct: Vec<&T> = Vec::new();
    for s in seq.slots() {
        index.entry(s).or_insert_with(|| {
            distinct.push(s);
            distinct.len() - 1
        });
    }
    distinct
        .iter()
        .map(|d| {
            let indicator = seq.map(|s| if s == *d { Rational::one() } else { Rational::zero() });
            (*d, delta_value(&indicator))
        })
        .collect()
}

/// Per-slot weights of the presentation, preperiod then period.
pub fn slot_weights(pre_len: usize, per_len: usize) -> (Vec<Rational>, Vec<Rational>) {
    let pre = (1..=pre_len).map(crate::syntax::rational::pow2_inv).collect();
    let denom = Rational::from_integer((BigInt::one() << per_len) - 1);
    let per = (1..=per_len)
        .map(|j| {
            Rational::from_integer(BigInt::one() << (per_len - j)) / &denom
                * crate::syntax::rational::pow2_inv(pre_len)
        })
        .collect();
    (pre, per)
}

pub fn eval(t: &Term, f: &Valuation) -> Result<Rational, EvalError> {
    use Term::*;
    let one = Rational::one;
    Ok(match t {
        Var(v) => f.get(v).cloned().ok_or_else(|| EvalError::Unbound(v.clone()))?,
        Zero => Rational::zero(),
        One => one(),
        Neg(a) => one() - eval(a, f)?,
        Oplus(a, b) => clamp01(eval(a, f)? + eval(b, f)?),
        Odot(a, b) => clamp01(eval(a, f)? + eval(b, f)? - one()),
        Ominus(a, b) => clamp01(eval(a, f)? - eval(b, f)?),
        Imp(a, b) => clamp01(one() - eval(a, f)? + eval(b, f)?),
        Meet(a, b) => eval(a, f)?.min(eval(b, f)?),
        Join(a, b) => eval(a, f)?.max(eval(b, f)?),
        Dist(a, b) => {
            let (a, b) = (eval(a, f)?, eval(b, f)?);
            if a > b {
                a - b
            } else {
                b - a
            }
        }
        Half(a) => eval(a, f)? / Rational::from_integer(BigInt::from(2)),
        Scalar(r, a) => {
            if !is_unit(r) {
                return Err(EvalError::ScalarOutOfRange(r.clone()));
            }
            r * eval(a, f)?
        }
        Power(a, k) => {
            let k = Rational::from_integer(BigInt::from(*k));
            clamp01(&k * eval(a, f)? - (k - one()))
        }
        Multiple(k, a) => clamp01(Rational::from_integer(BigInt::from(*k)) * eval(a, f)?),
        Delta(s) => {
            let mut cache: HashMap<&Term, Rational> = HashMap::new();
            let mut vals = Vec::new();
            for slot in s.slots() {
                let v = match cache.get(slot) {
                    Some(v) => v.clone(),
                    None => {
                        let v = eval(slot, f)?;
                        cache.insert(slot, v.clone());
                        v
                    }
                };
                vals.push(v);
            }
            let per = vals.split_off(s.preperiod().len());
            let vals = EpSeq::raw(vals, per).expect("period is nonempty");
            delta_value(&vals)
        }
    })
}

pub fn eval_formula(a: &Formula, f: &Valuation) -> Result<Rational, EvalError> {
    eval(&formula_to_term(a), f)
}

pub fn satisfies(a: &Formula, f: &Valuation) -> Result<bool, EvalError> {
    Ok(eval_formula(a, f)?.is_one())
}

/// A constant `L` with `|t(f) − t(g)| ≤ L · max_x |f(x) − g(x)|`.
pub fn lipschitz_bound(t: &Term) -> Rational {
    use Term::*;
    let int = |k: u64| Rational::from_integer(BigInt::from(k));
    match t {
        Var(_) => Rational::one(),
        Zero | One => Rational::zero(),
        Neg(a) => lipschitz_bound(a),
        Oplus(a, b) | Odot(a, b) | Ominus(a, b) | Imp(a, b) | Meet(a, b) | Join(a, b)
        | Dist(a, b) => lipschitz_bound(a) + lipschitz_bound(b),
        Half(a) => lipschitz_bound(a) / int(2),
        Scalar(r, a) => r * lipschitz_bound(a),
        Power(a, k) | Multiple(k, a) => int(*k) * lipschitz_bound(a),
        Delta(s) => aggregated_weights(s)
            .into_iter()
            .map(|(slot, w)| w * lipschitz_bound(slot))
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::rational::{pow2_inv, rat};

    fn x() -> Term {
        Term::var("x")
    }

    fn at(v: Rational) -> Valuation {
        Valuation::new().with("x", v).unwrap()
    }

    /// Σ_{i≤n} s_i / 2^i straight from the definition.
    fn partial_sum(s: &EpSeq<Rational>, n: usize) -> Rational {
        s.prefix(n).enumerate().map(|(i, v)| v * pow2_inv(i + 1)).sum()
    }

    #[test]
    fn delta_examples() {
        let constant = Term::delta(vec![], vec![x()]).unwrap();
        assert_eq!(eval(&constant, &at(rat(3, 5))).unwrap(), rat(3, 5));

        let half = Term::delta(vec![x()], vec![Term::Zero]).unwrap();
        assert_eq!(eval(&half, &at(rat(3, 4))).unwrap(), rat(3, 8));

        let third = Term::delta(vec![], vec![Term::Zero, Term::One]).unwrap();
        let v = eval(&third, &Valuation::new()).unwrap();
        let seq = EpSeq::new(vec![], vec![rat(0, 1), rat(1, 1)]).unwrap();
        let gap = &v - partial_sum(&seq, 64);
        assert!(gap >= Rational::zero() && gap <= pow2_inv(64));
        assert_eq!(v, rat(1, 3));
    }

    #[test]
    fn formula_examples() {
        let (a, b) = (Formula::var("x"), Formula::var("y"));
        let l1 = Formula::imp(a.clone(), Formula::imp(b.clone(), a.clone()));
        let f = Valuation::new().with("x", rat(1, 3)).unwrap().with("y", rat(4, 5)).unwrap();
        assert_eq!(eval_formula(&l1, &f).unwrap(), rat(1, 1));

        let g = Valuation::new().with("x", rat(1, 1)).unwrap().with("y", rat(1, 2)).unwrap();
        assert_eq!(eval_formula(&Formula::imp(a.clone(), b), &g).unwrap(), rat(1, 2));

        // ĥ(1) with 1 spelled as x → x
        let one = Formula::imp(a.clone(), a);
        assert_eq!(eval_formula(&Formula::hhat(one), &g).unwrap(), rat(1, 2));
    }

    #[test]
    fn lipschitz_examples() {
        assert_eq!(lipschitz_bound(&Term::oplus(x(), Term::var("y"))), rat(2, 1));
        assert_eq!(lipschitz_bound(&Term::neg(x())), rat(1, 1));
        let half = Term::delta(vec![x()], vec![Term::Zero]).unwrap();
        assert_eq!(lipschitz_bound(&half), rat(1, 2));
    }

    #[test]
    fn slot_weights_sum_to_one() {
        for p in 0..5 {
            for q in 1..6 {
                let (pre, per) = slot_weights(p, q);
                let total: Rational = pre.iter().chain(per.iter()).sum();
                assert_eq!(total, Rational::one(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn excluded_middle_fails_at_half() {
        let t = Term::join(x(), Term::neg(x()));
        assert_eq!(eval(&t, &at(rat(1, 2))).unwrap(), rat(1, 2));
    }

    #[test]
    fn unbound_and_out_of_range() {
        assert_eq!(eval(&x(), &Valuation::new()), Err(EvalError::Unbound("x".into())));
        assert!(Valuation::new().with("x", rat(3, 2)).is_err());
    }
}
