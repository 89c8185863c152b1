//! Piecewise-linear structure of terms in `[0,1]`.
//!
//! Every operator is either affine in its arguments (`¬`, scalars, `δ`) or a
//! `min`/`max` of two affine forms (`⊕`, `⊖`, `⊙`, `→`, `∧`, `∨`, `d`,
//! powers and multiples). Subterms are shared, so each distinct subterm
//! contributes at most one case split.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::affine::Affine;
use crate::eval::aggregated_weights;
use crate::syntax::{Rational, Term};

/// Affine combination of earlier nodes.
#[derive(Debug, Clone, Default)]
pub struct Lin {
    pub terms: Vec<(usize, Rational)>,
    pub constant: Rational,
}

impl Lin {
    fn constant(c: Rational) -> Self {
        Lin { terms: Vec::new(), constant: c }
    }

    fn of(node: usize, k: Rational) -> Self {
        Lin { terms: vec![(node, k)], constant: Rational::zero() }
    }

    fn plus(mut self, node: usize, k: Rational) -> Self {
        self.terms.push((node, k));
        self
    }

    fn offset(mut self, c: Rational) -> Self {
        self.constant += c;
        self
    }

    /// The affine form over the problem variables, given node values.
    pub fn resolve(&self, values: &[Affine], nvars: usize) -> Affine {
        let mut out = Affine::constant(nvars, self.constant.clone());
        for (node, k) in &self.terms {
            out.add_scaled(k, &values[*node]);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pick {
    Min,
    Max,
}

#[derive(Debug, Clone)]
pub enum Node {
    Var(usize),
    Affine(Lin),
    /// `min(p, q)` or `max(p, q)`.
    Split { pick: Pick, p: Lin, q: Lin },
}

/// Hash-consed DAG of the subterms of a family of terms, children first.
pub struct Dag<'a> {
    pub nodes: Vec<Node>,
    index: HashMap<&'a Term, usize>,
    vars: HashMap<String, usize>,
}

fn int(k: u64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

impl<'a> Dag<'a> {
    /// `vars` fixes the variable order of every affine form.
    pub fn new(vars: &[String]) -> Self {
        Dag {
            nodes: Vec::new(),
            index: HashMap::new(),
            vars: vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn split_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Split { .. })).count()
    }

    /// Inserts `t` and its subterms; returns the node of `t`.
    ///
    /// Panics if `t` mentions a variable outside the inventory.
    pub fn insert(&mut self, t: &'a Term) -> usize {
        if let Some(&id) = self.index.get(t) {
            return id;
        }
        let one = Rational::one;
        let split = |pick, p, q| Node::Split { pick, p, q };
        let node = match t {
            Term::Var(v) => Node::Var(*self.vars.get(v.as_str()).expect("variable in inventory")),
            Term::Zero => Node::Affine(Lin::constant(Rational::zero())),
            Term::One => Node::Affine(Lin::constant(one())),
            Term::Neg(a) => {
                let a = self.insert(a);
                Node::Affine(Lin::of(a, -one()).offset(one()))
            }
            Term::Half(a) => {
                let a = self.insert(a);
                Node::Affine(Lin::of(a, Rational::new(1.into(), 2.into())))
            }
            Term::Scalar(r, a) => {
                let a = self.insert(a);
                Node::Affine(Lin::of(a, r.clone()))
            }
            Term::Delta(s) => {
                let mut lin = Lin::default();
                for (slot, w) in aggregated_weights(s) {
                    let id = self.insert(slot);
                    lin = lin.plus(id, w);
                }
                Node::Affine(lin)
            }
            Term::Oplus(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(Pick::Min, Lin::of(a, one()).plus(b, one()), Lin::constant(one()))
            }
            Term::Odot(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(
                    Pick::Max,
                    Lin::of(a, one()).plus(b, one()).offset(-one()),
                    Lin::constant(Rational::zero()),
                )
            }
            Term::Ominus(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(Pick::Max, Lin::of(a, one()).plus(b, -one()), Lin::constant(Rational::zero()))
            }
            Term::Imp(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(
                    Pick::Min,
                    Lin::of(a, -one()).plus(b, one()).offset(one()),
                    Lin::constant(one()),
                )
            }
            Term::Meet(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(Pick::Min, Lin::of(a, one()), Lin::of(b, one()))
            }
            Term::Join(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(Pick::Max, Lin::of(a, one()), Lin::of(b, one()))
            }
            Term::Dist(a, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                split(
                    Pick::Max,
                    Lin::of(a, one()).plus(b, -one()),
                    Lin::of(b, one()).plus(a, -one()),
                )
            }
            Term::Power(a, k) => match k {
                0 => Node::Affine(Lin::constant(one())),
                1 => Node::Affine(Lin::of(self.insert(a), one())),
                k => {
                    let a = self.insert(a);
                    split(
                        Pick::Max,
                        Lin::of(a, int(*k)).offset(-int(k - 1)),
                        Lin::constant(Rational::zero()),
                    )
                }
            },
            Term::Multiple(k, a) => match k {
                0 => Node::Affine(Lin::constant(Rational::zero())),
                1 => Node::Affine(Lin::of(self.insert(a), one())),
                k => {
                    let a = self.insert(a);
                    split(Pick::Min, Lin::of(a, int(*k)), Lin::constant(one()))
                }
            },
        };
        self.nodes.push(node);
        let id = self.nodes.len() - 1;
        self.index.insert(t, id);
        id
    }
}
