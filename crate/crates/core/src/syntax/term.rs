use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::epseq::{EmptyPeriod, EpSeq};
use super::rational::Rational;
use super::scalar::scalar_term;

/// A term over `{δ, ⊕, ¬, 0}` together with the derived operators.
///
/// Derived constructors are kept as-is so that evaluation and linearization
/// can treat them natively; [`Term::expand`] rewrites them into the primitive
/// signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    /// `¬0`
    One,
    Neg(Box<Term>),
    Oplus(Box<Term>, Box<Term>),
    /// `¬(¬a ⊕ ¬b)`
    Odot(Box<Term>, Box<Term>),
    /// `¬(¬a ⊕ b)`
    Ominus(Box<Term>, Box<Term>),
    /// `¬a ⊕ b`
    Imp(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    /// Chang's distance `(a ⊖ b) ⊕ (b ⊖ a)`.
    Dist(Box<Term>, Box<Term>),
    /// `δ(t, 0, 0, …)`, multiplication by one half.
    Half(Box<Term>),
    /// Multiplication by a rational scalar in `[0,1]`.
    Scalar(Rational, Box<Term>),
    /// `t ⊙ … ⊙ t` (`k` factors).
    Power(Box<Term>, u64),
    /// `t ⊕ … ⊕ t` (`k` summands).
    Multiple(u64, Box<Term>),
    Delta(EpSeq<Term>),
}

macro_rules! binary_ctor {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(
            pub fn $name(a: Term, b: Term) -> Term {
                Term::$variant(Box::new(a), Box::new(b))
            }
        )*
    };
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    binary_ctor! {
        oplus => Oplus,
        odot => Odot,
        ominus => Ominus,
        imp => Imp,
        meet => Meet,
        join => Join,
        dist => Dist,
    }

    pub fn half(t: Term) -> Term {
        Term::Half(Box::new(t))
    }

    pub fn scalar(r: Rational, t: Term) -> Term {
        Term::Scalar(r, Box::new(t))
    }

    /// The definable constant `r̲ = r·1`.
    pub fn constant(r: Rational) -> Term {
        if r.is_zero() {
            Term::Zero
        } else if r.is_one() {
            Term::One
        } else {
            Term::scalar(r, Term::One)
        }
    }

    pub fn power(t: Term, k: u64) -> Term {
        Term::Power(Box::new(t), k)
    }

    pub fn multiple(k: u64, t: Term) -> Term {
        Term::Multiple(k, Box::new(t))
    }

    /// Canonicalizing δ constructor.
    pub fn delta(pre: Vec<Term>, per: Vec<Term>) -> Result<Term, EmptyPeriod> {
        Ok(Term::Delta(EpSeq::new(pre, per)?))
    }

    pub fn delta_seq(seq: EpSeq<Term>) -> Term {
        Term::Delta(seq.canonical())
    }

    /// Meet of a nonempty list, folded to the left; `1` for an empty list.
    pub fn meet_all<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        terms.into_iter().reduce(Term::meet).unwrap_or(Term::One)
    }

    /// Join of a list, folded to the left; `0` for an empty list.
    pub fn join_all<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        terms.into_iter().reduce(Term::join).unwrap_or(Term::Zero)
    }

    pub fn is_primitive(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero => true,
            Term::Neg(t) => t.is_primitive(),
            Term::Oplus(a, b) => a.is_primitive() && b.is_primitive(),
            Term::Delta(s) => s.slots().all(Term::is_primitive),
            _ => false,
        }
    }

    /// Rewrites every derived constructor into `{δ, ⊕, ¬, 0}`.
    pub fn expand(&self) -> Term {
        use Term::*;
        let pair = |a: &Term, b: &Term| (a.expand(), b.expand());
        match self {
            Var(_) | Zero => self.clone(),
            One => Term::neg(Zero),
            Neg(t) => Term::neg(t.expand()),
            Oplus(a, b) => {
                let (a, b) = pair(a, b);
                Term::oplus(a, b)
            }
            Odot(a, b) => {
                let (a, b) = pair(a, b);
                prim_odot(a, b)
            }
            Ominus(a, b) => {
                let (a, b) = pair(a, b);
                prim_ominus(a, b)
            }
            Imp(a, b) => {
                let (a, b) = pair(a, b);
                Term::oplus(Term::neg(a), b)
            }
            Meet(a, b) => {
                // a ⊙ (¬a ⊕ b)
                let (a, b) = pair(a, b);
                prim_odot(a.clone(), Term::oplus(Term::neg(a), b))
            }
            Join(a, b) => {
                // (a ⊖ b) ⊕ b
                let (a, b) = pair(a, b);
                Term::oplus(prim_ominus(a, b.clone()), b)
            }
            Dist(a, b) => {
                let (a, b) = pair(a, b);
                Term::oplus(prim_ominus(a.clone(), b.clone()), prim_ominus(b, a))
            }
            Half(t) => Term::Delta(
                EpSeq::new(vec![t.expand()], vec![Zero]).expect("nonempty period"),
            ),
            Scalar(r, t) => match scalar_term(r, t.expand()) {
                Ok(t) => t,
                // Out-of-range scalars are rejected at construction by the parser;
                // an ill-formed tree expands its argument only.
                Err(_) => Term::scalar(r.clone(), t.expand()),
            },
            Power(t, k) => {
                let t = t.expand();
                (1..*k).fold(if *k == 0 { Term::neg(Zero) } else { t.clone() }, |acc, _| {
                    prim_odot(acc, t.clone())
                })
            }
            Multiple(k, t) => {
                let t = t.expand();
                (1..*k).fold(if *k == 0 { Zero } else { t.clone() }, |acc, _| {
                    Term::oplus(acc, t.clone())
                })
            }
            Delta(s) => Term::delta_seq(s.map(Term::expand)),
        }
    }

    /// Deep canonicalization of every δ argument sequence.
    pub fn canonical(&self) -> Term {
        self.map_children(&|t| t.canonical())
    }

    fn map_children(&self, f: &dyn Fn(&Term) -> Term) -> Term {
        use Term::*;
        let bx = |t: &Term| Box::new(f(t));
        match self {
            Var(_) | Zero | One => self.clone(),
            Neg(t) => Neg(bx(t)),
            Oplus(a, b) => Oplus(bx(a), bx(b)),
            Odot(a, b) => Odot(bx(a), bx(b)),
            Ominus(a, b) => Ominus(bx(a), bx(b)),
            Imp(a, b) => Imp(bx(a), bx(b)),
            Meet(a, b) => Meet(bx(a), bx(b)),
            Join(a, b) => Join(bx(a), bx(b)),
            Dist(a, b) => Dist(bx(a), bx(b)),
            Half(t) => Half(bx(t)),
            Scalar(r, t) => Scalar(r.clone(), bx(t)),
            Power(t, k) => Power(bx(t), *k),
            Multiple(k, t) => Multiple(*k, bx(t)),
            Delta(s) => Term::delta_seq(s.map(|t| f(t))),
        }
    }

    /// Direct subterms; each δ slot of the presentation is listed once.
    pub fn children(&self) -> Vec<&Term> {
        use Term::*;
        match self {
            Var(_) | Zero | One => vec![],
            Neg(t) | Half(t) | Scalar(_, t) | Power(t, _) | Multiple(_, t) => vec![t],
            Oplus(a, b) | Odot(a, b) | Ominus(a, b) | Imp(a, b) | Meet(a, b) | Join(a, b)
            | Dist(a, b) => vec![a, b],
            Delta(s) => s.slots().collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Term::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Term::size).sum::<usize>()
    }
}

fn prim_ominus(a: Term, b: Term) -> Term {
    Term::neg(Term::oplus(Term::neg(a), b))
}

fn prim_odot(a: Term, b: Term) -> Term {
    Term::neg(Term::oplus(Term::neg(a), Term::neg(b)))
}

/// S-expression rendering; this is the canonical textual form read back by
/// the parser.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Term::*;
        match self {
            Var(v) => write!(f, "{v}"),
            Zero => write!(f, "0"),
            One => write!(f, "1"),
            Neg(t) => write!(f, "(neg {t})"),
            Oplus(a, b) => write!(f, "(oplus {a} {b})"),
            Odot(a, b) => write!(f, "(odot {a} {b})"),
            Ominus(a, b) => write!(f, "(ominus {a} {b})"),
            Imp(a, b) => write!(f, "(to {a} {b})"),
            Meet(a, b) => write!(f, "(and {a} {b})"),
            Join(a, b) => write!(f, "(or {a} {b})"),
            Dist(a, b) => write!(f, "(dist {a} {b})"),
            Half(t) => write!(f, "(half {t})"),
            Scalar(r, t) if **t == One && !r.is_integer() => write!(f, "{r}"),
            Scalar(r, t) => write!(f, "(scalar {r} {t})"),
            Power(t, k) => write!(f, "(pow {t} {k})"),
            Multiple(k, t) => write!(f, "(mul {k} {t})"),
            Delta(s) => write_delta(f, s),
        }
    }
}

pub(crate) fn write_delta<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    s: &EpSeq<T>,
) -> fmt::Result {
    write!(f, "(delta (pre")?;
    for t in s.preperiod() {
        write!(f, " {t}")?;
    }
    write!(f, ") (per")?;
    for t in s.period() {
        write!(f, " {t}")?;
    }
    write!(f, "))")
}

/// An equation `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    /// `t ≈ 1`
    pub fn is_one(t: Term) -> Self {
        Equation::new(t, Term::One)
    }

    /// `t ≈ 0`
    pub fn is_zero(t: Term) -> Self {
        Equation::new(t, Term::Zero)
    }

    /// The single normal form `d(lhs, rhs) ≈ 0`, returned as the distance term.
    pub fn distance(&self) -> Term {
        Term::dist(self.lhs.clone(), self.rhs.clone())
    }

    /// An equivalent `t ≈ 1` form, returned as `t`.
    pub fn one_form(&self) -> Term {
        match (&self.lhs, &self.rhs) {
            (t, Term::One) | (Term::One, t) => t.clone(),
            (t, Term::Zero) | (Term::Zero, t) => Term::neg(t.clone()),
            _ => Term::neg(self.distance()),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = self.lhs.vars();
        self.rhs.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(eq {} {})", self.lhs, self.rhs)
    }
}

/// A finite set of equations together with a variable inventory.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    pub equations: Vec<Equation>,
    declared: BTreeSet<String>,
}

impl Theory {
    pub fn new(equations: Vec<Equation>) -> Self {
        Theory { equations, declared: BTreeSet::new() }
    }

    pub fn empty() -> Self {
        Theory::default()
    }

    /// Adds variables to the inventory even if no equation mentions them.
    pub fn declare<I, S>(mut self, vars: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.declared.extend(vars.into_iter().map(Into::into));
        self
    }

    pub fn push(&mut self, eq: Equation) {
        self.equations.push(eq);
    }

    pub fn with(mut self, eq: Equation) -> Self {
        self.push(eq);
        self
    }

    /// Union of two theories (equations concatenated, inventories merged).
    pub fn union(&self, other: &Theory) -> Theory {
        let mut out = self.clone();
        out.equations.extend(other.equations.iter().cloned());
        out.declared.extend(other.declared.iter().cloned());
        out
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = self.declared.clone();
        for eq in &self.equations {
            eq.lhs.collect_vars(&mut out);
            eq.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

impl FromIterator<Equation> for Theory {
    fn from_iter<I: IntoIterator<Item = Equation>>(iter: I) -> Self {
        Theory::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            writeln!(f, "{eq}")?;
        }
        Ok(())
    }
}
