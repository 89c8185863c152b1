//! Axiom schemata of the calculus and their instantiation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{EpSeq, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomName {
    L1,
    L2,
    L3,
    L4,
    D1a,
    D1b,
    D2a,
    D2b,
    D3a,
    D3b,
    D4a,
    D4b,
    D5,
    D6a,
    D6b,
    D7,
}

impl AxiomName {
    pub const ALL: [AxiomName; 16] = [
        AxiomName::L1,
        AxiomName::L2,
        AxiomName::L3,
        AxiomName::L4,
        AxiomName::D1a,
        AxiomName::D1b,
        AxiomName::D2a,
        AxiomName::D2b,
        AxiomName::D3a,
        AxiomName::D3b,
        AxiomName::D4a,
        AxiomName::D4b,
        AxiomName::D5,
        AxiomName::D6a,
        AxiomName::D6b,
        AxiomName::D7,
    ];

    pub fn as_str(self) -> &'static str {
        use AxiomName::*;
        match self {
            L1 => "L1",
            L2 => "L2",
            L3 => "L3",
            L4 => "L4",
            D1a => "D1a",
            D1b => "D1b",
            D2a => "D2a",
            D2b => "D2b",
            D3a => "D3a",
            D3b => "D3b",
            D4a => "D4a",
            D4b => "D4b",
            D5 => "D5",
            D6a => "D6a",
            D6b => "D6b",
            D7 => "D7",
        }
    }

    /// Scalar and sequence metavariables the schema expects, in that order.
    pub fn metavariables(self) -> (&'static [&'static str], &'static [&'static str]) {
        use AxiomName::*;
        match self {
            L1 | L3 | L4 | D6a | D6b => (&["alpha", "beta"], &[]),
            L2 => (&["alpha", "beta", "gamma"], &[]),
            D1a | D1b | D2a | D2b => (&[], &["alphas"]),
            D3a | D3b => (&["alpha"], &[]),
            D4a | D4b => (&["alpha"], &["alphas"]),
            D5 | D7 => (&[], &["alphas", "betas"]),
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom schema `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for AxiomName {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

/// Assignment of formulas to scalar metavariables and of formula sequences
/// to sequence metavariables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Binding {
    pub scalars: BTreeMap<String, Formula>,
    pub seqs: BTreeMap<String, EpSeq<Formula>>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn bind(mut self, mv: &str, f: Formula) -> Self {
        self.scalars.insert(mv.to_string(), f);
        self
    }

    pub fn bind_seq(mut self, mv: &str, s: EpSeq<Formula>) -> Self {
        self.seqs.insert(mv.to_string(), s);
        self
    }

    fn scalar(&self, mv: &str) -> Formula {
        self.scalars[mv].clone()
    }

    fn seq(&self, mv: &str) -> EpSeq<Formula> {
        self.seqs[mv].clone()
    }

    /// Applies `sub` to every bound formula.
    pub fn substitute(&self, sub: &BTreeMap<String, Formula>) -> Binding {
        Binding {
            scalars: self.scalars.iter().map(|(k, f)| (k.clone(), f.substitute(sub))).collect(),
            seqs: self.seqs.iter().map(|(k, s)| (k.clone(), s.map(|f| f.substitute(sub)))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingError {
    #[error("{axiom} expects metavariables {expected}, binding has {found}")]
    Shape {
        axiom: AxiomName,
        expected: String,
        found: String,
    },
}

fn check_shape(name: AxiomName, b: &Binding) -> Result<(), BindingError> {
    let (scalars, seqs) = name.metavariables();
    let ok = b.scalars.keys().map(String::as_str).eq(sorted(scalars))
        && b.seqs.keys().map(String::as_str).eq(sorted(seqs));
    if ok {
        return Ok(());
    }
    let list = |xs: Vec<&str>| if xs.is_empty() { "none".to_string() } else { xs.join(",") };
    Err(BindingError::Shape {
        axiom: name,
        expected: list(scalars.iter().chain(seqs).copied().collect()),
        found: list(b.scalars.keys().chain(b.seqs.keys()).map(String::as_str).collect()),
    })
}

fn sorted(xs: &'static [&'static str]) -> Vec<&'static str> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

fn delta(s: EpSeq<Formula>) -> Formula {
    Formula::delta_seq(s)
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::imp(a, b)
}

fn neg(a: Formula) -> Formula {
    Formula::neg(a)
}

/// The instance of schema `name` under `b`, in canonical form.
pub fn instantiate(name: AxiomName, b: &Binding) -> Result<Formula, BindingError> {
    use AxiomName::*;
    check_shape(name, b)?;
    let hhat = Formula::hhat;
    let f = match name {
        L1 => {
            let (a, bb) = (b.scalar("alpha"), b.scalar("beta"));
            imp(a.clone(), imp(bb, a))
        }
        L2 => {
            let (a, bb, c) = (b.scalar("alpha"), b.scalar("beta"), b.scalar("gamma"));
            imp(
                imp(a.clone(), bb.clone()),
                imp(imp(bb, c.clone()), imp(a, c)),
            )
        }
        L3 => {
            let (a, bb) = (b.scalar("alpha"), b.scalar("beta"));
            imp(
                imp(imp(a.clone(), bb.clone()), bb.clone()),
                imp(imp(bb, a.clone()), a),
            )
        }
        L4 => {
            let (a, bb) = (b.scalar("alpha"), b.scalar("beta"));
            imp(imp(neg(a.clone()), neg(bb.clone())), imp(bb, a))
        }
        D1a | D1b => {
            let s = b.seq("alphas");
            let left = neg(imp(delta(s.clone()), hhat(s.head().clone())));
            let right = hhat(delta(s.tail()));
            if name == D1a { imp(left, right) } else { imp(right, left) }
        }
        D2a | D2b => {
            let s = b.seq("alphas");
            let left = hhat(delta(s.clone()));
            let right = delta(s.map(|a| hhat(a.clone())));
            if name == D2a { imp(left, right) } else { imp(right, left) }
        }
        D3a | D3b => {
            let a = b.scalar("alpha");
            let left = delta(EpSeq::constant(a.clone()));
            if name == D3a { imp(left, a) } else { imp(a, left) }
        }
        D4a | D4b => {
            let s = b.seq("alphas");
            let left = hhat(delta(s.clone()));
            let right = delta(s.cons(Formula::falsum_over(b.scalar("alpha"))));
            if name == D4a { imp(left, right) } else { imp(right, left) }
        }
        D5 => {
            let (s, t) = (b.seq("alphas"), b.seq("betas"));
            let mixed = s.zip_with(&t, |a, bb| imp(neg(a.clone()), bb.clone()));
            imp(delta(s), delta(mixed))
        }
        D6a | D6b => {
            let (a, bb) = (b.scalar("alpha"), b.scalar("beta"));
            let left = hhat(neg(imp(a.clone(), bb.clone())));
            let right = neg(imp(hhat(a), hhat(bb)));
            if name == D6a { imp(left, right) } else { imp(right, left) }
        }
        D7 => {
            let (s, t) = (b.seq("alphas"), b.seq("betas"));
            let pairs = s.zip_with(&t, |a, bb| imp(a.clone(), bb.clone()));
            imp(delta(pairs), imp(delta(s), delta(t)))
        }
    };
    Ok(f.canonical())
}

/// Proposes a binding for `name` by destructuring `phi`; the caller confirms
/// it by instantiation.
fn propose(name: AxiomName, phi: &Formula) -> Option<Binding> {
    use AxiomName::*;
    let (l, r) = phi.as_imp()?;
    let b = Binding::new();
    Some(match name {
        L1 => {
            let (bb, _) = r.as_imp()?;
            b.bind("alpha", l.clone()).bind("beta", bb.clone())
        }
        L2 => {
            let (a, bb) = l.as_imp()?;
            let (_, ac) = r.as_imp()?;
            let (_, c) = ac.as_imp()?;
            b.bind("alpha", a.clone()).bind("beta", bb.clone()).bind("gamma", c.clone())
        }
        L3 => {
            let (ab, _) = l.as_imp()?;
            let (a, bb) = ab.as_imp()?;
            b.bind("alpha", a.clone()).bind("beta", bb.clone())
        }
        L4 => {
            let (na, nb) = l.as_imp()?;
            b.bind("alpha", na.as_neg()?.clone()).bind("beta", nb.as_neg()?.clone())
        }
        D1a | D1b => {
            let side = if name == D1a { l } else { r };
            let (d, _) = side.as_neg()?.as_imp()?;
            b.bind_seq("alphas", d.as_delta()?.clone())
        }
        D2a | D2b => {
            let side = if name == D2a { l } else { r };
            b.bind_seq("alphas", side.as_hhat()?.as_delta()?.clone())
        }
        D3a => b.bind("alpha", r.clone()),
        D3b => b.bind("alpha", l.clone()),
        D4a | D4b => {
            let (h, d) = if name == D4a { (l, r) } else { (r, l) };
            let s = h.as_hhat()?.as_delta()?;
            let head = d.as_delta()?.head();
            let (a, _) = head.as_neg()?.as_imp()?;
            b.bind("alpha", a.clone()).bind_seq("alphas", s.clone())
        }
        D5 => {
            let s = l.as_delta()?;
            let t = r.as_delta()?.try_map(|f| f.as_imp().map(|(_, c)| c.clone()).ok_or(()));
            b.bind_seq("alphas", s.clone()).bind_seq("betas", t.ok()?)
        }
        D6a | D6b => {
            let side = if name == D6a { l } else { r };
            let (a, bb) = side.as_hhat()?.as_neg()?.as_imp()?;
            b.bind("alpha", a.clone()).bind("beta", bb.clone())
        }
        D7 => {
            let (s, t) = r.as_imp()?;
            b.bind_seq("alphas", s.as_delta()?.clone()).bind_seq("betas", t.as_delta()?.clone())
        }
    })
}

/// Every schema of which `phi` is an instance, with a witnessing binding.
pub fn match_axiom(phi: &Formula) -> Vec<(AxiomName, Binding)> {
    let target = phi.canonical();
    AxiomName::ALL
        .into_iter()
        .filter_map(|name| {
            let b = propose(name, &target)?;
            (instantiate(name, &b).ok()? == target).then_some((name, b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    fn names(phi: &Formula) -> Vec<AxiomName> {
        match_axiom(phi).into_iter().map(|(n, _)| n).collect()
    }

    #[test]
    fn recognizes_l2() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let phi = imp(
            imp(x.clone(), y.clone()),
            imp(imp(y.clone(), z.clone()), imp(x.clone(), z.clone())),
        );
        let found = match_axiom(&phi);
        assert_eq!(found.len(), 1);
        let (name, b) = &found[0];
        assert_eq!(*name, AxiomName::L2);
        assert_eq!(b.scalars["alpha"], x);
        assert_eq!(b.scalars["beta"], y);
        assert_eq!(b.scalars["gamma"], z);
    }

    #[test]
    fn recognizes_d3a() {
        let x = v("x");
        let phi = imp(Formula::delta(vec![], vec![x.clone()]).unwrap(), x.clone());
        assert_eq!(names(&phi), vec![AxiomName::D3a]);
    }

    #[test]
    fn plain_implication_is_no_axiom() {
        assert!(names(&imp(v("x"), v("y"))).is_empty());
    }

    #[test]
    fn d1_matches_by_tail_shift() {
        let s = EpSeq::new(vec![v("x")], vec![v("y"), v("z")]).unwrap();
        let b = Binding::new().bind_seq("alphas", s);
        for name in [AxiomName::D1a, AxiomName::D1b] {
            let phi = instantiate(name, &b).unwrap();
            assert!(names(&phi).contains(&name), "{name} not recognized in {phi}");
        }
    }

    #[test]
    fn every_schema_recognizes_its_instances() {
        let s = EpSeq::new(vec![v("x")], vec![imp(v("y"), v("x"))]).unwrap();
        let t = EpSeq::new(vec![], vec![v("z"), neg(v("x"))]).unwrap();
        for name in AxiomName::ALL {
            let (scalars, seqs) = name.metavariables();
            let mut b = Binding::new();
            for (i, mv) in scalars.iter().enumerate() {
                b = b.bind(mv, [v("x"), neg(v("y")), imp(v("z"), v("x"))][i].clone());
            }
            for (i, mv) in seqs.iter().enumerate() {
                b = b.bind_seq(mv, [s.clone(), t.clone()][i].clone());
            }
            let phi = instantiate(name, &b).unwrap();
            assert!(names(&phi).contains(&name), "{name} not recognized in {phi}");
        }
    }

    #[test]
    fn wrong_metavariables_are_rejected() {
        let b = Binding::new().bind("alpha", v("x"));
        assert!(matches!(instantiate(AxiomName::L1, &b), Err(BindingError::Shape { .. })));
    }

    #[test]
    fn names_round_trip() {
        for name in AxiomName::ALL {
            assert_eq!(name.as_str().parse::<AxiomName>().unwrap(), name);
        }
        assert!("D8".parse::<AxiomName>().is_err());
    }
}
