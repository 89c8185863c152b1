//! Eventually periodic infinite sequences.
//!
//! An [`EpSeq`] presents the infinite sequence `pre[0], pre[1], …, pre[p-1],
//! per[0], …, per[q-1], per[0], …`. Two presentations denote the same
//! sequence exactly when their canonical forms are equal: the period is
//! primitive and the last preperiod element differs from the last period
//! element.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("eventually periodic sequence needs a nonempty period")]
pub struct EmptyPeriod;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSeq<T> {
    pre: Vec<T>,
    per: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for EpSeq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpSeq(pre={:?}, per={:?})", self.pre, self.per)
    }
}

impl<T> EpSeq<T> {
    /// Keeps the presentation exactly as given.
    pub fn raw(pre: Vec<T>, per: Vec<T>) -> Result<Self, EmptyPeriod> {
        if per.is_empty() {
            return Err(EmptyPeriod);
        }
        Ok(EpSeq { pre, per })
    }

    pub fn preperiod(&self) -> &[T] {
        &self.pre
    }

    pub fn period(&self) -> &[T] {
        &self.per
    }

    pub fn into_parts(self) -> (Vec<T>, Vec<T>) {
        (self.pre, self.per)
    }

    /// Element at 0-based position `i`.
    pub fn get(&self, i: usize) -> &T {
        if i < self.pre.len() {
            &self.pre[i]
        } else {
            &self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn head(&self) -> &T {
        self.get(0)
    }

    /// Every element occurring in the presentation, preperiod first.
    pub fn slots(&self) -> impl Iterator<Item = &T> {
        self.pre.iter().chain(self.per.iter())
    }

    /// The first `n` elements of the denoted sequence.
    pub fn prefix(&self, n: usize) -> impl Iterator<Item = &T> {
        (0..n).map(move |i| self.get(i))
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> EpSeq<U> {
        EpSeq {
            pre: self.pre.iter().map(&mut f).collect(),
            per: self.per.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<U, E, F: FnMut(&T) -> Result<U, E>>(&self, mut f: F) -> Result<EpSeq<U>, E> {
        Ok(EpSeq {
            pre: self.pre.iter().map(&mut f).collect::<Result<_, _>>()?,
            per: self.per.iter().map(&mut f).collect::<Result<_, _>>()?,
        })
    }
}

impl<T: Clone + PartialEq> EpSeq<T> {
    /// Builds and canonicalizes.
    pub fn new(pre: Vec<T>, per: Vec<T>) -> Result<Self, EmptyPeriod> {
        Ok(Self::raw(pre, per)?.canonical())
    }

    /// The constant sequence `⟨x⟩`.
    pub fn constant(x: T) -> Self {
        EpSeq { pre: Vec::new(), per: vec![x] }
    }

    pub fn is_canonical(&self) -> bool {
        primitive_root_len(&self.per) == self.per.len()
            && self.pre.last().is_none_or(|l| Some(l) != self.per.last())
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    pub fn canonicalize(&mut self) {
        let root = primitive_root_len(&self.per);
        self.per.truncate(root);
        while self.pre.last().is_some() && self.pre.last() == self.per.last() {
            self.pre.pop();
            self.per.rotate_right(1);
        }
    }

    /// The sequence with its first element dropped.
    pub fn tail(&self) -> Self {
        let mut out = self.clone();
        if out.pre.is_empty() {
            out.per.rotate_left(1);
        } else {
            out.pre.remove(0);
        }
        out.canonical()
    }

    /// The sequence `x, self…`.
    pub fn cons(&self, x: T) -> Self {
        let mut pre = Vec::with_capacity(self.pre.len() + 1);
        pre.push(x);
        pre.extend(self.pre.iter().cloned());
        EpSeq { pre, per: self.per.clone() }.canonical()
    }

    /// Pointwise combination, aligned on a common preperiod and period length.
    pub fn zip_with<U, V, F>(&self, other: &EpSeq<U>, mut f: F) -> EpSeq<V>
    where
        V: Clone + PartialEq,
        F: FnMut(&T, &U) -> V,
    {
        let p = self.pre.len().max(other.pre.len());
        let q = self.per.len().lcm(&other.per.len());
        let pre = (0..p).map(|i| f(self.get(i), other.get(i))).collect();
        let per = (p..p + q).map(|i| f(self.get(i), other.get(i))).collect();
        EpSeq { pre, per }.canonical()
    }
}

fn primitive_root_len<T: PartialEq>(per: &[T]) -> usize {
    let q = per.len();
    (1..=q)
        .find(|d| q.is_multiple_of(*d) && (*d..q).all(|i| per[i] == per[i % d]))
        .unwrap_or(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(pre: &[u8], per: &[u8]) -> EpSeq<u8> {
        EpSeq::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(seq(&[1], &[1]).into_parts(), (vec![], vec![1]));
        assert_eq!(seq(&[], &[0, 1, 0, 1]).into_parts(), (vec![], vec![0, 1]));
        assert_eq!(seq(&[1, 0], &[1, 0]).into_parts(), (vec![], vec![1, 0]));
        assert_eq!(seq(&[2, 0], &[1, 0]).into_parts(), (vec![2], vec![0, 1]));
        assert_eq!(EpSeq::<u8>::raw(vec![1], vec![]), Err(EmptyPeriod));
    }

    #[test]
    fn tail_cons_zip() {
        let s = seq(&[5], &[1, 2]);
        assert_eq!(s.tail(), seq(&[], &[1, 2]));
        assert_eq!(s.tail().tail(), seq(&[], &[2, 1]));
        assert_eq!(s.tail().cons(5), s);
        let t = seq(&[], &[1, 2, 3]);
        let z = s.zip_with(&t, |a, b| a + b);
        let expect: Vec<u8> = (0..20).map(|i| s.get(i) + t.get(i)).collect();
        assert_eq!(z.prefix(20).copied().collect::<Vec<_>>(), expect);
    }

    fn arb_seq() -> impl Strategy<Value = EpSeq<u8>> {
        (prop::collection::vec(0u8..3, 0..5), prop::collection::vec(0u8..3, 1..7))
            .prop_map(|(pre, per)| EpSeq::raw(pre, per).unwrap())
    }

    proptest! {
        #[test]
        fn canonicalize_preserves_sequence(s in arb_seq()) {
            let c = s.clone().canonical();
            prop_assert!(c.is_canonical());
            prop_assert_eq!(c.clone().canonical(), c.clone());
            let n = s.preperiod().len() + 2 * s.period().len();
            prop_assert!(s.prefix(n).eq(c.prefix(n)));
        }

        #[test]
        fn equal_sequences_have_equal_canonical_forms(a in arb_seq(), b in arb_seq()) {
            let n = a.preperiod().len().max(b.preperiod().len())
                + 2 * a.period().len() * b.period().len();
            let same = a.prefix(n).eq(b.prefix(n));
            prop_assert_eq!(same, a.canonical() == b.canonical());
        }
    }
}
