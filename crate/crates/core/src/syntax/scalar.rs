//! Binary expansions and the definable scalar multiples `r̲t = δ(t⃗)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::epseq::EpSeq;
use super::rational::{is_unit, Rational};
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scalar {0} lies outside [0,1]")]
pub struct ScalarOutOfRange(pub Rational);

/// The eventually periodic binary digits `d₁d₂…` with `Σ dᵢ/2ⁱ = r`.
///
/// `0` is `0̅`, `1` is `1̅`, dyadic rationals in `(0,1)` terminate with a zero
/// tail, and every other rational gets its unique periodic expansion.
pub fn binary_expansion(r: &Rational) -> Result<EpSeq<bool>, ScalarOutOfRange> {
    if !is_unit(r) {
        return Err(ScalarOutOfRange(r.clone()));
    }
    if r.is_one() {
        return Ok(EpSeq::constant(true));
    }
    let den = r.denom().clone();
    let mut rem: BigInt = r.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&rem) {
            let per = digits.split_off(start);
            return Ok(EpSeq::new(digits, per).expect("cycle is nonempty"));
        }
        seen.insert(rem.clone(), digits.len());
        rem <<= 1;
        if rem >= den {
            rem -= &den;
            digits.push(true);
        } else {
            digits.push(false);
        }
    }
}

/// `r̲t`: δ applied to the expansion of `r` with each 1-digit replaced by `t`
/// and each 0-digit by `0`.
pub fn scalar_term(r: &Rational, t: Term) -> Result<Term, ScalarOutOfRange> {
    let bits = binary_expansion(r)?;
    Ok(Term::delta_seq(bits.map(|&b| if b { t.clone() } else { Term::Zero })))
}

/// Sum of the digits weighted by `2^-i`, in closed form.
pub fn expansion_value(bits: &EpSeq<bool>) -> Rational {
    let weight = |b: &bool| if *b { Rational::one() } else { Rational::zero() };
    crate::eval::delta_value(&bits.map(weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::rational::{int, pow2_inv, rat};

    fn bits(pre: &[u8], per: &[u8]) -> EpSeq<bool> {
        let b = |v: &[u8]| v.iter().map(|&d| d == 1).collect();
        EpSeq::new(b(pre), b(per)).unwrap()
    }

    #[test]
    fn conventions() {
        assert_eq!(binary_expansion(&rat(1, 2)).unwrap(), bits(&[1], &[0]));
        assert_eq!(binary_expansion(&int(1)).unwrap(), bits(&[], &[1]));
        assert_eq!(binary_expansion(&int(0)).unwrap(), bits(&[], &[0]));
        assert_eq!(binary_expansion(&rat(3, 8)).unwrap(), bits(&[0, 1, 1], &[0]));
        assert_eq!(binary_expansion(&rat(5, 4)), Err(ScalarOutOfRange(rat(5, 4))));
        assert!(binary_expansion(&rat(-1, 4)).is_err());
    }

    #[test]
    fn one_third_matches_geometric_partial_sums() {
        let e = binary_expansion(&rat(1, 3)).unwrap();
        assert_eq!(e, bits(&[], &[0, 1]));
        // Σ_{i≤64} dᵢ/2ⁱ stays within 2^-64 of 1/3.
        let partial: Rational = e
            .prefix(64)
            .enumerate()
            .filter(|(_, &d)| d)
            .map(|(i, _)| pow2_inv(i + 1))
            .sum();
        let gap = rat(1, 3) - partial;
        assert!(gap >= Rational::zero() && gap <= pow2_inv(64));
    }

    #[test]
    fn scalar_term_shapes() {
        let x = Term::var("x");
        assert_eq!(
            scalar_term(&int(1), x.clone()).unwrap(),
            Term::delta(vec![], vec![x.clone()]).unwrap()
        );
        assert_eq!(
            scalar_term(&int(0), x.clone()).unwrap(),
            Term::delta(vec![], vec![Term::Zero]).unwrap()
        );
    }
}
