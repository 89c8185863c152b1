//! Exact rational truth values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_unit(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

pub fn clamp01(r: Rational) -> Rational {
    if r.is_negative() {
        Rational::zero()
    } else if r > Rational::one() {
        Rational::one()
    } else {
        r
    }
}

/// `2^-k` as an exact rational.
pub fn pow2_inv(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> BigInt {
    let (q, m) = r.numer().div_mod_floor(r.denom());
    if m.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Option<BigInt> {
        let body = s.strip_prefix('-').unwrap_or(s);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() || q.is_negative() {
                return None;
            }
            Some(Rational::new(parse_int(p)?, q))
        }
        None => Some(Rational::from_integer(parse_int(text)?)),
    }
}

/// Decimal rendering for human-facing output only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let r = r.abs();
    let int_part = r.numer() / r.denom();
    let mut rem = r.numer() - &int_part * r.denom();
    let mut out = format!("{}{}", if neg { "-" } else { "" }, int_part);
    if digits > 0 {
        out.push('.');
        for _ in 0..digits {
            rem *= 10;
            let d = &rem / r.denom();
            rem -= &d * r.denom();
            out.push_str(&d.to_string());
        }
    }
    out
}
