//! Affine forms over the problem variables.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::syntax::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn constant(n: usize, c: Rational) -> Self {
        Affine { coeffs: vec![Rational::zero(); n], constant: c }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut a = Affine::constant(n, Rational::zero());
        a.coeffs[i] = num_traits::One::one();
        a
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    /// `self += k·other`
    pub fn add_scaled(&mut self, k: &Rational, other: &Affine) {
        if k.is_zero() {
            return;
        }
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !o.is_zero() {
                *c += k * o;
            }
        }
        self.constant += k * &other.constant;
    }

    /// Exact range over the unit box.
    pub fn box_range(&self) -> (Rational, Rational) {
        let mut lo = self.constant.clone();
        let mut hi = self.constant.clone();
        for c in &self.coeffs {
            if c.is_negative() {
                lo += c;
            } else {
                hi += c;
            }
        }
        (lo, hi)
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out.add_scaled(&num_traits::One::one(), rhs);
        out
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out.add_scaled(&-Rational::from_integer(1.into()), rhs);
        out
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }
}

impl Mul<&Affine> for &Rational {
    type Output = Affine;
    fn mul(self, rhs: &Affine) -> Affine {
        Affine {
            coeffs: rhs.coeffs.iter().map(|c| self * c).collect(),
            constant: self * &rhs.constant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `expr ≤ 0`
    Le,
    /// `expr = 0`
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub expr: Affine,
    pub rel: Relation,
}

impl Constraint {
    pub fn le(expr: Affine) -> Self {
        Constraint { expr, rel: Relation::Le }
    }

    pub fn ge(expr: Affine) -> Self {
        Constraint { expr: -&expr, rel: Relation::Le }
    }

    pub fn eq(expr: Affine) -> Self {
        Constraint { expr, rel: Relation::Eq }
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let v = self.expr.eval(point);
        match self.rel {
            Relation::Le => !v.is_positive(),
            Relation::Eq => v.is_zero(),
        }
    }
}
