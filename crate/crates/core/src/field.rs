//! Exact scalar fields: the rationals, the Gaussian rationals, and (in
//! `calculus::ratfun`) rational functions. Everything downstream is generic
//! over [`Field`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Canonical by construction (`BigRational` reduces).
pub type Q = BigRational;

/// Gaussian rational `re + i·im`, used for complexified spaces.
pub type C = Complex<Q>;

/// A commutative field with exact, decidable equality.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_q(q: &Q) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_q(&q(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv()
    }

    /// Heuristic size used to prefer cheap pivots during elimination.
    fn pivot_cost(&self) -> usize {
        0
    }
}

/// Fields with an involutive conjugation (identity on real fields).
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Q as Zero>::is_zero(self)
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn pivot_cost(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Conjugate for Q {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Field for C {
    fn zero() -> Self {
        Complex::new(Field::zero(), Field::zero())
    }
    fn one() -> Self {
        Complex::new(Field::one(), Field::zero())
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(&self.re) && Field::is_zero(&self.im)
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        let norm = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        Complex::new(self.re.clone() / norm.clone(), -self.im.clone() / norm)
    }
    fn from_q(q: &Q) -> Self {
        Complex::new(q.clone(), Field::zero())
    }
    fn pivot_cost(&self) -> usize {
        self.re.pivot_cost() + self.im.pivot_cost()
    }
}

impl Conjugate for C {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn c(re: i64, im: i64) -> C {
    Complex::new(q(re), q(im))
}

pub fn cq(re: Q, im: Q) -> C {
    Complex::new(re, im)
}

/// The imaginary unit.
pub fn i_unit() -> C {
    c(0, 1)
}

/// Parses `"p"` or `"p/q"` (optional sign, no whitespace inside).
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let parsed = Q::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(parsed)
}

/// Canonical `"p/q"` rendering (`"p"` when the denominator is 1).
pub fn fmt_q(v: &Q) -> String {
    v.to_string()
}

pub fn is_positive(v: &Q) -> bool {
    v.is_positive()
}

pub fn is_negative(v: &Q) -> bool {
    v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(qf(2, 4), qf(1, 2));
        assert_eq!(qf(3, -6), qf(-1, 2));
        assert_eq!(fmt_q(&qf(-3, 6)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-5", "3/7", "-12/5"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("4/6").unwrap(), qf(2, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = c(3, 4);
        assert!(Field::is_one(&(z.clone() * z.inv())));
        assert_eq!(z.conj(), c(3, -4));
        assert_eq!(i_unit() * i_unit(), c(-1, 0));
    }
}
