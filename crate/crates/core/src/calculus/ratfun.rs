//! Rational functions over ℚ in canonical form: coprime numerator and
//! denominator, denominator with leading coefficient 1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{gcd, Poly};
use crate::field::{Field, Q};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.inv()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coeff().inv();
        RatFun { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_poly() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }

    pub fn partial(&self, v: usize) -> Self {
        if self.is_poly() {
            return Self::from_poly(self.num.derivative(v));
        }
        let top = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::new(top, self.den.mul(&self.den))
    }

    /// `None` at a pole.
    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Substitutes `x_i ↦ subs[i]`.
    pub fn compose(&self, subs: &[RatFun]) -> Self {
        let n = compose_poly(&self.num, subs);
        if self.is_poly() {
            return n;
        }
        n / compose_poly(&self.den, subs)
    }
}

fn compose_poly(p: &Poly, subs: &[RatFun]) -> RatFun {
    assert!(p.nvars() <= subs.len(), "substitution misses variables");
    let mut acc = RatFun::zero();
    for (m, c) in p.terms() {
        let mut t = RatFun::from_q(c);
        for (s, &e) in subs.iter().zip(m) {
            if e > 0 {
                t = t * s.pow(e as i64);
            }
        }
        acc = acc + t;
    }
    acc
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, o: RatFun) -> RatFun {
        if self.den == o.den {
            if self.is_poly() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::new(self.num.add(&o.num), self.den);
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, o: RatFun) -> RatFun {
        self + (-o)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, o: RatFun) -> RatFun {
        if self.is_poly() && o.is_poly() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl std::ops::Div for RatFun {
    type Output = RatFun;
    fn div(self, o: RatFun) -> RatFun {
        self * o.inv()
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of the zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    fn from_q(q: &Q) -> Self {
        Self::from_poly(Poly::constant(q.clone()))
    }

    fn pivot_cost(&self) -> usize {
        (self.num.len() + self.den.len()) * 8 + (self.num.total_degree() + self.den.total_degree()) as usize
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| if p.len() > 1 { format!("({p})") } else { p.to_string() };
        let num = if self.num.len() > 1 || self.num.leading_coeff() < Q::zero() {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        write!(f, "{num}/{}", wrap(&self.den))
    }
}
