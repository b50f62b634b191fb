//! Sparse multivariate polynomials over ℚ.
//!
//! Monomials are exponent vectors with trailing zeros trimmed, so the
//! derived `Vec` ordering is lexicographic with `x1 > x2 > …`. Polynomials in
//! different numbers of variables mix freely.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{fmt_q, Field, Q};

pub type Mono = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Mono> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (o, s) in out.iter_mut().zip(b) {
        *o = o.checked_sub(*s)?;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

fn var_mono(v: usize, e: u32) -> Mono {
    if e == 0 {
        return Vec::new();
    }
    let mut m = vec![0; v + 1];
    m[v] = e;
    m
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    /// The coordinate `x_{v+1}` (0-based index `v`).
    pub fn var(v: usize) -> Self {
        Self::monomial(var_mono(v, 1), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Number of variables that can appear, i.e. one past the highest index.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.get(v).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Coefficients as a polynomial in `x_v`, indexed by power.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0);
            let mut rest = m.clone();
            if v < rest.len() {
                rest[v] = 0;
                while rest.last() == Some(&0) {
                    rest.pop();
                }
            }
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.get(v).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[v] -= 1;
            while dm.last() == Some(&0) {
                dm.pop();
            }
            out.add_term(dm, c.clone() * Q::from_i64(e as i64));
        }
        out
    }

    /// Value at a point; missing coordinates are an error of the caller.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert!(self.nvars() <= point.len(), "point has too few coordinates");
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        let (md, cd) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some((mr, cr)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = mono_div(&mr, &md)?;
            let t = Poly::monomial(m, cr / cd.clone());
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `x_v`.
    fn prem(&self, b: &Self, v: usize) -> Self {
        let db = b.degree_in(v);
        let lb = b.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            let shift = Poly::monomial(var_mono(v, dr - db), Q::one());
            r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
        }
        r
    }

    /// Monic gcd of the coefficients in `x_v`.
    fn content_in(&self, v: usize) -> Self {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> Self {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    fn max_var(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max().filter(|&l| l > 0).map(|l| l - 1)
    }
}

/// Monic greatest common divisor, by recursive primitive remainder sequences.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let v = a.max_var().max(b.max_var()).expect("non-constant");
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &b.content_in(v));
    }
    if db == 0 {
        return gcd(&a.content_in(v), b);
    }
    let (ca, cb) = (a.content_in(v), b.content_in(v));
    let g = gcd(&ca, &cb);
    let (pa, pb) = (a.div_exact(&ca).unwrap(), b.div_exact(&cb).unwrap());
    let (mut r0, mut r1) = if da >= db { (pa, pb) } else { (pb, pa) };
    loop {
        let r = r0.prem(&r1, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return g;
        }
        r0 = r1;
        r1 = r.primitive_in(v);
    }
    g.mul(&r1.primitive_in(v)).monic()
}

pub(crate) fn var_name(v: usize) -> String {
    format!("x{}", v + 1)
}

fn fmt_mono(m: &[u32]) -> String {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { var_name(v) } else { format!("{}^{}", var_name(v), e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_mono(m);
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}
