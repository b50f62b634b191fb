//! Differential forms and vector fields on a coordinate patch of ℝⁿ.

use std::collections::BTreeMap;
use std::fmt;

use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::field::Field;

/// Vector field components `X^i`.
pub type VectorField = Vec<RatFun>;

/// `X(f) = Σ X^i ∂_i f`.
pub fn apply_vector(x: &[RatFun], f: &RatFun) -> RatFun {
    x.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(RatFun::zero(), |acc, (i, c)| acc + c.clone() * f.partial(i))
}

/// `[X, Y]^i = X(Y^i) − Y(X^i)`.
pub fn lie_bracket(x: &[RatFun], y: &[RatFun]) -> VectorField {
    assert_eq!(x.len(), y.len());
    (0..x.len()).map(|i| apply_vector(x, &y[i]) - apply_vector(y, &x[i])).collect()
}

pub fn constant_vector(n: usize, i: usize) -> VectorField {
    (0..n).map(|k| if k == i { RatFun::one() } else { RatFun::zero() }).collect()
}

/// A `k`-form `Σ_I c_I dx_I` over strictly increasing index sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormField {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Vec<usize>, RatFun>,
}

/// Sorts `idx` and returns the sign of the sorting permutation, or `None`
/// on a repeated index.
fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                neg = !neg;
            } else if idx[j] == idx[j + 1] {
                return None;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(neg)
}

impl FormField {
    /// The zero `k`-form; for `k > n` this is the only `k`-form.
    pub fn zero(n: usize, k: usize) -> Self {
        FormField { n, k, coeffs: BTreeMap::new() }
    }

    pub fn function(n: usize, f: RatFun) -> Self {
        let mut out = FormField { n, k: 0, coeffs: BTreeMap::new() };
        out.add_term(Vec::new(), f);
        out
    }

    /// `Σ ξ_i dx_i`.
    pub fn one_form(xi: &[RatFun]) -> Self {
        let mut out = FormField { n: xi.len(), k: 1, coeffs: BTreeMap::new() };
        for (i, c) in xi.iter().enumerate() {
            out.add_term(vec![i], c.clone());
        }
        out
    }

    /// Builds from `(indices, coefficient)` pairs with 0-based, not
    /// necessarily sorted indices; each term means `c dx_{i1}∧…∧dx_{ik}`.
    pub fn from_terms(n: usize, k: usize, terms: Vec<(Vec<usize>, RatFun)>) -> Result<Self> {
        if k > n {
            return Err(Error::DegreeOverflow(k, n));
        }
        let mut out = Self::zero(n, k);
        for (mut idx, c) in terms {
            if idx.len() != k {
                return Err(Error::Dimension(format!("term of degree {} in a {k}-form", idx.len())));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
                return Err(Error::Dimension(format!("index {} out of range 1..={n}", bad + 1)));
            }
            match sort_sign(&mut idx) {
                None => {}
                Some(neg) => out.add_term(idx, if neg { -c } else { c }),
            }
        }
        Ok(out)
    }

    /// Two-form with `ω(∂_i, ∂_j) = w[i][j]`.
    pub fn from_gram(w: &crate::matrix::Matrix<RatFun>) -> Self {
        let n = w.rows();
        let mut out = FormField { n, k: 2, coeffs: BTreeMap::new() };
        for i in 0..n {
            for j in i + 1..n {
                out.add_term(vec![i, j], w[(i, j)].clone());
            }
        }
        out
    }

    /// Gram matrix of a 2-form.
    pub fn gram(&self) -> crate::matrix::Matrix<RatFun> {
        assert_eq!(self.k, 2, "gram of a non-2-form");
        let mut m = crate::matrix::Matrix::zeros(self.n, self.n);
        for (idx, c) in &self.coeffs {
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c.clone();
        }
        m
    }

    fn add_term(&mut self, idx: Vec<usize>, c: RatFun) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&idx) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(idx, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `dx_I` for sorted `idx`.
    pub fn coeff(&self, idx: &[usize]) -> RatFun {
        self.coeffs.get(idx).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFun)> {
        self.coeffs.iter()
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> RatFun {
        assert_eq!(self.k, 0);
        self.coeff(&[])
    }

    /// Components of a 1-form.
    pub fn as_covector(&self) -> Vec<RatFun> {
        assert_eq!(self.k, 1);
        (0..self.n).map(|i| self.coeff(&[i])).collect()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "forms on different patches");
        assert_eq!(self.k, other.k, "adding forms of different degree");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-RatFun::one())
    }

    pub fn scale(&self, f: &RatFun) -> Self {
        let mut out = FormField { n: self.n, k: self.k, coeffs: BTreeMap::new() };
        for (idx, c) in &self.coeffs {
            out.add_term(idx.clone(), c.clone() * f.clone());
        }
        out
    }

    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.n, self.k + 1);
        for (idx, c) in &self.coeffs {
            for i in 0..self.n {
                if idx.contains(&i) {
                    continue;
                }
                let dc = c.partial(i);
                if dc.is_zero() {
                    continue;
                }
                let pos = idx.iter().filter(|&&j| j < i).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, i);
                out.add_term(new_idx, if pos % 2 == 1 { -dc } else { dc });
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms on different patches");
        let mut out = Self::zero(self.n, self.k + other.k);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let inversions: usize = a.iter().map(|i| b.iter().filter(|&&j| j < *i).count()).sum();
                let mut idx = a.clone();
                idx.extend(b);
                idx.sort_unstable();
                let c = ca.clone() * cb.clone();
                out.add_term(idx, if inversions % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// `ι_X`; the interior product of a function is zero.
    pub fn interior(&self, x: &[RatFun]) -> Self {
        assert_eq!(x.len(), self.n);
        let mut out = FormField { n: self.n, k: self.k.saturating_sub(1), coeffs: BTreeMap::new() };
        if self.k == 0 {
            return out;
        }
        for (idx, c) in &self.coeffs {
            for (p, &i) in idx.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(p);
                let t = c.clone() * x[i].clone();
                out.add_term(rest, if p % 2 == 1 { -t } else { t });
            }
        }
        out
    }

    /// `L_X = ι_X d + d ι_X`.
    pub fn lie(&self, x: &[RatFun]) -> Self {
        let first = self.d().interior(x);
        if self.k == 0 {
            return first;
        }
        first.add(&self.interior(x).d())
    }

    /// Pull-back along `h: ℝᵐ → ℝⁿ` given by its components in `m`
    /// variables.
    pub fn pullback(&self, h: &[RatFun], m: usize) -> Self {
        assert_eq!(h.len(), self.n, "map has wrong number of components");
        let dh: Vec<FormField> = h.iter().map(|hi| FormField::function(m, hi.clone()).d()).collect();
        let mut out = Self::zero(m, self.k);
        for (idx, c) in &self.coeffs {
            let mut term = FormField::function(m, c.compose(h));
            for &i in idx {
                term = term.wedge(&dh[i]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitutes coordinates into every coefficient, keeping the patch.
    pub fn eval_coeffs(&self, point: &[crate::field::Q]) -> Option<BTreeMap<Vec<usize>, crate::field::Q>> {
        self.coeffs.iter().map(|(i, c)| c.eval(point).map(|v| (i.clone(), v))).collect()
    }
}

impl fmt::Display for FormField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let basis = idx.iter().map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("∧");
                match (basis.is_empty(), c.constant_value()) {
                    (true, _) => format!("{c}"),
                    (false, Some(v)) if v.is_one() => basis,
                    _ => format!("({c}) {basis}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
