//! Spinors: complex forms on `V` with the Clifford action of `(V ⊕ V*)_ℂ`.
//!
//! A spinor stores `2ⁿ` coefficients indexed by bitmasks, bit `i` standing
//! for `e^{i+1}`. Products of basis covectors are taken in increasing index
//! order.

use std::fmt;

use crate::dirac::{graph_data, pull_back, DiracStructure, GTVector};
use crate::error::{Error, Result};
use crate::field::{Conjugate, Field, C, Q};
use crate::gcs::{validate_gcs, GCStructure};
use crate::induction::{theorem_main_verdict, LinearSubmanifold};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

pub const MAX_N: usize = 6;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spinor {
    n: usize,
    coeffs: Vec<C>,
}

fn bits_below(mask: usize, i: usize) -> u32 {
    (mask & ((1 << i) - 1)).count_ones()
}

/// Sign of `e^A ∧ e^B` relative to `e^{A∪B}`, or `None` if they overlap.
fn merge_sign(a: usize, b: usize) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        swaps += (a >> i).count_ones() - if a >> i & 1 == 1 { 1 } else { 0 };
        rest &= rest - 1;
    }
    Some(swaps % 2 == 1)
}

fn signed(v: C, negate: bool) -> C {
    if negate {
        -v
    } else {
        v
    }
}

impl Spinor {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::TooLarge(n, MAX_N));
        }
        Ok(Spinor { n, coeffs: vec![C::zero(); 1 << n] })
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut s = Self::zero(n)?;
        s.coeffs[0] = C::one();
        Ok(s)
    }

    pub fn top(n: usize) -> Result<Self> {
        let mut s = Self::zero(n)?;
        s.coeffs[(1 << n) - 1] = C::one();
        Ok(s)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<C>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::TooLarge(n, MAX_N));
        }
        if coeffs.len() != 1 << n {
            return Err(Error::Dimension(format!("{} coefficients for n = {n}", coeffs.len())));
        }
        Ok(Spinor { n, coeffs })
    }

    /// Terms given as 0-based index lists, e.g. `([0, 1], c)` for `c·e¹∧e²`.
    /// Unsorted lists are reordered with the matching sign.
    pub fn from_terms(n: usize, terms: &[(Vec<usize>, C)]) -> Result<Self> {
        let mut s = Self::zero(n)?;
        for (idx, v) in terms {
            let mut t = Self::one(n)?.scale(v);
            for &i in idx {
                if i >= n {
                    return Err(Error::Dimension(format!("index {} exceeds n = {n}", i + 1)));
                }
                t = t.wedge(&Self::covector(&crate::matrix::unit_vec(n, i)));
            }
            s = s.add(&t);
        }
        Ok(s)
    }

    pub fn covector(xi: &[C]) -> Self {
        let n = xi.len();
        assert!(n <= MAX_N, "spinor dimension too large");
        let mut coeffs = vec![C::zero(); 1 << n];
        for (i, v) in xi.iter().enumerate() {
            coeffs[1 << i] = v.clone();
        }
        Spinor { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &C {
        &self.coeffs[mask]
    }

    /// Nonzero terms as (0-based index list, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, C)> {
        let mut masks: Vec<usize> = (0..self.coeffs.len()).filter(|&m| !self.coeffs[m].is_zero()).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
        masks
            .into_iter()
            .map(|m| ((0..self.n).filter(|i| m >> i & 1 == 1).collect(), self.coeffs[m].clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Spinor { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        Spinor { n: self.n, coeffs: self.coeffs.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn conj(&self) -> Self {
        Spinor { n: self.n, coeffs: self.coeffs.iter().map(Conjugate::conj).collect() }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = vec![C::zero(); self.coeffs.len()];
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in o.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if let Some(neg) = merge_sign(a, b) {
                    out[a | b] = out[a | b].clone() + signed(x.clone() * y.clone(), neg);
                }
            }
        }
        Spinor { n: self.n, coeffs: out }
    }

    pub fn interior(&self, x: &[C]) -> Self {
        let mut out = vec![C::zero(); self.coeffs.len()];
        for (m, v) in self.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (i, xi) in x.iter().enumerate() {
                if m >> i & 1 == 1 && !xi.is_zero() {
                    let t = m & !(1 << i);
                    out[t] = out[t].clone() + signed(v.clone() * xi.clone(), bits_below(m, i) % 2 == 1);
                }
            }
        }
        Spinor { n: self.n, coeffs: out }
    }

    /// Component of degree `k`.
    pub fn part(&self, k: u32) -> Self {
        Spinor {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, v)| if m.count_ones() == k { v.clone() } else { C::zero() })
                .collect(),
        }
    }

    /// Equal up to a nonzero constant.
    pub fn proportional(&self, o: &Self) -> bool {
        if self.n != o.n || self.is_zero() || o.is_zero() {
            return false;
        }
        let p = self.coeffs.iter().position(|v| !v.is_zero()).unwrap();
        if o.coeffs[p].is_zero() {
            return false;
        }
        let ratio = o.coeffs[p].div(&self.coeffs[p]);
        self.scale(&ratio) == *o
    }

    /// `exp(ε)` for an ambient skew matrix, `ε = Σ_{i<j} ε_ij eⁱ∧eʲ`.
    pub fn exp_form(eps: &Matrix<C>) -> Result<Self> {
        let n = eps.rows();
        let mut two = Self::zero(n)?;
        for i in 0..n {
            for j in i + 1..n {
                two.coeffs[(1 << i) | (1 << j)] = eps[(i, j)].clone();
            }
        }
        let mut out = Self::one(n)?;
        let mut power = Self::one(n)?;
        for k in 1..=n / 2 {
            power = power.wedge(&two).scale(&C::from_q(&Q::new(1.into(), (k as i64).into())));
            out = out.add(&power);
        }
        Ok(out)
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(idx, v)| {
                let basis = if idx.is_empty() {
                    "1".to_string()
                } else {
                    idx.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("∧")
                };
                format!("({v})·{basis}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(X + ξ)·μ = ι_X μ + ξ ∧ μ`.
pub fn clifford_act(v: &GTVector<C>, mu: &Spinor) -> Spinor {
    assert_eq!(v.n(), mu.n, "dimension mismatch");
    mu.interior(v.x()).add(&Spinor::covector(v.xi()).wedge(mu))
}

/// `{v : v·μ = 0}`.
pub fn null_space(mu: &Spinor) -> Result<Subspace<C>> {
    if mu.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    let n = mu.n;
    let cols: Vec<Vec<C>> = (0..2 * n)
        .map(|a| clifford_act(&GTVector::from_coords(crate::matrix::unit_vec(2 * n, a)), mu).coeffs)
        .collect();
    Ok(Subspace::kernel(&Matrix::from_cols(1 << n, cols)))
}

pub fn is_pure(mu: &Spinor) -> Result<bool> {
    Ok(null_space(mu)?.dim() == mu.n)
}

/// `c · det(R°) ∧ exp(ε)` with `ε` on `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PureSpinorData {
    pub c: C,
    pub r: Subspace<C>,
    /// Gram matrix in the canonical basis of `R`.
    pub eps: Matrix<C>,
}

impl PureSpinorData {
    pub fn new(c: C, r: Subspace<C>, eps: Matrix<C>) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroSpinor);
        }
        if eps.rows() != r.dim() || eps.cols() != r.dim() {
            return Err(Error::Dimension(format!("ε is {}x{}, R has dimension {}", eps.rows(), eps.cols(), r.dim())));
        }
        if !eps.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(PureSpinorData { c, r, eps })
    }

    /// Extension of `ε` by zero: `Σ ε(b_a, b_c) e^{p_a} ∧ e^{p_c}` over the pivots.
    pub fn extension(&self) -> Matrix<C> {
        let n = self.r.ambient();
        let p = self.r.pivots();
        let mut out = Matrix::zeros(n, n);
        for a in 0..p.len() {
            for c in 0..p.len() {
                out[(p[a], p[c])] = self.eps[(a, c)].clone();
            }
        }
        out
    }
}

/// `det(R°)`: wedge of the canonical basis of the annihilator.
pub fn det_annihilator(r: &Subspace<C>) -> Result<Spinor> {
    let mut out = Spinor::one(r.ambient())?;
    for theta in r.annihilator().basis_vectors() {
        out = out.wedge(&Spinor::covector(&theta));
    }
    Ok(out)
}

/// `c · det(R°) ∧ exp(ε̃)` for a given ambient extension `ε̃` of `ε`.
pub fn pure_from_extension(c: &C, r: &Subspace<C>, eps_ambient: &Matrix<C>) -> Result<Spinor> {
    Ok(det_annihilator(r)?.wedge(&Spinor::exp_form(eps_ambient)?).scale(c))
}

/// Its null space is `L(R, −ε)`: `ι_X exp(ε) = ι_Xε ∧ exp(ε)` is cancelled by `ξ = −ι_Xε`.
pub fn pure_from_data(d: &PureSpinorData) -> Result<Spinor> {
    pure_from_extension(&d.c, &d.r, &d.extension())
}

/// Pure spinor (with `c = 1`) whose null space is `L`.
pub fn spinor_from_dirac(l: &DiracStructure<C>) -> Result<Spinor> {
    let (ge, _) = graph_data(l);
    pure_from_data(&PureSpinorData::new(C::one(), ge.carrier, -&ge.form)?)
}

/// Pure-spinor line of a generalized complex structure: the one annihilated by `L₊`.
pub fn spinor_of_gcs(j: &GCStructure<Q>) -> Result<Spinor> {
    spinor_from_dirac(&crate::gcs::eigenbundles(j).0)
}

/// The structure with `L₊ = null_space(μ)`; requires `μ` pure and transverse.
pub fn gcs_of_spinor(mu: &Spinor) -> Result<GCStructure<Q>> {
    let rep = transverse_test(mu)?;
    if !rep.by_pairing {
        return Err(Error::NotAdmissible("L_μ ∩ L_μ̄ ≠ 0".into()));
    }
    let l = null_space(mu)?;
    let lb = l.conj();
    let mut cols = l.basis_vectors();
    cols.extend(lb.basis_vectors());
    let n2 = 2 * mu.n;
    let p = Matrix::from_cols(n2, cols);
    let i = crate::field::i_unit();
    let d = Matrix::diagonal(&(0..n2).map(|k| if k < mu.n { i.clone() } else { -i.clone() }).collect::<Vec<_>>());
    let jc = &(&p * &d) * &p.inverse().expect("L ⊕ L̄ spans");
    if jc.entries().iter().any(|z| !z.im.is_zero()) {
        return Err(Error::NotComplex { residual: "imaginary entries in J".into() });
    }
    validate_gcs(jc.map(|z| z.re.clone()))
}

/// Sign `(−1)^{k(k−1)/2}` of the transpose anti-automorphism on degree `k`.
fn reversal_negates(k: u32) -> bool {
    (k * k.saturating_sub(1) / 2) % 2 == 1
}

/// Top-degree coefficient of `α(μ) ∧ ν`.
pub fn mukai(mu: &Spinor, nu: &Spinor) -> C {
    assert_eq!(mu.n, nu.n, "dimension mismatch");
    let top = (1 << mu.n) - 1;
    let mut acc = C::zero();
    for a in 0..=top {
        let (x, y) = (&mu.coeffs[a], &nu.coeffs[top ^ a]);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let neg = reversal_negates(a.count_ones()) ^ merge_sign(a, top ^ a).unwrap();
        acc = acc + signed(x.clone() * y.clone(), neg);
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransverseReport {
    pub pairing: C,
    pub by_pairing: bool,
    pub by_intersection: bool,
}

impl TransverseReport {
    pub fn agree(&self) -> bool {
        self.by_pairing == self.by_intersection
    }
}

pub fn transverse_test(mu: &Spinor) -> Result<TransverseReport> {
    if !is_pure(mu)? {
        return Err(Error::NotPure);
    }
    let pairing = mukai(mu, &mu.conj());
    let l = null_space(mu)?;
    let by_intersection = l.intersect(&l.conj())?.is_zero();
    Ok(TransverseReport { by_pairing: !pairing.is_zero(), pairing, by_intersection })
}

/// `h*μ` for an injective `h: W → V` given as an `n × k` matrix.
pub fn pullback_forms(h: &Matrix<C>, mu: &Spinor) -> Result<Spinor> {
    if h.rows() != mu.n {
        return Err(Error::AmbientMismatch(h.rows(), mu.n));
    }
    let k = h.cols();
    let mut out = Spinor::zero(k)?;
    let mut pulled: Vec<Spinor> = Vec::with_capacity(mu.n);
    for i in 0..mu.n {
        pulled.push(Spinor::covector(h.row(i)));
    }
    for (m, v) in mu.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        let mut t = Spinor::one(k)?.scale(v);
        for (i, p) in pulled.iter().enumerate() {
            if m >> i & 1 == 1 {
                t = t.wedge(p);
            }
        }
        out = out.add(&t);
    }
    Ok(out)
}

pub fn pullback_spinor(h: &Matrix<C>, mu: &Spinor) -> Result<Spinor> {
    if h.rank() != h.cols() {
        return Err(Error::Dimension("h is not injective".into()));
    }
    let out = pullback_forms(h, mu)?;
    if out.is_zero() {
        return Err(Error::ZeroPullback);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    /// `None` when `h*μ = 0`.
    pub spinor: Option<Spinor>,
    pub dirac_pullback: DiracStructure<C>,
    /// `null_space(h*μ) = B_h(L_μ)` whenever `h*μ ≠ 0`.
    pub coherent: Option<bool>,
}

pub fn pullback_report(h: &Matrix<C>, mu: &Spinor) -> Result<PullbackReport> {
    if !is_pure(mu)? {
        return Err(Error::NotPure);
    }
    let l = DiracStructure::new(null_space(mu)?)?;
    let dirac_pullback = pull_back(h, &l)?;
    let (spinor, coherent) = match pullback_spinor(h, mu) {
        Ok(s) => {
            let ok = null_space(&s)? == *dirac_pullback.space();
            (Some(s), Some(ok))
        }
        Err(Error::ZeroPullback) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(PullbackReport { spinor, dirac_pullback, coherent })
}

/// `det((h⁻¹R)°) ∧ exp(h*ε)` for `μ ∝ det(R°) ∧ exp(ε)`: the spinor of
/// `B_h(L_μ)`. Agrees with `h*μ` up to scale whenever `h*μ ≠ 0`, and stays
/// nonzero when `R + h(W) ≠ V` kills the plain pull-back.
pub fn restricted_normal_form(h: &Matrix<C>, mu: &Spinor) -> Result<Spinor> {
    if h.rows() != mu.n {
        return Err(Error::AmbientMismatch(h.rows(), mu.n));
    }
    if !is_pure(mu)? {
        return Err(Error::NotPure);
    }
    let (ge, _) = graph_data(&DiracStructure::new(null_space(mu)?)?);
    let eps = PureSpinorData::new(C::one(), ge.carrier.clone(), -&ge.form)?.extension();
    let r_pre = Subspace::preimage(h, &ge.carrier)?;
    let eps_pre = &(&h.transpose() * &eps) * h;
    pure_from_extension(&C::one(), &r_pre, &eps_pre)
}

#[derive(Clone, Debug)]
pub struct SpinorSubmanifoldReport {
    /// `h*μ ≠ 0`, pure and transverse.
    pub literal_nonzero: bool,
    pub literal_pure: bool,
    pub literal_transverse: bool,
    /// `⟨ν, ν̄⟩ ≠ 0` for `ν = det((h⁻¹R)°) ∧ exp(h*ε)`.
    pub transverse: bool,
    pub holds: bool,
    /// `h*μ` and `ν` span the same line, when `h*μ ≠ 0`.
    pub literal_matches: Option<bool>,
    /// Verdict of the submanifold theorem for the structure of `μ`.
    pub verdict_admissible: bool,
}

impl SpinorSubmanifoldReport {
    pub fn agree(&self) -> bool {
        self.holds == self.verdict_admissible
    }

    pub fn literal_holds(&self) -> bool {
        self.literal_nonzero && self.literal_pure && self.literal_transverse
    }
}

/// The pulled-back spinor line is pure and transverse; compared with the
/// pointwise submanifold verdict. `h` is a real `n × k` inclusion.
pub fn spinor_submanifold_check(h: &Matrix<Q>, mu: &Spinor) -> Result<SpinorSubmanifoldReport> {
    let j = gcs_of_spinor(mu)?;
    let w = LinearSubmanifold::from_frame(h.rows(), h.transpose())?;
    let verdict_admissible = theorem_main_verdict(&j, &w)?.admissible;
    let hc: Matrix<C> = h.lift();
    let pulled = pullback_forms(&hc, mu)?;
    let literal_nonzero = !pulled.is_zero();
    let literal_pure = literal_nonzero && is_pure(&pulled)?;
    let literal_transverse = literal_pure && transverse_test(&pulled)?.by_pairing;
    let nu = restricted_normal_form(&hc, mu)?;
    let transverse = !mukai(&nu, &nu.conj()).is_zero();
    Ok(SpinorSubmanifoldReport {
        literal_nonzero,
        literal_pure,
        literal_transverse,
        transverse,
        holds: transverse,
        literal_matches: literal_nonzero.then(|| pulled.proportional(&nu)),
        verdict_admissible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{dirac_from_form, random_dirac_c, GraphData};
    use crate::field::{c, i_unit};
    use crate::gcs::{from_complex, from_symplectic, standard_complex, standard_symplectic_flat};
    use crate::matrix::{int_matrix, unit_vec};
    use crate::sample::{random_matrix_c, random_skew_c, random_subspace_c, small_c};
    use rand::{Rng, SeedableRng};

    fn sp(n: usize, terms: &[(&[usize], C)]) -> Spinor {
        Spinor::from_terms(n, &terms.iter().map(|(i, v)| (i.to_vec(), v.clone())).collect::<Vec<_>>()).unwrap()
    }

    fn gt(x: &[C], xi: &[C]) -> GTVector<C> {
        GTVector::new(x, xi)
    }

    fn e(n: usize, i: usize) -> Vec<C> {
        unit_vec(n, i)
    }

    fn symplectic_spinor() -> Spinor {
        sp(2, &[(&[], c(1, 0)), (&[0, 1], i_unit())])
    }

    #[test]
    fn action_examples() {
        let top = sp(2, &[(&[0, 1], c(1, 0))]);
        let z = vec![C::zero(); 2];
        assert_eq!(clifford_act(&gt(&e(2, 0), &z), &top), sp(2, &[(&[1], c(1, 0))]));
        assert_eq!(clifford_act(&gt(&e(2, 1), &z), &top), sp(2, &[(&[0], c(-1, 0))]));
        assert_eq!(clifford_act(&gt(&z, &e(2, 0)), &Spinor::one(2).unwrap()), sp(2, &[(&[0], c(1, 0))]));
        assert_eq!(sp(2, &[(&[1, 0], c(1, 0))]), sp(2, &[(&[0, 1], c(-1, 0))]));
    }

    #[test]
    fn clifford_relation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let mu = Spinor::from_coeffs(n, (0..1 << n).map(|_| small_c(&mut rng, 3)).collect()).unwrap();
            let x: Vec<C> = (0..n).map(|_| small_c(&mut rng, 3)).collect();
            let xi: Vec<C> = (0..n).map(|_| small_c(&mut rng, 3)).collect();
            let v = gt(&x, &xi);
            let lhs = clifford_act(&v, &clifford_act(&v, &mu));
            let s = crate::matrix::dot(&x, &xi);
            assert_eq!(lhs, mu.scale(&s));
        }
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(null_space(&Spinor::one(3).unwrap()).unwrap(), *DiracStructure::<C>::vectors(3).space());
        assert_eq!(null_space(&Spinor::top(3).unwrap()).unwrap(), *DiracStructure::<C>::covectors(3).space());
        let i = i_unit();
        let expected = Subspace::span(4, vec![vec![c(1, 0), c(0, 0), c(0, 0), -i.clone()], vec![c(0, 0), c(1, 0), i, c(0, 0)]]);
        let l = null_space(&symplectic_spinor()).unwrap();
        assert_eq!(l, expected);
        let j = from_symplectic(&standard_symplectic_flat(1)).unwrap();
        assert_eq!(l, *crate::gcs::eigenbundles(&j).0.space());
        assert!(matches!(null_space(&Spinor::zero(2).unwrap()), Err(Error::ZeroSpinor)));
    }

    #[test]
    fn purity() {
        assert!(is_pure(&symplectic_spinor()).unwrap());
        assert!(is_pure(&Spinor::top(4).unwrap()).unwrap());
        let omega = int_matrix(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        assert!(is_pure(&Spinor::exp_form(&omega.lift().scale(&i_unit())).unwrap()).unwrap());
        let not_pure = sp(3, &[(&[], c(1, 0)), (&[0, 1, 2], c(1, 0))]);
        assert!(null_space(&not_pure).unwrap().dim() < 3);
        assert!(!is_pure(&not_pure).unwrap());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=n);
            let mut mu = Spinor::one(n).unwrap();
            for _ in 0..k {
                mu = mu.wedge(&Spinor::covector(&(0..n).map(|_| small_c(&mut rng, 3)).collect::<Vec<_>>()));
            }
            if !mu.is_zero() {
                assert!(is_pure(&mu).unwrap());
                assert!(crate::dirac::is_isotropic(&null_space(&mu).unwrap()));
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let i = i_unit();
        let omega = Matrix::from_rows(2, vec![vec![C::zero(), i.clone()], vec![-i.clone(), C::zero()]]);
        let d = PureSpinorData::new(C::one(), Subspace::full(2), omega).unwrap();
        assert_eq!(pure_from_data(&d).unwrap(), symplectic_spinor());

        let d = PureSpinorData::new(c(3, 1), Subspace::zero(3), Matrix::zeros(0, 0)).unwrap();
        assert_eq!(pure_from_data(&d).unwrap(), Spinor::top(3).unwrap().scale(&c(3, 1)));

        let d = PureSpinorData::new(c(2, 0), Subspace::span(2, vec![e(2, 0)]), Matrix::zeros(1, 1)).unwrap();
        assert_eq!(pure_from_data(&d).unwrap(), sp(2, &[(&[1], c(2, 0))]));
    }

    #[test]
    fn null_space_of_normal_form_is_graph_of_minus_eps() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(0..=n);
            let r = random_subspace_c(&mut rng, n, k);
            let eps = random_skew_c(&mut rng, k, 2);
            let d = PureSpinorData::new(small_c(&mut rng, 2) + c(5, 0), r.clone(), eps.clone()).unwrap();
            let mu = pure_from_data(&d).unwrap();
            let l = dirac_from_form(&GraphData::new(r.clone(), -&eps).unwrap());
            assert_eq!(null_space(&mu).unwrap(), *l.space());

            // any extension agreeing on R gives the same spinor
            let theta = r.annihilator().basis_vectors();
            if let Some(t) = theta.first() {
                let g: Vec<C> = (0..n).map(|_| small_c(&mut rng, 3)).collect();
                let extra = Matrix::from_fn(n, n, |a, b| t[a].clone() * g[b].clone() - g[a].clone() * t[b].clone());
                let alt = &d.extension() + &extra;
                assert_eq!(pure_from_extension(&d.c, &r, &alt).unwrap(), mu);
            }
        }
    }

    #[test]
    fn dirac_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let l = random_dirac_c(&mut rng, n);
            let mu = spinor_from_dirac(&l).unwrap();
            assert_eq!(null_space(&mu).unwrap(), *l.space());
            let scaled = mu.scale(&(small_c(&mut rng, 2) + c(7, 0)));
            let back = spinor_from_dirac(&DiracStructure::new(null_space(&scaled).unwrap()).unwrap()).unwrap();
            assert!(back.proportional(&scaled));
        }
        let j = from_symplectic(&standard_symplectic_flat(1)).unwrap();
        assert_eq!(spinor_of_gcs(&j).unwrap(), symplectic_spinor());
        assert_eq!(spinor_from_dirac(&DiracStructure::vectors(3)).unwrap(), Spinor::one(3).unwrap());
    }

    #[test]
    fn mukai_examples() {
        let one = Spinor::one(2).unwrap();
        assert!(mukai(&one, &one).is_zero());
        let mu = symplectic_spinor();
        assert_eq!(mukai(&mu, &mu.conj()), c(0, -2));
        let top = Spinor::top(2).unwrap();
        assert!(mukai(&top, &top).is_zero());
        // bilinear
        let a = sp(2, &[(&[0], c(1, 2))]);
        let b = sp(2, &[(&[1], c(3, -1))]);
        assert_eq!(mukai(&a.add(&mu), &b), mukai(&a, &b) + mukai(&mu, &b));
    }

    #[test]
    fn transversality_examples() {
        let t = transverse_test(&symplectic_spinor()).unwrap();
        assert!(t.by_pairing && t.agree());
        let dz = sp(2, &[(&[0], c(1, 0)), (&[1], i_unit())]);
        let t = transverse_test(&dz).unwrap();
        assert!(t.by_pairing && t.agree());
        let t = transverse_test(&sp(2, &[(&[0], c(1, 0))])).unwrap();
        assert!(!t.by_pairing && t.agree());
        assert!(matches!(transverse_test(&sp(3, &[(&[], c(1, 0)), (&[0, 1, 2], c(1, 0))])), Err(Error::NotPure)));
    }

    #[test]
    fn transversality_paths_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut transverse = 0;
        for _ in 0..300 {
            let n = rng.gen_range(1..=4);
            let l = random_dirac_c(&mut rng, n);
            let mu = spinor_from_dirac(&l).unwrap().scale(&(small_c(&mut rng, 2) + c(0, 5)));
            let t = transverse_test(&mu).unwrap();
            assert!(t.agree(), "{mu}");
            transverse += t.by_pairing as usize;
        }
        assert!(transverse > 50);
    }

    #[test]
    fn structure_from_spinor() {
        let j = from_complex(&standard_complex(2)).unwrap();
        let mu = spinor_of_gcs(&j).unwrap();
        assert_eq!(gcs_of_spinor(&mu).unwrap(), j);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let m = rng.gen_range(1..=3);
            let j = crate::gcs::random_gcs(&mut rng, m);
            assert_eq!(gcs_of_spinor(&spinor_of_gcs(&j).unwrap()).unwrap(), j);
        }
    }

    #[test]
    fn pullback_examples() {
        let mu = symplectic_spinor();
        let id: Matrix<C> = Matrix::identity(2);
        assert_eq!(pullback_spinor(&id, &mu).unwrap(), mu);

        let j = from_symplectic(&standard_symplectic_flat(2)).unwrap();
        let mu4 = spinor_of_gcs(&j).unwrap();
        let h = int_matrix(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let rep = pullback_report(&h.lift(), &mu4).unwrap();
        assert_eq!(rep.spinor.as_ref().unwrap(), &symplectic_spinor());
        assert_eq!(rep.coherent, Some(true));

        let h1: Matrix<C> = int_matrix(&[&[0], &[1]]).lift();
        let e1 = sp(2, &[(&[0], c(1, 0))]);
        assert!(matches!(pullback_spinor(&h1, &e1), Err(Error::ZeroPullback)));
        let rep = pullback_report(&h1, &e1).unwrap();
        assert!(rep.spinor.is_none());
        assert_eq!(rep.dirac_pullback.n(), 1);
    }

    #[test]
    fn pullback_coherence() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let (mut nonzero, mut zero) = (0, 0);
        for _ in 0..150 {
            let n = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=n);
            let mu = spinor_from_dirac(&random_dirac_c(&mut rng, n)).unwrap();
            let h = random_matrix_c(&mut rng, n, k, 2);
            if h.rank() < k {
                continue;
            }
            let rep = pullback_report(&h, &mu).unwrap();
            match rep.coherent {
                Some(ok) => {
                    assert!(ok);
                    nonzero += 1;
                }
                None => zero += 1,
            }
        }
        assert!(nonzero > 50, "{nonzero} {zero}");
    }

    #[test]
    fn submanifold_examples() {
        let j = from_symplectic(&standard_symplectic_flat(2)).unwrap();
        let mu = spinor_of_gcs(&j).unwrap();
        let plane = int_matrix(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let rep = spinor_submanifold_check(&plane, &mu).unwrap();
        assert!(rep.holds && rep.agree() && rep.literal_holds());
        let lagrangian = int_matrix(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]);
        let rep = spinor_submanifold_check(&lagrangian, &mu).unwrap();
        assert!(!rep.holds && rep.agree() && !rep.literal_holds());
        assert_eq!(rep.literal_matches, Some(true));

        // dz1∧dz2 restricts to zero on the complex line z2 = 0, while the
        // line of B_h(L) is spanned by e¹ − ie².
        let j = from_complex(&standard_complex(2)).unwrap();
        let mu = spinor_of_gcs(&j).unwrap();
        let rep = spinor_submanifold_check(&plane, &mu).unwrap();
        assert!(rep.holds && rep.agree());
        assert!(!rep.literal_nonzero && rep.literal_matches.is_none());
        let nu = restricted_normal_form(&plane.lift(), &mu).unwrap();
        assert!(nu.proportional(&sp(2, &[(&[0], c(1, 0)), (&[1], c(0, -1))])));
        let totally_real = int_matrix(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]);
        let rep = spinor_submanifold_check(&totally_real, &mu).unwrap();
        assert!(!rep.holds && rep.agree() && !rep.literal_holds());
    }

    #[test]
    fn restricted_normal_form_is_spinor_of_pullback() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=n);
            let l = random_dirac_c(&mut rng, n);
            let mu = spinor_from_dirac(&l).unwrap();
            let h = random_matrix_c(&mut rng, n, k, 2);
            if h.rank() < k {
                continue;
            }
            let nu = restricted_normal_form(&h, &mu).unwrap();
            assert_eq!(null_space(&nu).unwrap(), *pull_back(&h, &l).unwrap().space());
            let plain = pullback_forms(&h, &mu).unwrap();
            if !plain.is_zero() {
                assert!(plain.proportional(&nu));
            }
        }
    }
}
