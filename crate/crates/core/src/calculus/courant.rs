//! The (twisted) Courant bracket on `TM ⊕ T*M` over a coordinate patch.

use std::fmt;

use rand::Rng;

use super::forms::{apply_vector, lie_bracket, FormField, VectorField};
use super::poly::Poly;
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::field::{qf, Field};
use crate::sample::small_q;

/// A section `X + ξ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Section {
    pub x: VectorField,
    pub xi: Vec<RatFun>,
}

impl Section {
    pub fn new(x: VectorField, xi: Vec<RatFun>) -> Self {
        assert_eq!(x.len(), xi.len(), "vector and covector parts on different patches");
        Section { x, xi }
    }

    pub fn zero(n: usize) -> Self {
        Section { x: vec![RatFun::zero(); n], xi: vec![RatFun::zero(); n] }
    }

    pub fn vector(x: VectorField) -> Self {
        let n = x.len();
        Section { x, xi: vec![RatFun::zero(); n] }
    }

    pub fn covector(xi: Vec<RatFun>) -> Self {
        let n = xi.len();
        Section { x: vec![RatFun::zero(); n], xi }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.xi).all(Field::is_zero)
    }

    /// Stacked components `(X; ξ)`.
    pub fn coords(&self) -> Vec<RatFun> {
        self.x.iter().chain(&self.xi).cloned().collect()
    }

    pub fn from_coords(c: Vec<RatFun>) -> Self {
        let n = c.len() / 2;
        let mut x = c;
        let xi = x.split_off(n);
        Section { x, xi }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_coords(self.coords().into_iter().zip(o.coords()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_coords(self.coords().into_iter().zip(o.coords()).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, f: &RatFun) -> Self {
        Self::from_coords(self.coords().into_iter().map(|a| a * f.clone()).collect())
    }

    fn xi_form(&self) -> FormField {
        FormField::one_form(&self.xi)
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[RatFun]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "({} | {})", list(&self.x), list(&self.xi))
    }
}

/// `⟨X + ξ, Y + η⟩ = ½(ξ(Y) + η(X))`.
pub fn pairing(a: &Section, b: &Section) -> RatFun {
    let s = a.xi.iter().zip(&b.x).chain(b.xi.iter().zip(&a.x)).fold(RatFun::zero(), |acc, (u, v)| {
        if u.is_zero() || v.is_zero() {
            acc
        } else {
            acc + u.clone() * v.clone()
        }
    });
    s * RatFun::from_q(&qf(1, 2))
}

fn eval_covector(xi: &[RatFun], x: &[RatFun]) -> RatFun {
    xi.iter().zip(x).fold(RatFun::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `[X,Y] + L_Xη − L_Yξ − ½ d(η(X) − ξ(Y))`.
pub fn courant(a: &Section, b: &Section) -> Section {
    let n = a.n();
    let x = lie_bracket(&a.x, &b.x);
    let lx_eta = b.xi_form().lie(&a.x);
    let ly_xi = a.xi_form().lie(&b.x);
    let f = (eval_covector(&b.xi, &a.x) - eval_covector(&a.xi, &b.x)) * RatFun::from_q(&qf(1, 2));
    let df = FormField::function(n, f).d();
    Section { x, xi: lx_eta.sub(&ly_xi).sub(&df).as_covector() }
}

/// Courant bracket plus `ι_Y ι_X Ω`, with `Ω` taken as given.
pub fn twisted_courant_unchecked(a: &Section, b: &Section, omega: &FormField) -> Section {
    let mut out = courant(a, b);
    let extra = omega.interior(&a.x).interior(&b.x).as_covector();
    for (o, e) in out.xi.iter_mut().zip(extra) {
        *o = o.clone() + e;
    }
    out
}

/// Fails with `NonClosedTwist` naming the first nonzero coefficient of `dΩ`.
pub fn check_closed(omega: &FormField) -> Result<()> {
    if omega.degree() != 3 {
        return Err(Error::Dimension(format!("twist must be a 3-form, got degree {}", omega.degree())));
    }
    let d = omega.d();
    if let Some((idx, c)) = d.terms().next() {
        let name = idx.iter().map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("∧");
        return Err(Error::NonClosedTwist(format!("dΩ has coefficient {c} on {name}")));
    }
    Ok(())
}

pub fn twisted_courant(a: &Section, b: &Section, omega: &FormField) -> Result<Section> {
    check_closed(omega)?;
    Ok(twisted_courant_unchecked(a, b, omega))
}

/// `TM ⊕ T*M` with anchor the projection, the standard pairing, and the
/// bracket twisted by `Ω`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StandardCourantModel {
    n: usize,
    omega: FormField,
}

impl StandardCourantModel {
    pub fn new(omega: FormField) -> Result<Self> {
        check_closed(&omega)?;
        Ok(StandardCourantModel { n: omega.n(), omega })
    }

    /// Skips the closedness check; used for negative controls.
    pub fn new_unchecked(omega: FormField) -> Self {
        StandardCourantModel { n: omega.n(), omega }
    }

    pub fn untwisted(n: usize) -> Self {
        StandardCourantModel { n, omega: FormField::zero(n, 3) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &FormField {
        &self.omega
    }

    pub fn bracket(&self, a: &Section, b: &Section) -> Section {
        if self.omega.is_zero() {
            return courant(a, b);
        }
        twisted_courant_unchecked(a, b, &self.omega)
    }

    pub fn anchor(&self, a: &Section) -> VectorField {
        a.x.clone()
    }

    /// `𝒟f = df`.
    pub fn d_op(&self, f: &RatFun) -> Section {
        Section::covector(FormField::function(self.n, f.clone()).d().as_covector())
    }

    pub fn pairing(&self, a: &Section, b: &Section) -> RatFun {
        pairing(a, b)
    }
}

/// Outcome of the algebroid identities on given inputs, each with its
/// residual (zero when the identity holds).
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<(&'static str, bool, String)>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    pub fn holds(&self, name: &str) -> bool {
        self.checks.iter().any(|(n, ok, _)| *n == name && *ok)
    }
}

pub fn axioms_check(
    model: &StandardCourantModel,
    sections: &[Section; 3],
    f: &RatFun,
    g: &RatFun,
) -> AxiomReport {
    let [a, b, c] = sections;
    let br = |u: &Section, v: &Section| model.bracket(u, v);
    let ip = |u: &Section, v: &Section| model.pairing(u, v);
    let dd = |h: &RatFun| model.d_op(h);
    let half = RatFun::from_q(&qf(1, 2));
    let third = RatFun::from_q(&qf(1, 3));
    let mut checks = Vec::new();
    let mut push = |name: &'static str, residual: Section| {
        checks.push((name, residual.is_zero(), residual.to_string()));
    };
    let fun = |r: RatFun| {
        let mut s = Section::zero(model.n);
        s.x[0] = r;
        s
    };

    push("c1", fun(ip(&dd(f), a) - half.clone() * apply_vector(&a.x, f)));

    let lhs = model.anchor(&br(a, b));
    let rhs = lie_bracket(&a.x, &b.x);
    push("c2", Section::vector(lhs.into_iter().zip(rhs).map(|(u, v)| u - v).collect()));

    let (ab, bc, ca) = (br(a, b), br(b, c), br(c, a));
    let jac = br(&ab, c).add(&br(&bc, a)).add(&br(&ca, b));
    let t = (ip(&ab, c) + ip(&bc, a) + ip(&ca, b)) * third;
    push("c3", jac.sub(&dd(&t)));

    let fb = b.scale(f);
    let rhs = br(a, b).scale(f).add(&b.scale(&apply_vector(&a.x, f))).sub(&dd(f).scale(&ip(a, b)));
    push("c4", br(a, &fb).sub(&rhs));

    push("c5", fun(ip(&dd(f), &dd(g))).add(&Section::vector(model.anchor(&dd(f)))));

    let lhs = apply_vector(&a.x, &ip(b, c));
    let rhs = ip(&br(a, b).add(&dd(&ip(a, b))), c) + ip(b, &br(a, c).add(&dd(&ip(a, c))));
    push("c6", fun(lhs - rhs));

    let df = dd(f);
    push("c7", br(&df, a).add(&dd(&ip(&df, a))));

    AxiomReport { checks }
}

/// Polynomial of total degree `≤ max_degree` in `x1..x{n}` with a few small
/// integer terms.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32) -> RatFun {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut mono = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            mono[rng.gen_range(0..n)] += 1;
        }
        while mono.last() == Some(&0) {
            mono.pop();
        }
        p = p.add(&Poly::monomial(mono, small_q(rng, 3)));
    }
    RatFun::from_poly(p)
}

pub fn random_section<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32) -> Section {
    let mut coords = (0..2 * n).map(|_| random_poly(rng, n, max_degree)).collect::<Vec<_>>();
    // keep some components zero so brackets stay small
    for c in coords.iter_mut() {
        if rng.gen_bool(0.4) {
            *c = RatFun::zero();
        }
    }
    Section::from_coords(coords)
}

/// Push-forward of a vector field on the `N`-patch along `h`, written in
/// `N`-coordinates: `(h_*X)^i = Σ_a ∂_a h^i X^a`.
pub fn push_vector(h: &[RatFun], x: &[RatFun]) -> VectorField {
    h.iter()
        .map(|hi| x.iter().enumerate().fold(RatFun::zero(), |acc, (a, xa)| acc + hi.partial(a) * xa.clone()))
        .collect()
}

/// `h*η` for a covector field on the `M`-patch.
pub fn pull_covector(h: &[RatFun], eta: &[RatFun], m: usize) -> Vec<RatFun> {
    (0..m)
        .map(|a| {
            h.iter()
                .zip(eta)
                .fold(RatFun::zero(), |acc, (hi, ei)| acc + ei.compose(h) * hi.partial(a))
        })
        .collect()
}

/// Whether `s_N` and `s_M` are `h`-related: `h_*X = Y∘h` and `ξ = h*η`.
pub fn h_related(h: &[RatFun], s_n: &Section, s_m: &Section) -> bool {
    let y_on_n: Vec<RatFun> = s_m.x.iter().map(|y| y.compose(h)).collect();
    push_vector(h, &s_n.x) == y_on_n && pull_covector(h, &s_m.xi, s_n.n()) == s_n.xi
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RelatedBracketReport {
    pub inputs_related: bool,
    pub brackets_related: bool,
}

/// Checks that twisted brackets of `h`-related sections are `h`-related,
/// for `h` a twisted immersion (`Υ = h*Ω`).
pub fn phi_related_bracket(
    h: &[RatFun],
    s_n: [&Section; 2],
    s_m: [&Section; 2],
    omega: &FormField,
    upsilon: &FormField,
) -> Result<RelatedBracketReport> {
    let m = upsilon.n();
    let jac = crate::matrix::Matrix::from_fn(h.len(), m, |i, a| h[i].partial(a));
    if jac.rank() != m {
        return Err(Error::NotTwistedImmersion("differential of h is not injective".into()));
    }
    if omega.pullback(h, m) != *upsilon {
        return Err(Error::NotTwistedImmersion("Υ ≠ h*Ω".into()));
    }
    let inputs_related = h_related(h, s_n[0], s_m[0]) && h_related(h, s_n[1], s_m[1]);
    let bn = twisted_courant_unchecked(s_n[0], s_n[1], upsilon);
    let bm = twisted_courant_unchecked(s_m[0], s_m[1], omega);
    Ok(RelatedBracketReport { inputs_related, brackets_related: h_related(h, &bn, &bm) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::parse_ratfun;
    use crate::calculus::forms::constant_vector;

    fn r(s: &str, n: usize) -> RatFun {
        parse_ratfun(s, n).unwrap()
    }

    fn sec(n: usize, x: &[&str], xi: &[&str]) -> Section {
        Section::new(x.iter().map(|s| r(s, n)).collect(), xi.iter().map(|s| r(s, n)).collect())
    }

    fn volume3() -> FormField {
        FormField::from_terms(3, 3, vec![(vec![0, 1, 2], RatFun::one())]).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let e1 = Section::vector(constant_vector(2, 0));
        let e2 = Section::vector(constant_vector(2, 1));
        assert!(courant(&e1, &e2).is_zero());
        let xe2 = sec(2, &["0", "x1"], &["0", "0"]);
        assert_eq!(courant(&e1, &xe2), e2);
        let s = sec(2, &["x2", "x1^2"], &["x1*x2", "1"]);
        assert!(courant(&s, &s).is_zero());
    }

    #[test]
    fn twisted_examples() {
        let omega = volume3();
        let (e1, e2) = (Section::vector(constant_vector(3, 0)), Section::vector(constant_vector(3, 1)));
        let b = twisted_courant(&e1, &e2, &omega).unwrap();
        assert_eq!(b, sec(3, &["0", "0", "0"], &["0", "0", "1"]));
        let s = sec(3, &["x2", "1", "x3"], &["x1", "0", "x2^2"]);
        assert!(twisted_courant(&s, &s, &omega).unwrap().is_zero());
        let zero = FormField::zero(3, 3);
        assert_eq!(twisted_courant(&s, &e1, &zero).unwrap(), courant(&s, &e1));
        let open = FormField::from_terms(4, 3, vec![(vec![1, 2, 3], r("x1", 4))]).unwrap();
        assert!(matches!(twisted_courant(&Section::zero(4), &Section::zero(4), &open), Err(Error::NonClosedTwist(_))));
    }

    #[test]
    fn courant_is_antisymmetric() {
        let a = sec(3, &["x2^2", "x1", "1"], &["x3", "x1*x2", "0"]);
        let b = sec(3, &["0", "x3", "x1^2"], &["1", "x2", "x1*x3"]);
        let ab = twisted_courant(&a, &b, &volume3()).unwrap();
        let ba = twisted_courant(&b, &a, &volume3()).unwrap();
        assert!(ab.add(&ba).is_zero());
    }

    #[test]
    fn related_brackets_on_plane_in_space() {
        // z = 0 inside ℝ³; the M-bracket of ∂1, ∂2 is dz, invisible on N
        let h = vec![r("x1", 2), r("x2", 2), RatFun::zero()];
        let omega = volume3();
        let (n1, n2) = (Section::vector(constant_vector(2, 0)), Section::vector(constant_vector(2, 1)));
        let (m1, m2) = (Section::vector(constant_vector(3, 0)), Section::vector(constant_vector(3, 1)));
        let ups = omega.pullback(&h, 2);
        assert!(ups.is_zero());
        let rep = phi_related_bracket(&h, [&n1, &n2], [&m1, &m2], &omega, &ups).unwrap();
        assert!(rep.inputs_related && rep.brackets_related);
    }

    fn axiom_inputs(n: usize) -> ([Section; 3], RatFun, RatFun) {
        let a = sec(n, &["x2^2", "x1", "1", "0"][..n], &["x3", "x1*x2", "0", "x4"][..n]);
        let b = sec(n, &["0", "x3 + 1", "x1^2", "x2"][..n], &["1", "x2", "x1*x3", "0"][..n]);
        let c = sec(n, &["x1*x3", "0", "x2", "1"][..n], &["x2^2", "0", "1", "x1"][..n]);
        let f = r("x1^2 + x2*x3", n);
        let g = r("x3 - x1*x2", n);
        ([a, b, c], f, g)
    }

    #[test]
    fn axioms_hold_for_closed_twists() {
        let (secs, f, g) = axiom_inputs(3);
        let rep = axioms_check(&StandardCourantModel::untwisted(3), &secs, &f, &g);
        assert!(rep.all_hold(), "{:?}", rep.checks);
        let rep = axioms_check(&StandardCourantModel::new(volume3()).unwrap(), &secs, &f, &g);
        assert!(rep.all_hold(), "{:?}", rep.checks);
    }

    #[test]
    fn jacobiator_detects_open_twist() {
        let open = FormField::from_terms(4, 3, vec![(vec![1, 2, 3], r("x1", 4))]).unwrap();
        assert!(StandardCourantModel::new(open.clone()).is_err());
        let (secs, f, g) = axiom_inputs(4);
        let secs = [Section::vector(constant_vector(4, 0)), Section::vector(constant_vector(4, 1)), secs[2].clone()];
        let rep = axioms_check(&StandardCourantModel::new_unchecked(open), &secs, &f, &g);
        assert!(!rep.holds("c3"));
    }
}
