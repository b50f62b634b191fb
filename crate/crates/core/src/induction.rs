//! Structures induced on linear submanifolds.
//!
//! Everything here is pointwise: a submanifold is represented by its tangent
//! space `TN ⊆ V` at one point, together with a frame `h: ℝᵏ → V` whose
//! columns span `TN`. Induced structures are written in that frame.

use crate::dirac::{pull_back, GTVector};
use crate::error::{Error, Result};
use crate::field::{i_unit, Field, C, Q};
use crate::gcs::{eigenbundles, validate_gcs, GCStructure, Splitting};
use crate::matrix::{unit_vec, vec_sub, Matrix};
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSubmanifold<F> {
    tangent: Subspace<F>,
    frame: Matrix<F>,
}

impl<F: Field> LinearSubmanifold<F> {
    /// Uses the canonical basis of `w` as frame.
    pub fn new(w: Subspace<F>) -> Self {
        let frame = w.basis().clone();
        LinearSubmanifold { tangent: w, frame }
    }

    /// Frame given as rows, which must be independent.
    pub fn from_frame(ambient: usize, frame: Matrix<F>) -> Result<Self> {
        if frame.cols() != ambient {
            return Err(Error::AmbientMismatch(frame.cols(), ambient));
        }
        let tangent = Subspace::from_rows(&frame);
        if tangent.dim() != frame.rows() {
            return Err(Error::Dimension(format!(
                "frame of {} vectors spans only {} dimensions",
                frame.rows(),
                tangent.dim()
            )));
        }
        Ok(LinearSubmanifold { tangent, frame })
    }

    pub fn ambient_n(&self) -> usize {
        self.tangent.ambient()
    }

    pub fn dim(&self) -> usize {
        self.tangent.dim()
    }

    pub fn tangent(&self) -> &Subspace<F> {
        &self.tangent
    }

    pub fn frame(&self) -> &Matrix<F> {
        &self.frame
    }

    /// The inclusion `h` as an `n × k` matrix.
    pub fn inclusion(&self) -> Matrix<F> {
        self.frame.transpose()
    }

    /// `h*ξ`.
    pub fn restrict(&self, xi: &[F]) -> Vec<F> {
        self.frame.mul_vec(xi)
    }

    /// `TN°`.
    pub fn conormal(&self) -> Subspace<F> {
        self.tangent.annihilator()
    }

    /// Frame coordinates of a tangent vector.
    pub fn frame_coords(&self, x: &[F]) -> Option<Vec<F>> {
        self.frame.transpose().solve(x)
    }

    /// `s(X + ξ) = h⁻¹X + h*ξ` as a `2k × 2n` matrix, meaningful on `B`.
    pub fn s_matrix(&self) -> Matrix<F> {
        let (n, k) = (self.ambient_n(), self.dim());
        // left inverse of hᵀ-columns through the Gram matrix of the frame
        let left = if k == 0 {
            Matrix::zeros(0, n)
        } else {
            let gram = &self.frame * &self.frame.transpose();
            &gram.inverse().expect("frame Gram matrix is invertible") * &self.frame
        };
        Matrix::from_blocks(&left, &Matrix::zeros(k, n), &Matrix::zeros(k, n), &self.frame)
    }
}

/// `B = TN ⊕ V*` and `B⊥ = TN°`, both inside `V ⊕ V*`.
pub fn b_spaces<F: Field>(w: &LinearSubmanifold<F>) -> (Subspace<F>, Subspace<F>) {
    let n = w.ambient_n();
    let mut rows: Vec<Vec<F>> = w
        .tangent()
        .basis_vectors()
        .into_iter()
        .map(|x| [x, vec![F::zero(); n]].concat())
        .collect();
    rows.extend((0..n).map(|i| unit_vec(2 * n, n + i)));
    let b = Subspace::span(2 * n, rows);
    let perp = Subspace::span(
        2 * n,
        w.conormal()
            .basis_vectors()
            .into_iter()
            .map(|xi| [vec![F::zero(); n], xi].concat())
            .collect(),
    );
    (b, perp)
}

fn check_dims<F: Field>(j: &GCStructure<F>, w: &LinearSubmanifold<F>) -> Result<()> {
    if j.n() != w.ambient_n() {
        return Err(Error::AmbientMismatch(j.n(), w.ambient_n()));
    }
    Ok(())
}

/// The three conditions of the equivalence that need no complexification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RealConditions {
    /// `B = B∩JB + B⊥`
    pub split: bool,
    /// `JB ⊆ B + JB⊥`
    pub containment: bool,
    /// `JB⊥ ∩ B ⊆ B⊥`
    pub kernel: bool,
}

pub fn real_conditions<F: Field>(j: &GCStructure<F>, w: &LinearSubmanifold<F>) -> Result<RealConditions> {
    check_dims(j, w)?;
    let (b, perp) = b_spaces(w);
    let jb = b.map(j.matrix())?;
    let jperp = perp.map(j.matrix())?;
    Ok(RealConditions {
        split: b.intersect(&jb)?.sum(&perp)? == b,
        containment: jb.is_subspace_of(&b.sum(&jperp)?),
        kernel: jperp.intersect(&b)?.is_subspace_of(&perp),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Prop1Report {
    /// The pulled-back `L′₊` is the `+i` eigenbundle of some `J′`.
    pub eigenbundle: bool,
    pub split: bool,
    pub containment: bool,
    pub kernel: bool,
}

impl Prop1Report {
    pub fn all(&self) -> bool {
        self.eigenbundle && self.split && self.containment && self.kernel
    }

    pub fn agree(&self) -> bool {
        let v = self.eigenbundle;
        self.split == v && self.containment == v && self.kernel == v
    }
}

pub fn prop1_conditions(j: &GCStructure<Q>, w: &LinearSubmanifold<Q>) -> Result<Prop1Report> {
    let real = real_conditions(j, w)?;
    Ok(Prop1Report {
        eigenbundle: induced_via_eigenbundles(j, w)?.is_some(),
        split: real.split,
        containment: real.containment,
        kernel: real.kernel,
    })
}

/// Pulls `L±` back along the inclusion. When `L′₊ ∩ L′₋ = 0` the two span
/// the complexification and define `J′` with eigenvalues `±i`; the result
/// must be real and valid.
pub fn induced_via_eigenbundles(j: &GCStructure<Q>, w: &LinearSubmanifold<Q>) -> Result<Option<GCStructure<Q>>> {
    check_dims(j, w)?;
    let (plus, minus) = eigenbundles(j);
    let h: Matrix<C> = w.inclusion().lift();
    let lp = pull_back(&h, &plus)?;
    let lm = pull_back(&h, &minus)?;
    if !lp.space().intersect(lm.space())?.is_zero() {
        return Ok(None);
    }
    let k = w.dim();
    let mut cols = lp.space().basis_vectors();
    cols.extend(lm.space().basis_vectors());
    let p = Matrix::from_cols(2 * k, cols);
    let eig: Vec<C> = (0..2 * k).map(|a| if a < k { i_unit() } else { -i_unit() }).collect();
    let pinv = p.inverse().expect("complementary eigenbundles");
    let jc = &(&p * &Matrix::diagonal(&eig)) * &pinv;
    if jc.entries().iter().any(|z| !z.im.is_zero()) {
        return Ok(None);
    }
    Ok(validate_gcs(jc.map(|z| z.re.clone())).ok())
}

/// `(TN ∩ π♯(TN°) = 0, φ(TN) ⊆ TN + π♯(TN°))`.
pub fn lemma2_conditions<F: Field>(s: &Splitting<F>, w: &LinearSubmanifold<F>) -> Result<(bool, bool)> {
    if s.n() != w.ambient_n() {
        return Err(Error::AmbientMismatch(s.n(), w.ambient_n()));
    }
    let a = w.conormal().map(&s.pi_sharp)?;
    let tn = w.tangent();
    let first = tn.intersect(&a)?.is_zero();
    let second = tn.map(&s.phi)?.is_subspace_of(&tn.sum(&a)?);
    Ok((first, second))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InducedStructure<F> {
    pub j_prime: GCStructure<F>,
    pub phi_prime: Matrix<F>,
    pub pi_prime: Matrix<F>,
    pub sigma_prime: Matrix<F>,
    /// Elements of `V ⊕ V*` used to build `J′`. For the quotient path these
    /// are the preimages in `B∩JB` of the standard basis of `TN ⊕ T*N`; for
    /// the formula path the `X_a + ζ_a` followed by the `0 + η_a`.
    pub witnesses: Vec<GTVector<F>>,
}

impl<F: Field> InducedStructure<F> {
    fn from_matrix(j_prime: Matrix<F>, witnesses: Vec<GTVector<F>>) -> Result<Self> {
        let j_prime = validate_gcs(j_prime)?;
        let s = j_prime.split();
        Ok(InducedStructure {
            j_prime,
            phi_prime: s.phi,
            pi_prime: s.pi_sharp,
            sigma_prime: s.sigma_flat,
            witnesses,
        })
    }
}

/// `J′` from the action of `J` on `B∩JB`, pushed through `s`.
pub fn induced_via_quotient<F: Field>(j: &GCStructure<F>, w: &LinearSubmanifold<F>) -> Result<InducedStructure<F>> {
    check_dims(j, w)?;
    let (b, perp) = b_spaces(w);
    let jm = j.matrix();
    let jb = b.map(jm)?;
    if !perp.map(jm)?.intersect(&b)?.is_subspace_of(&perp) {
        return Err(Error::ConditionsFailed("JB⊥ ∩ B ⊄ B⊥".into()));
    }
    let bjb = b.intersect(&jb)?;
    let kernel = perp.intersect(&jb)?;
    if !kernel.map(jm)?.is_subspace_of(&kernel) {
        return Err(Error::ConditionsFailed("B⊥ ∩ JB is not J-stable".into()));
    }
    let s = w.s_matrix();
    let basis_t = bjb.basis().transpose();
    let m = &s * &basis_t;
    let k2 = 2 * w.dim();
    let mut cols = Vec::with_capacity(k2);
    let mut witnesses = Vec::with_capacity(k2);
    for a in 0..k2 {
        let c = m
            .solve(&unit_vec(k2, a))
            .ok_or_else(|| Error::ConditionsFailed("s(B∩JB) ≠ TN ⊕ T*N".into()))?;
        let u = basis_t.mul_vec(&c);
        cols.push(s.mul_vec(&jm.mul_vec(&u)));
        witnesses.push(GTVector::from_coords(u));
    }
    InducedStructure::from_matrix(Matrix::from_cols(k2, cols), witnesses)
}

/// `ζ ∈ TN°` with `φX + π♯ζ ∈ TN`, echelon-canonical.
pub fn solve_zeta<F: Field>(s: &Splitting<F>, w: &LinearSubmanifold<F>, x: &[F]) -> Option<Vec<F>> {
    let n = w.ambient_n();
    let con = w.conormal().basis_vectors();
    let mut cols: Vec<Vec<F>> = con.iter().map(|t| s.pi_sharp.mul_vec(t)).collect();
    cols.extend(w.frame().row_vecs().into_iter().map(|v| v.into_iter().map(|e| -e).collect()));
    let rhs: Vec<F> = s.phi.mul_vec(x).into_iter().map(|e| -e).collect();
    let sol = Matrix::from_cols(n, cols).solve(&rhs)?;
    let mut zeta = vec![F::zero(); n];
    for (c, t) in sol.iter().zip(&con) {
        for (z, ti) in zeta.iter_mut().zip(t) {
            *z = z.clone() + c.clone() * ti.clone();
        }
    }
    Some(zeta)
}

/// `η ∈ V*` with `h*η = ξ` and `π♯η ∈ TN`, echelon-canonical.
pub fn solve_eta<F: Field>(s: &Splitting<F>, w: &LinearSubmanifold<F>, xi: &[F]) -> Option<Vec<F>> {
    let (n, k) = (w.ambient_n(), w.dim());
    let top = w.frame().hstack(&Matrix::zeros(k, k));
    let bottom = s.pi_sharp.hstack(&-&w.inclusion());
    let mut rhs = xi.to_vec();
    rhs.extend(vec![F::zero(); n]);
    let sol = top.vstack(&bottom).solve(&rhs)?;
    Some(sol[..n].to_vec())
}

/// `σ′(X) = h*(σ♭X − φ*ζ)`.
pub fn sigma_prime_column<F: Field>(s: &Splitting<F>, w: &LinearSubmanifold<F>, x: &[F], zeta: &[F]) -> Vec<F> {
    w.restrict(&vec_sub(&s.sigma_flat.mul_vec(x), &s.phi.transpose().mul_vec(zeta)))
}

/// `π′ξ = π♯η` in frame coordinates, for any admissible `η` over `ξ`.
pub fn pi_prime_column<F: Field>(s: &Splitting<F>, w: &LinearSubmanifold<F>, eta: &[F]) -> Option<Vec<F>> {
    w.frame_coords(&s.pi_sharp.mul_vec(eta))
}

/// `J′` block by block: `φ′ = pr∘φ`, `π′` through `η`, `σ′` through `ζ`.
pub fn induced_via_formulas<F: Field>(j: &GCStructure<F>, w: &LinearSubmanifold<F>) -> Result<InducedStructure<F>> {
    check_dims(j, w)?;
    let s = j.split();
    let (trivial, range) = lemma2_conditions(&s, w)?;
    if !trivial || !range {
        return Err(Error::ConditionsFailed("TN ∩ π♯(TN°) ≠ 0 or φ(TN) ⊄ TN + π♯(TN°)".into()));
    }
    let (n, k) = (w.ambient_n(), w.dim());
    let a = w.conormal().map(&s.pi_sharp)?;
    let frame = w.frame().row_vecs();
    let mut phi_cols = Vec::with_capacity(k);
    let mut sigma_cols = Vec::with_capacity(k);
    let mut witnesses = Vec::with_capacity(2 * k);
    for x in &frame {
        let px = s.phi.mul_vec(x);
        let tangential = w
            .tangent()
            .project_along(&a, &px)
            .ok_or_else(|| Error::NoWitness("φX outside TN ⊕ π♯(TN°)".into()))?;
        phi_cols.push(w.frame_coords(&tangential).expect("projection lands in TN"));
        let zeta = solve_zeta(&s, w, x).ok_or_else(|| Error::NoWitness("no ζ with φX + π♯ζ ∈ TN".into()))?;
        sigma_cols.push(sigma_prime_column(&s, w, x, &zeta));
        witnesses.push(GTVector::new(x, &zeta));
    }
    let mut pi_cols = Vec::with_capacity(k);
    for a in 0..k {
        let eta = solve_eta(&s, w, &unit_vec(k, a))
            .ok_or_else(|| Error::NoWitness("no η with h*η = ξ and π♯η ∈ TN".into()))?;
        pi_cols.push(pi_prime_column(&s, w, &eta).expect("π♯η ∈ TN by construction"));
        witnesses.push(GTVector::new(&vec![F::zero(); n], &eta));
    }
    let phi = Matrix::from_cols(k, phi_cols);
    let blocks = Splitting {
        pi_sharp: Matrix::from_cols(k, pi_cols),
        sigma_flat: Matrix::from_cols(k, sigma_cols),
        phi,
    };
    InducedStructure::from_matrix(blocks.assemble_raw(), witnesses)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict<F> {
    pub admissible: bool,
    /// `TN ∩ π♯(TN°) = 0`
    pub poisson_dirac: bool,
    /// `φ(TN) ⊆ TN + π♯(TN°)`
    pub phi_range: bool,
    /// Always true at a single point; family verdicts refine it.
    pub smooth: bool,
    /// A nonzero `X ∈ TN ∩ π♯(TN°)`, or a frame vector `X` whose image
    /// `φX` escapes `TN + π♯(TN°)`.
    pub failure_witness: Option<GTVector<F>>,
    pub induced: Option<InducedStructure<F>>,
    /// Quotient and formula paths produce the same `J′`.
    pub paths_agree: Option<bool>,
}

pub fn theorem_main_verdict<F: Field>(j: &GCStructure<F>, w: &LinearSubmanifold<F>) -> Result<Verdict<F>> {
    check_dims(j, w)?;
    let s = j.split();
    let n = w.ambient_n();
    let (poisson_dirac, phi_range) = lemma2_conditions(&s, w)?;
    let zero = vec![F::zero(); n];
    let mut failure_witness = None;
    let a = w.conormal().map(&s.pi_sharp)?;
    if !poisson_dirac {
        let x = w.tangent().intersect(&a)?.basis_vectors().swap_remove(0);
        failure_witness = Some(GTVector::new(&x, &zero));
    } else if !phi_range {
        let target = w.tangent().sum(&a)?;
        let x = w
            .frame()
            .row_vecs()
            .into_iter()
            .find(|x| !target.contains(&s.phi.mul_vec(x)))
            .expect("some frame vector escapes");
        failure_witness = Some(GTVector::new(&x, &zero));
    }
    let admissible = poisson_dirac && phi_range;
    let (induced, paths_agree) = if admissible {
        let f = induced_via_formulas(j, w)?;
        let q = induced_via_quotient(j, w)?;
        let agree = f.j_prime == q.j_prime;
        (Some(f), Some(agree))
    } else {
        (None, None)
    };
    Ok(Verdict { admissible, poisson_dirac, phi_range, smooth: true, failure_witness, induced, paths_agree })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvolutionReport<F> {
    pub fixed: LinearSubmanifold<F>,
    pub verdict: Verdict<F>,
}

/// `Ψ*_* = diag(Ψ, Ψᵀ)` on `V ⊕ V*` for an involution `Ψ`.
pub fn involution_lift<F: Field>(psi: &Matrix<F>) -> Matrix<F> {
    Matrix::block_diag(psi, &psi.transpose())
}

pub fn involution_check<F: Field>(psi: &Matrix<F>, j: &GCStructure<F>) -> Result<InvolutionReport<F>> {
    if !psi.is_square() || psi.rows() != j.n() {
        return Err(Error::AmbientMismatch(psi.rows(), j.n()));
    }
    if !psi.pow2().is_identity() {
        return Err(Error::NotInvolution);
    }
    let lift = involution_lift(psi);
    if !lift.commutator(j.matrix()).is_zero() {
        return Err(Error::NotCompatible);
    }
    let fixed = LinearSubmanifold::new(Subspace::kernel(&(psi - &Matrix::identity(j.n()))));
    let verdict = theorem_main_verdict(j, &fixed)?;
    Ok(InvolutionReport { fixed, verdict })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaZeroReport {
    /// `σ′ = 0` for the induced structure.
    pub direct: bool,
    /// `TN° ∩ (π♯)⁻¹(A) ⊆ (φ*)⁻¹(TN°)` with `A = pr₂∘φ(TN)`.
    pub criterion125: bool,
    /// `φ(TN) ⊆ π♯(A°)`.
    pub criterion123: bool,
    /// `φ(TN) ⊆ TN + π♯(A°)`, the form reached before the last
    /// simplification.
    pub criterion_sum: bool,
}

impl SigmaZeroReport {
    /// The printed final form disagrees with the others.
    pub fn discrepancy(&self) -> bool {
        self.criterion123 != self.criterion125
    }
}

/// `σ′ = 0` test for `J = [[j, π♯], [0, -j*]]`.
pub fn hol_poisson_sigma_zero<F: Field>(j: &GCStructure<F>, w: &LinearSubmanifold<F>) -> Result<SigmaZeroReport> {
    check_dims(j, w)?;
    let s = j.split();
    if !s.sigma_flat.is_zero() {
        return Err(Error::NotHolomorphicPoisson);
    }
    let verdict = theorem_main_verdict(j, w)?;
    let induced = match verdict.induced {
        Some(ind) => ind,
        None => return Err(Error::NotAdmissible("submanifold fails the induction conditions".into())),
    };
    let n = w.ambient_n();
    let tn = w.tangent();
    let con = w.conormal();
    let pi_con = con.map(&s.pi_sharp)?;
    let phi_tn = tn.map(&s.phi)?;
    // A = pr₂(φ(TN)) inside π♯(TN°)
    let a_vectors: Vec<Vec<F>> = tn
        .basis_vectors()
        .iter()
        .map(|x| {
            let px = s.phi.mul_vec(x);
            let along = pi_con.project_along(tn, &px).expect("admissible: φX ∈ TN ⊕ π♯(TN°)");
            along
        })
        .collect();
    let a = Subspace::span(n, a_vectors);
    let lhs = con.intersect(&Subspace::preimage(&s.pi_sharp, &a)?)?;
    let rhs = Subspace::preimage(&s.phi.transpose(), &con)?;
    let pi_a0 = a.annihilator().map(&s.pi_sharp)?;
    Ok(SigmaZeroReport {
        direct: induced.sigma_prime.is_zero(),
        criterion125: lhs.is_subspace_of(&rhs),
        criterion123: phi_tn.is_subspace_of(&pi_a0),
        criterion_sum: phi_tn.is_subspace_of(&tn.sum(&pi_a0)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;
    use crate::gcs::{from_complex, from_holomorphic_poisson, from_symplectic, standard_complex, standard_symplectic_flat};
    use crate::matrix::int_matrix;

    fn sub(rows: &[&[i64]]) -> LinearSubmanifold<Q> {
        LinearSubmanifold::new(Subspace::from_rows(&int_matrix(rows)))
    }

    fn symp(m: usize) -> GCStructure<Q> {
        from_symplectic(&standard_symplectic_flat(m)).unwrap()
    }

    #[test]
    fn b_spaces_examples() {
        let (b, perp) = b_spaces(&sub(&[&[1, 0]]));
        assert_eq!(b, Subspace::from_rows(&int_matrix(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])));
        assert_eq!(perp, Subspace::from_rows(&int_matrix(&[&[0, 0, 0, 1]])));
        let (b, perp) = b_spaces(&LinearSubmanifold::new(Subspace::<Q>::full(2)));
        assert!(b.is_full() && perp.is_zero());
        let (b, perp) = b_spaces(&LinearSubmanifold::new(Subspace::<Q>::zero(2)));
        assert_eq!(b, perp);
        assert_eq!(b.dim(), 2);
    }

    #[test]
    fn prop1_examples() {
        let r = prop1_conditions(&symp(2), &sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        assert!(r.all());
        let r = prop1_conditions(&symp(1), &sub(&[&[1, 0]])).unwrap();
        assert!(r.agree() && !r.eigenbundle);
        let cx = from_complex(&standard_complex(2)).unwrap();
        let r = prop1_conditions(&cx, &sub(&[&[0, 0, 1, 0], &[0, 0, 0, 1]])).unwrap();
        assert!(r.all());
        let r = prop1_conditions(&cx, &sub(&[&[1, 0, 1, 0], &[0, 1, 0, 1]])).unwrap();
        assert!(r.all());
    }

    #[test]
    fn lemma2_examples() {
        let s = symp(2).split();
        assert_eq!(lemma2_conditions(&s, &sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap(), (true, true));
        assert!(!lemma2_conditions(&s, &sub(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])).unwrap().0);
        let s = from_complex(&standard_complex(2)).unwrap().split();
        let (a, b) = lemma2_conditions(&s, &sub(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert!(a && !b);
    }

    #[test]
    fn induced_symplectic_plane() {
        let w = sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let expected = symp(1);
        let qd = induced_via_quotient(&symp(2), &w).unwrap();
        let fm = induced_via_formulas(&symp(2), &w).unwrap();
        assert_eq!(qd.j_prime, expected);
        assert_eq!(fm.j_prime, expected);
        // η = e¹ extended by zero gives π′(e¹) = π♯e¹ = e2
        assert_eq!(fm.pi_prime.col(0), vec![q(0), q(1)]);
    }

    #[test]
    fn induced_complex_plane() {
        let j = standard_complex(2);
        let cx = from_complex(&j).unwrap();
        let w = sub(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let expected = from_complex(&j.block(2, 2, 2, 2)).unwrap();
        let fm = induced_via_formulas(&cx, &w).unwrap();
        assert_eq!(fm.j_prime, expected);
        assert_eq!(induced_via_quotient(&cx, &w).unwrap().j_prime, expected);
        assert!(fm.witnesses[..2].iter().all(|v| v.xi().iter().all(|e| e.is_zero())));
    }

    #[test]
    fn whole_space_induces_itself() {
        let j = symp(2).conjugate(&crate::gcs::b_shear(&int_matrix(&[&[0, 1, 0, 0], &[-1, 0, 2, 0], &[0, -2, 0, 1], &[0, 0, -1, 0]]))).unwrap();
        let w = LinearSubmanifold::new(Subspace::full(4));
        assert_eq!(induced_via_quotient(&j, &w).unwrap().j_prime, j);
        assert_eq!(induced_via_formulas(&j, &w).unwrap().j_prime, j);
    }

    #[test]
    fn verdict_examples() {
        let v = theorem_main_verdict(&symp(2), &sub(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert!(!v.admissible && !v.poisson_dirac);
        let x = v.failure_witness.unwrap();
        let a = sub(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        assert!(a.tangent().contains(x.x()));
        let v = theorem_main_verdict(&symp(2), &sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        assert!(v.admissible && v.paths_agree == Some(true));
        let cx = from_complex(&standard_complex(2)).unwrap();
        let v = theorem_main_verdict(&cx, &sub(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert!(!v.admissible && v.poisson_dirac && !v.phi_range);
    }

    #[test]
    fn involution_examples() {
        let psi = Matrix::diagonal(&[q(1), q(1), q(-1), q(-1)]);
        let r = involution_check(&psi, &symp(2)).unwrap();
        assert_eq!(r.fixed, sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        assert!(r.verdict.admissible);
        let r = involution_check(&Matrix::identity(4), &symp(2)).unwrap();
        assert_eq!(r.verdict.induced.unwrap().j_prime, symp(2));
        let psi = Matrix::diagonal(&[q(1), q(-1)]);
        assert!(matches!(involution_check(&psi, &symp(1)), Err(Error::NotCompatible)));
        let bad = int_matrix(&[&[1, 1], &[0, 1]]);
        assert!(matches!(involution_check(&bad, &symp(1)), Err(Error::NotInvolution)));
    }

    #[test]
    fn sigma_zero_examples() {
        let cx = from_complex(&standard_complex(2)).unwrap();
        let w = sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let r = hol_poisson_sigma_zero(&cx, &w).unwrap();
        assert!(r.direct && r.criterion125);
        // A = 0, so π♯(A°) = 0 and the printed form demands φ(TN) = 0
        assert!(!r.criterion123 && r.discrepancy());

        // π = Re(∂z1∧∂z2) on ℂ³, N = the z3 line
        let mut pi = Matrix::<Q>::zeros(6, 6);
        pi[(0, 2)] = q(1);
        pi[(2, 0)] = q(-1);
        pi[(1, 3)] = q(-1);
        pi[(3, 1)] = q(1);
        let hp = from_holomorphic_poisson(&standard_complex(3), &pi).unwrap();
        let line = sub(&[&[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]]);
        let r = hol_poisson_sigma_zero(&hp, &line).unwrap();
        assert!(r.direct && r.criterion125);
        assert!(matches!(hol_poisson_sigma_zero(&symp(2), &w), Err(Error::NotHolomorphicPoisson)));
    }
}
