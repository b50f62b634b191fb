//! Linear Dirac structures on `V ⊕ V*`.
//!
//! Coordinates: a generalized vector `X + ξ` is a length-`2n` column with the
//! vector part first; covectors are written in the dual of the standard basis.
//! A 2-form on a carrier subspace is stored as its Gram matrix in the
//! carrier's canonical basis, `G[a][b] = ε(b_a, b_b)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Conjugate, Field, Q, C};
use crate::matrix::{dot, Matrix};
use crate::sample;
use crate::subspace::Subspace;

/// An element `X + ξ` of `V ⊕ V*`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GTVector<F> {
    coords: Vec<F>,
}

impl<F: Field> GTVector<F> {
    pub fn new(x: &[F], xi: &[F]) -> Self {
        assert_eq!(x.len(), xi.len(), "vector and covector parts differ in length");
        let mut coords = x.to_vec();
        coords.extend_from_slice(xi);
        GTVector { coords }
    }

    pub fn from_coords(coords: Vec<F>) -> Self {
        assert!(coords.len() % 2 == 0, "odd generalized vector length");
        GTVector { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn x(&self) -> &[F] {
        &self.coords[..self.n()]
    }

    pub fn xi(&self) -> &[F] {
        &self.coords[self.n()..]
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }
}

/// `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
pub fn pairing<F: Field>(u: &GTVector<F>, v: &GTVector<F>) -> F {
    pairing_coords(u.coords(), v.coords())
}

pub fn pairing_coords<F: Field>(u: &[F], v: &[F]) -> F {
    assert_eq!(u.len(), v.len(), "pairing length mismatch");
    let n = u.len() / 2;
    let half = F::from_i64(2).inv();
    half * (dot(&u[n..], &v[..n]) + dot(&v[n..], &u[..n]))
}

/// Gram matrix of the pairing on `V ⊕ V*`: `½ [[0, I], [I, 0]]`.
pub fn pairing_matrix<F: Field>(n: usize) -> Matrix<F> {
    let half = F::from_i64(2).inv();
    let z = Matrix::zeros(n, n);
    let h = Matrix::identity(n).scale(&half);
    Matrix::from_blocks(&z, &h, &h, &z)
}

pub fn is_isotropic<F: Field>(s: &Subspace<F>) -> bool {
    let b = s.basis_vectors();
    b.iter()
        .enumerate()
        .all(|(i, u)| b[i..].iter().all(|v| pairing_coords(u, v).is_zero()))
}

pub fn is_maximal_isotropic<F: Field>(s: &Subspace<F>) -> bool {
    s.ambient() % 2 == 0 && s.dim() == s.ambient() / 2 && is_isotropic(s)
}

/// Graph presentation `(carrier, form)`: `R ⊆ V` with `ε`, or `S ⊆ V*` with `θ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphData<F> {
    pub carrier: Subspace<F>,
    pub form: Matrix<F>,
}

impl<F: Field> GraphData<F> {
    pub fn new(carrier: Subspace<F>, form: Matrix<F>) -> Result<Self> {
        if form.rows() != carrier.dim() || form.cols() != carrier.dim() {
            return Err(Error::Dimension(format!(
                "form is {}x{} but carrier has dimension {}",
                form.rows(),
                form.cols(),
                carrier.dim()
            )));
        }
        if !form.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(GraphData { carrier, form })
    }

    /// Restricts an ambient skew matrix `A` (with `ε(u, v) = uᵀ A v`) to `carrier`.
    pub fn restrict(carrier: Subspace<F>, ambient_form: &Matrix<F>) -> Result<Self> {
        let b = carrier.basis();
        let form = &(b * ambient_form) * &b.transpose();
        Self::new(carrier, form)
    }

    /// Evaluates the form on two carrier vectors given in ambient coordinates.
    pub fn eval(&self, u: &[F], v: &[F]) -> Option<F> {
        let cu = self.carrier.coords(u)?;
        let cv = self.carrier.coords(v)?;
        Some(dot(&cu, &self.form.mul_vec(&cv)))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiracStructure<F> {
    n: usize,
    space: Subspace<F>,
}

impl<F: Field> DiracStructure<F> {
    pub fn new(space: Subspace<F>) -> Result<Self> {
        if !is_maximal_isotropic(&space) {
            return Err(Error::Dimension(format!(
                "subspace of dimension {} in ambient {} is not maximal isotropic",
                space.dim(),
                space.ambient()
            )));
        }
        Ok(DiracStructure { n: space.ambient() / 2, space })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn into_space(self) -> Subspace<F> {
        self.space
    }

    /// `V` itself (the tangent copy).
    pub fn vectors(n: usize) -> Self {
        Self::new(Subspace::span(2 * n, (0..n).map(|i| crate::matrix::unit_vec(2 * n, i)).collect()))
            .expect("V is maximal isotropic")
    }

    /// `V*` itself.
    pub fn covectors(n: usize) -> Self {
        Self::new(Subspace::span(2 * n, (n..2 * n).map(|i| crate::matrix::unit_vec(2 * n, i)).collect()))
            .expect("V* is maximal isotropic")
    }
}

impl<F: Field + Conjugate> DiracStructure<F> {
    pub fn conj(&self) -> Self {
        DiracStructure { n: self.n, space: self.space.conj() }
    }
}

fn embed_vec<F: Field>(x: &[F], xi: &[F]) -> Vec<F> {
    let mut v = x.to_vec();
    v.extend_from_slice(xi);
    v
}

/// `L(R, ε) = {X + ξ : X ∈ R, ξ|_R = ι_X ε}`.
pub fn dirac_from_form<F: Field>(data: &GraphData<F>) -> DiracStructure<F> {
    let r = &data.carrier;
    let n = r.ambient();
    let mut rows = Vec::with_capacity(n);
    // X = b_a with ξ = Σ_c ε(b_a, b_c) e^{p_c}: the echelon basis satisfies
    // b_d[p_c] = δ_dc, so ξ(b_d) = ε(b_a, b_d).
    for (a, b) in r.basis_vectors().into_iter().enumerate() {
        let mut xi = vec![F::zero(); n];
        for (c, &p) in r.pivots().iter().enumerate() {
            xi[p] = data.form[(a, c)].clone();
        }
        rows.push(embed_vec(&b, &xi));
    }
    let zero = vec![F::zero(); n];
    for eta in r.annihilator().basis_vectors() {
        rows.push(embed_vec(&zero, &eta));
    }
    DiracStructure::new(Subspace::span(2 * n, rows)).expect("graph of a 2-form is maximal isotropic")
}

/// `L(S, θ) = {X + ξ : ξ ∈ S, θ(ξ, η) = -η(X) for all η ∈ S}`.
pub fn dirac_from_bivector<F: Field>(data: &GraphData<F>) -> DiracStructure<F> {
    let s = &data.carrier;
    let n = s.ambient();
    let mut rows = Vec::with_capacity(n);
    for (a, xi) in s.basis_vectors().into_iter().enumerate() {
        let mut x = vec![F::zero(); n];
        for (c, &p) in s.pivots().iter().enumerate() {
            x[p] = -data.form[(a, c)].clone();
        }
        rows.push(embed_vec(&x, &xi));
    }
    let zero = vec![F::zero(); n];
    for v in s.annihilator().basis_vectors() {
        rows.push(embed_vec(&v, &zero));
    }
    DiracStructure::new(Subspace::span(2 * n, rows)).expect("graph of a bivector is maximal isotropic")
}

/// Recovers `(q1(L), ε)` and `(q2(L), θ)`.
pub fn graph_data<F: Field>(l: &DiracStructure<F>) -> (GraphData<F>, GraphData<F>) {
    let n = l.n();
    let basis = l.space().basis();
    let xs = basis.block(0, 0, basis.rows(), n);
    let xis = basis.block(0, n, basis.rows(), n);

    let r = Subspace::from_rows(&xs);
    let rb = r.basis_vectors();
    let partners: Vec<Vec<F>> = rb
        .iter()
        .map(|x| {
            let c = xs.transpose().solve(x).expect("carrier vector lifts to L");
            xis.transpose().mul_vec(&c)
        })
        .collect();
    let eps = Matrix::from_fn(rb.len(), rb.len(), |a, c| dot(&partners[a], &rb[c]));

    let s = Subspace::from_rows(&xis);
    let sb = s.basis_vectors();
    let partners: Vec<Vec<F>> = sb
        .iter()
        .map(|xi| {
            let c = xis.transpose().solve(xi).expect("carrier covector lifts to L");
            xs.transpose().mul_vec(&c)
        })
        .collect();
    let theta = Matrix::from_fn(sb.len(), sb.len(), |a, c| -dot(&sb[c], &partners[a]));

    (
        GraphData::new(r, eps).expect("ε of a Dirac structure is skew"),
        GraphData::new(s, theta).expect("θ of a Dirac structure is skew"),
    )
}

/// `B_φ(L) = {X + φ*ξ : φX + ξ ∈ L}` for `φ: V → W` (an `m × n` matrix).
pub fn pull_back<F: Field>(phi: &Matrix<F>, l: &DiracStructure<F>) -> Result<DiracStructure<F>> {
    let (m, n) = (phi.rows(), phi.cols());
    if l.n() != m {
        return Err(Error::AmbientMismatch(l.n(), m));
    }
    // pairs (X, ξ) ∈ V ⊕ W* with (φX, ξ) ∈ L, then mapped to (X, φᵀξ)
    let lift = Matrix::block_diag(phi, &Matrix::identity(m));
    let pairs = Subspace::preimage(&lift, l.space())?;
    let push = Matrix::block_diag(&Matrix::identity(n), &phi.transpose());
    DiracStructure::new(pairs.map(&push)?)
}

/// Pull-back through graph data: `(φ⁻¹R, φ*ε)`.
pub fn pull_back_via_graph<F: Field>(phi: &Matrix<F>, l: &DiracStructure<F>) -> Result<DiracStructure<F>> {
    if l.n() != phi.rows() {
        return Err(Error::AmbientMismatch(l.n(), phi.rows()));
    }
    let (rdata, _) = graph_data(l);
    let r = Subspace::preimage(phi, &rdata.carrier)?;
    let images: Vec<Vec<F>> = r.basis_vectors().iter().map(|v| phi.mul_vec(v)).collect();
    let form = Matrix::from_fn(images.len(), images.len(), |a, b| {
        rdata.eval(&images[a], &images[b]).expect("φ maps φ⁻¹R into R")
    });
    Ok(dirac_from_form(&GraphData::new(r, form)?))
}

/// `F_φ(L) = {φX + ξ : X + φ*ξ ∈ L}` for `φ: V → W`, `L` on `V`.
pub fn push_forward<F: Field>(phi: &Matrix<F>, l: &DiracStructure<F>) -> Result<DiracStructure<F>> {
    let (m, n) = (phi.rows(), phi.cols());
    if l.n() != n {
        return Err(Error::AmbientMismatch(l.n(), n));
    }
    let lift = Matrix::block_diag(&Matrix::identity(n), &phi.transpose());
    let pairs = Subspace::preimage(&lift, l.space())?;
    let push = Matrix::block_diag(phi, &Matrix::identity(m));
    DiracStructure::new(pairs.map(&push)?)
}

/// Push-forward through graph data: `((φ*)⁻¹S, φ_*θ)`.
pub fn push_forward_via_graph<F: Field>(phi: &Matrix<F>, l: &DiracStructure<F>) -> Result<DiracStructure<F>> {
    if l.n() != phi.cols() {
        return Err(Error::AmbientMismatch(l.n(), phi.cols()));
    }
    let (_, sdata) = graph_data(l);
    let phit = phi.transpose();
    let s = Subspace::preimage(&phit, &sdata.carrier)?;
    let images: Vec<Vec<F>> = s.basis_vectors().iter().map(|v| phit.mul_vec(v)).collect();
    let form = Matrix::from_fn(images.len(), images.len(), |a, b| {
        sdata.eval(&images[a], &images[b]).expect("φ* maps (φ*)⁻¹S into S")
    });
    Ok(dirac_from_bivector(&GraphData::new(s, form)?))
}

/// Random Dirac structure from random graph data `(R, ε)`, `R` of random
/// dimension. Every maximal isotropic arises this way.
pub fn random_dirac<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DiracStructure<Q> {
    let k = rng.gen_range(0..=n);
    let r = sample::random_subspace(rng, n, k);
    let eps = sample::random_skew(rng, k, 3);
    dirac_from_form(&GraphData::new(r, eps).expect("random skew form"))
}

pub fn random_dirac_c<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DiracStructure<C> {
    let k = rng.gen_range(0..=n);
    let r = sample::random_subspace_c(rng, n, k);
    let eps = sample::random_skew_c(rng, k, 2);
    dirac_from_form(&GraphData::new(r, eps).expect("random skew form"))
}
