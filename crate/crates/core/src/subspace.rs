//! Linear subspaces in reduced row-echelon canonical form.
//!
//! Two equal subspaces always carry bit-identical bases, so equality of
//! subspaces is plain structural equality.

use crate::error::{Error, Result};
use crate::field::{Conjugate, Field};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Row space of `rows`.
    pub fn from_rows(rows: &Matrix<F>) -> Self {
        let (r, pivots) = rows.rref_with_pivots();
        let basis = r.block(0, 0, pivots.len(), r.cols());
        Subspace { ambient: rows.cols(), basis, pivots }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        Self::from_rows(&Matrix::from_rows(ambient, vectors))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_rows(&Matrix::identity(ambient))
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::span(m.cols(), m.kernel_basis())
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix<F>) -> Self {
        Self::from_rows(&m.transpose())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one row per vector.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. The echelon basis makes the coordinates the entries of
    /// `v` at the pivot columns.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![F::zero(); self.ambient];
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(k).iter().enumerate() {
                rebuilt[j] = rebuilt[j].clone() + ck.clone() * b.clone();
            }
        }
        (rebuilt == v).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_rows(&self.basis.vstack(&other.basis)))
    }

    /// Intersection via the relation module of the stacked bases: if
    /// `c·A + d·B = 0` then `c·A` lies in both spaces.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let stacked = self.basis.vstack(&other.basis);
        let relations = stacked.transpose().kernel_basis();
        let k = self.dim();
        let vectors = relations
            .iter()
            .map(|rel| {
                let mut v = vec![F::zero(); self.ambient];
                for (i, ci) in rel[..k].iter().enumerate() {
                    for (j, b) in self.basis.row(i).iter().enumerate() {
                        v[j] = v[j].clone() + ci.clone() * b.clone();
                    }
                }
                v
            })
            .collect();
        Ok(Self::span(self.ambient, vectors))
    }

    /// `{ξ : ξ(x) = 0 for all x in self}` in the dual basis.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        Self::kernel(&self.basis)
    }

    /// Image of the subspace under `m`.
    pub fn map(&self, m: &Matrix<F>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::AmbientMismatch(m.cols(), self.ambient));
        }
        let vectors = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Ok(Self::span(m.rows(), vectors))
    }

    /// `{x : m x ∈ s}`.
    pub fn preimage(m: &Matrix<F>, s: &Self) -> Result<Self> {
        if m.rows() != s.ambient {
            return Err(Error::AmbientMismatch(m.rows(), s.ambient));
        }
        let ann = s.annihilator();
        if ann.is_zero() {
            return Ok(Self::full(m.cols()));
        }
        Ok(Self::kernel(&(ann.basis() * m)))
    }

    /// True when `self ∩ other = 0` and the two span everything.
    pub fn is_complement(&self, other: &Self) -> Result<bool> {
        Ok(self.intersect(other)?.is_zero() && self.dim() + other.dim() == self.ambient)
    }

    /// Projects `v ∈ self ⊕ other` onto `self` along `other`. Returns `None`
    /// when `v` is not in the sum. Assumes the sum is direct.
    pub fn project_along(&self, other: &Self, v: &[F]) -> Option<Vec<F>> {
        let stacked = self.basis.vstack(&other.basis);
        let coeffs = stacked.transpose().solve(v)?;
        let mut out = vec![F::zero(); self.ambient];
        for (i, ci) in coeffs[..self.dim()].iter().enumerate() {
            for (j, b) in self.basis.row(i).iter().enumerate() {
                out[j] = out[j].clone() + ci.clone() * b.clone();
            }
        }
        Some(out)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace::from_rows(&self.basis.map(f))
    }
}

impl<F: Field + Conjugate> Subspace<F> {
    pub fn conj(&self) -> Self {
        Self::from_rows(&self.basis.conj())
    }
}
