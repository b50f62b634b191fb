//! Generalized complex structures with rational-function entries.

use super::courant::{Section, StandardCourantModel};
use super::forms::{FormField, VectorField};
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::field::{qf, Field, Q};
use crate::gcs::{self, validate_gcs, GCStructure};
use crate::matrix::{unit_vec, Matrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldGCS {
    inner: GCStructure<RatFun>,
}

impl FieldGCS {
    /// Validates `J² = -id` and orthogonality as identities.
    pub fn new(j: Matrix<RatFun>) -> Result<Self> {
        Ok(FieldGCS { inner: validate_gcs(j)? })
    }

    pub fn from_structure(inner: GCStructure<RatFun>) -> Self {
        FieldGCS { inner }
    }

    pub fn constant(j: &GCStructure<Q>) -> Self {
        FieldGCS { inner: j.map_field(RatFun::from_q) }
    }

    pub fn from_symplectic(omega: &FormField) -> Result<Self> {
        let flat = gcs::flat_of_form(&omega.gram());
        Ok(FieldGCS { inner: gcs::from_symplectic(&flat)? })
    }

    pub fn from_complex(j: &Matrix<RatFun>) -> Result<Self> {
        Ok(FieldGCS { inner: gcs::from_complex(j)? })
    }

    pub fn from_holomorphic_poisson(j: &Matrix<RatFun>, pi_sharp: &Matrix<RatFun>) -> Result<Self> {
        Ok(FieldGCS { inner: gcs::from_holomorphic_poisson(j, pi_sharp)? })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn structure(&self) -> &GCStructure<RatFun> {
        &self.inner
    }

    pub fn matrix(&self) -> &Matrix<RatFun> {
        self.inner.matrix()
    }

    /// Pointwise structure at a rational point.
    pub fn eval(&self, point: &[Q]) -> Result<GCStructure<Q>> {
        let m = self.matrix();
        let mut out = Matrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = m[(i, j)]
                    .eval(point)
                    .ok_or_else(|| Error::Pole(format!("J[{}][{}] = {} at {point:?}", i + 1, j + 1, m[(i, j)])))?;
            }
        }
        validate_gcs(out)
    }

    pub fn apply(&self, s: &Section) -> Section {
        Section::from_coords(self.matrix().mul_vec(&s.coords()))
    }

    /// `⟦Jx,Jy⟧ − ⟦x,y⟧ − J(⟦Jx,y⟧ + ⟦x,Jy⟧)`.
    pub fn nijenhuis(&self, model: &StandardCourantModel, x: &Section, y: &Section) -> Section {
        let (jx, jy) = (self.apply(x), self.apply(y));
        let inner = model.bracket(&jx, y).add(&model.bracket(x, &jy));
        model.bracket(&jx, &jy).sub(&model.bracket(x, y)).sub(&self.apply(&inner))
    }

    /// The coordinate frame `∂1..∂n, dx1..dxn`.
    pub fn frame(&self) -> Vec<Section> {
        let n = self.n();
        (0..2 * n).map(|a| Section::from_coords(unit_vec(2 * n, a))).collect()
    }

    pub fn integrability(&self, model: &StandardCourantModel) -> Result<IntegrabilityReport> {
        if model.n() != self.n() {
            return Err(Error::AmbientMismatch(model.n(), self.n()));
        }
        let frame = self.frame();
        for a in 0..frame.len() {
            for b in a + 1..frame.len() {
                let defect = self.nijenhuis(model, &frame[a], &frame[b]);
                if !defect.is_zero() {
                    return Ok(IntegrabilityReport {
                        integrable: false,
                        counterexample: Some((frame_label(self.n(), a), frame_label(self.n(), b), defect)),
                    });
                }
            }
        }
        Ok(IntegrabilityReport { integrable: true, counterexample: None })
    }

    /// `N(x, f y) − f N(x, y)`, identically zero for orthogonal `J`.
    pub fn tensoriality_defect(&self, model: &StandardCourantModel, x: &Section, y: &Section, f: &RatFun) -> Section {
        self.nijenhuis(model, x, &y.scale(f)).sub(&self.nijenhuis(model, x, y).scale(f))
    }

    fn d_section(&self, f: &RatFun) -> Section {
        Section::covector(FormField::function(self.n(), f.clone()).d().as_covector())
    }

    /// `{f, g} = 2⟨J df, dg⟩`.
    pub fn poisson_bracket(&self, f: &RatFun, g: &RatFun) -> RatFun {
        let jdf = self.apply(&self.d_section(f));
        super::courant::pairing(&jdf, &self.d_section(g)) * RatFun::from_q(&Q::from_i64(2))
    }

    /// Cyclic sum `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobi_check(&self, f: &RatFun, g: &RatFun, h: &RatFun) -> RatFun {
        let pb = |a: &RatFun, b: &RatFun| self.poisson_bracket(a, b);
        pb(f, &pb(g, h)) + pb(g, &pb(h, f)) + pb(h, &pb(f, g))
    }

    /// `X_f = ρ J 𝒟f`.
    pub fn hamiltonian(&self, f: &RatFun) -> VectorField {
        self.apply(&self.d_section(f)).x
    }
}

fn frame_label(n: usize, a: usize) -> String {
    if a < n {
        format!("∂{}", a + 1)
    } else {
        format!("dx{}", a - n + 1)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    /// Two frame elements and their nonzero defect.
    pub counterexample: Option<(String, String, Section)>,
}

/// `½` as a rational function, for callers building pairings by hand.
pub fn half() -> RatFun {
    RatFun::from_q(&qf(1, 2))
}
