//! Submanifold verdicts over a parametrized family of points.
//!
//! A family is a rational embedding `h: ℝᵏ ⇢ ℝⁿ` together with a field `J`
//! on the target patch. Pointwise verdicts are computed at each sample
//! parameter; "smooth" additionally requires constant rank of
//! `TN + π♯(TN°)` and a symbolic induced structure whose entries have no
//! poles on the samples and specialize to the pointwise ones.

use super::courant::StandardCourantModel;
use super::field_gcs::FieldGCS;
use super::forms::FormField;
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::gcs::validate_gcs;
use crate::induction::{theorem_main_verdict, InducedStructure, LinearSubmanifold, Verdict};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    dim: usize,
    components: Vec<RatFun>,
}

impl Embedding {
    /// Components are rational functions of `x1..x{dim}`.
    pub fn new(dim: usize, components: Vec<RatFun>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| c.nvars() > dim) {
            return Err(Error::Dimension(format!("component {c} uses more than {dim} parameters")));
        }
        if components.len() < dim {
            return Err(Error::Dimension(format!("{} components for a {dim}-dimensional patch", components.len())));
        }
        Ok(Embedding { dim, components })
    }

    /// `u ↦ Σ u_a b_a` for the rows `b_a` of `basis`.
    pub fn linear(basis: &Matrix<Q>) -> Result<Self> {
        let comps = (0..basis.cols())
            .map(|i| {
                (0..basis.rows()).fold(RatFun::zero(), |acc, a| acc + RatFun::var(a) * RatFun::from_q(&basis[(a, i)]))
            })
            .collect();
        Self::new(basis.rows(), comps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RatFun] {
        &self.components
    }

    /// Rows `∂h/∂u_a`.
    pub fn jacobian(&self) -> Matrix<RatFun> {
        Matrix::from_fn(self.dim, self.ambient(), |a, i| self.components[i].partial(a))
    }

    pub fn eval(&self, u: &[Q]) -> Option<Vec<Q>> {
        self.components.iter().map(|c| c.eval(u)).collect()
    }

    pub fn pull_back_form(&self, form: &FormField) -> FormField {
        form.pullback(&self.components, self.dim)
    }
}

fn eval_matrix(m: &Matrix<RatFun>, u: &[Q], what: &str) -> Result<Matrix<Q>> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)]
                .eval(u)
                .ok_or_else(|| Error::Pole(format!("{what}[{}][{}] = {} at {u:?}", i + 1, j + 1, m[(i, j)])))?;
        }
    }
    Ok(out)
}

fn eval_induced(ind: &InducedStructure<RatFun>, u: &[Q]) -> Result<[Matrix<Q>; 4]> {
    Ok([
        eval_matrix(ind.j_prime.matrix(), u, "J′")?,
        eval_matrix(&ind.phi_prime, u, "φ′")?,
        eval_matrix(&ind.pi_prime, u, "π′")?,
        eval_matrix(&ind.sigma_prime, u, "σ′")?,
    ])
}

#[derive(Clone, Debug)]
pub struct SampleVerdict {
    pub parameter: Vec<Q>,
    pub point: Option<Vec<Q>>,
    /// `dim(TN + π♯(TN°))`.
    pub rank: Option<usize>,
    pub verdict: Option<Verdict<Q>>,
    /// Pole, rank drop of the embedding, or invalid structure at this sample.
    pub error: Option<String>,
    /// The symbolic `J′` specializes to the pointwise one.
    pub matches_symbolic: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct FamilyVerdict {
    pub samples: Vec<SampleVerdict>,
    pub pointwise_admissible: bool,
    pub constant_rank: bool,
    /// Generic verdict over rational functions.
    pub symbolic: Verdict<RatFun>,
    pub pole_free: bool,
    pub symbolic_matches: bool,
    pub smooth: bool,
    pub admissible: bool,
    /// Integrability of `J′` for the twist `h*Ω`, when requested and admissible.
    pub induced_integrable: Option<bool>,
    pub reason: Option<String>,
}

impl FieldGCS {
    /// `J ∘ h` as a structure on the parameter patch, still acting on the target.
    pub fn along(&self, h: &Embedding) -> Result<crate::gcs::GCStructure<RatFun>> {
        if h.ambient() != self.n() {
            return Err(Error::AmbientMismatch(h.ambient(), self.n()));
        }
        validate_gcs(self.matrix().map(|e| e.compose(h.components())))
    }
}

pub fn family_verdict(
    j: &FieldGCS,
    h: &Embedding,
    samples: &[Vec<Q>],
    twist: Option<&FormField>,
) -> Result<FamilyVerdict> {
    if let Some(u) = samples.iter().find(|u| u.len() != h.dim()) {
        return Err(Error::Dimension(format!("sample {u:?} has {} coordinates, expected {}", u.len(), h.dim())));
    }
    let jn = j.along(h)?;
    let wn = LinearSubmanifold::from_frame(h.ambient(), h.jacobian())
        .map_err(|_| Error::Dimension("embedding is not an immersion on the patch".into()))?;
    let symbolic = theorem_main_verdict(&jn, &wn)?;

    let mut out = Vec::with_capacity(samples.len());
    for u in samples {
        let mut sv = SampleVerdict {
            parameter: u.clone(),
            point: h.eval(u),
            rank: None,
            verdict: None,
            error: None,
            matches_symbolic: None,
        };
        let pointwise = (|| -> Result<_> {
            let point = sv.point.clone().ok_or_else(|| Error::Pole(format!("embedding at {u:?}")))?;
            let ju = j.eval(&point)?;
            let frame = eval_matrix(&h.jacobian(), u, "dh")?;
            let w = LinearSubmanifold::from_frame(h.ambient(), frame)
                .map_err(|_| Error::Dimension(format!("embedding is not immersive at {u:?}")))?;
            let s = ju.split();
            let rank = w.tangent().sum(&w.conormal().map(&s.pi_sharp)?)?.dim();
            Ok((rank, theorem_main_verdict(&ju, &w)?))
        })();
        match pointwise {
            Ok((rank, v)) => {
                if let (Some(ind), Some(sym)) = (&v.induced, &symbolic.induced) {
                    sv.matches_symbolic = Some(match eval_induced(sym, u) {
                        Ok([jj, phi, pi, sigma]) => {
                            jj == *ind.j_prime.matrix()
                                && phi == ind.phi_prime
                                && pi == ind.pi_prime
                                && sigma == ind.sigma_prime
                        }
                        Err(e) => {
                            sv.error = Some(e.to_string());
                            false
                        }
                    });
                }
                sv.rank = Some(rank);
                sv.verdict = Some(v);
            }
            Err(e) => sv.error = Some(e.to_string()),
        }
        out.push(sv);
    }

    let pointwise_admissible =
        !out.is_empty() && out.iter().all(|s| s.verdict.as_ref().is_some_and(|v| v.admissible));
    let ranks: Vec<usize> = out.iter().filter_map(|s| s.rank).collect();
    let constant_rank = ranks.len() == out.len() && ranks.windows(2).all(|p| p[0] == p[1]);
    let pole_free = out.iter().all(|s| s.error.is_none());
    // samples without a pointwise J′ have nothing to compare
    let symbolic_matches = out.iter().all(|s| s.matches_symbolic != Some(false));
    let smooth = constant_rank && pole_free && symbolic.admissible && symbolic_matches;
    let admissible = pointwise_admissible && smooth;

    let reason = if out.is_empty() {
        Some("no sample points".to_string())
    } else if let Some(e) = out.iter().find_map(|s| s.error.clone()) {
        Some(e)
    } else if !pointwise_admissible {
        Some("some sample point fails the pointwise conditions".to_string())
    } else if !constant_rank {
        Some(format!("NotSmooth: rank of TN+π♯(TN°) varies over samples: {ranks:?}"))
    } else if !symbolic.admissible {
        Some("NotSmooth: no generic rational-function solution on the patch".to_string())
    } else if !symbolic_matches {
        Some("NotSmooth: symbolic induced structure does not specialize to the pointwise one".to_string())
    } else {
        None
    };

    let induced_integrable = match (twist, admissible, &symbolic.induced) {
        (Some(omega), true, Some(ind)) => {
            let upsilon = h.pull_back_form(omega);
            let model = StandardCourantModel::new(upsilon)?;
            Some(FieldGCS::from_structure(ind.j_prime.clone()).integrability(&model)?.integrable)
        }
        _ => None,
    };

    Ok(FamilyVerdict {
        samples: out,
        pointwise_admissible,
        constant_rank,
        symbolic,
        pole_free,
        symbolic_matches,
        smooth,
        admissible,
        induced_integrable,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::parse_ratfun;
    use crate::field::q;
    use crate::gcs;

    fn r(s: &str, n: usize) -> RatFun {
        parse_ratfun(s, n).unwrap()
    }

    fn grid(k: usize) -> Vec<Vec<Q>> {
        match k {
            1 => (-2..=2).map(|a| vec![q(a)]).collect(),
            _ => (-1..=1).flat_map(|a| (-1..=1).map(move |b| vec![q(a), q(b)])).collect(),
        }
    }

    #[test]
    fn symplectic_graph_surface() {
        // ℝ⁴ with ω = dx1∧dx2 + dx3∧dx4 and the surface (u, v, u², v).
        let omega = FormField::from_terms(4, 2, vec![(vec![0, 1], r("1", 4)), (vec![2, 3], r("1", 4))]).unwrap();
        let j = FieldGCS::from_symplectic(&omega).unwrap();
        let h = Embedding::new(2, vec![r("x1", 2), r("x2", 2), r("x1^2", 2), r("x2", 2)]).unwrap();
        let v = family_verdict(&j, &h, &grid(2), Some(&FormField::zero(4, 3))).unwrap();
        assert!(v.admissible, "{:?}", v.reason);
        assert_eq!(v.induced_integrable, Some(true));
        // h*ω = (1 + 2u) du∧dv, degenerate along u = -1/2.
        let bad = vec![vec![q(0), q(0)], vec![Q::new((-1).into(), 2.into()), q(0)]];
        let v = family_verdict(&j, &h, &bad, None).unwrap();
        assert!(!v.admissible);
        assert!(!v.pointwise_admissible);
    }

    #[test]
    fn rank_jump_is_not_smooth() {
        // ℂ³ with π = x5·Re(∂z1∧∂z2) and N the z3-line: Poisson-Dirac at every
        // point, but π♯(TN°) collapses where x5 = 0.
        let j0 = gcs::standard_complex(3).map(RatFun::from_q);
        let x5 = r("x5", 6);
        let mut pi = Matrix::zeros(6, 6);
        pi[(0, 2)] = x5.clone();
        pi[(1, 3)] = -x5.clone();
        pi[(2, 0)] = -x5.clone();
        pi[(3, 1)] = x5;
        let j = FieldGCS::from_holomorphic_poisson(&j0, &pi).unwrap();
        let h = Embedding::linear(&crate::matrix::int_matrix(&[&[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]])).unwrap();
        let v = family_verdict(&j, &h, &grid(2), None).unwrap();
        assert!(v.pointwise_admissible);
        assert!(!v.constant_rank);
        assert!(!v.smooth && !v.admissible);
        assert!(v.reason.unwrap().starts_with("NotSmooth"));

        let away = vec![vec![q(1), q(0)], vec![q(2), q(-3)]];
        let v = family_verdict(&j, &h, &away, None).unwrap();
        assert!(v.admissible, "{:?}", v.reason);
    }

    #[test]
    fn whole_patch_and_lagrangian_curve() {
        // ω = (1 + x1²) dx1∧dx2 on ℝ²; N = ℝ² itself, J′ = J.
        let omega = FormField::from_terms(2, 2, vec![(vec![0, 1], r("1 + x1^2", 2))]).unwrap();
        let j = FieldGCS::from_symplectic(&omega).unwrap();
        let h = Embedding::new(2, vec![r("x1", 2), r("x2", 2)]).unwrap();
        let v = family_verdict(&j, &h, &grid(2), Some(&FormField::zero(2, 3))).unwrap();
        assert!(v.admissible);
        assert_eq!(v.symbolic.induced.as_ref().unwrap().j_prime, *j.structure());

        // Curve (t, 0) in the ℝ² above is never admissible: TN is Lagrangian.
        let c = Embedding::new(1, vec![r("x1", 1), r("0", 1)]).unwrap();
        let v = family_verdict(&j, &c, &grid(1), None).unwrap();
        assert!(!v.admissible && !v.symbolic.admissible);
    }

    #[test]
    fn pole_on_samples_is_reported() {
        let omega = FormField::from_terms(2, 2, vec![(vec![0, 1], r("x1", 2))]).unwrap();
        let j = FieldGCS::from_symplectic(&omega).unwrap();
        let h = Embedding::new(2, vec![r("x1", 2), r("x2", 2)]).unwrap();
        let v = family_verdict(&j, &h, &grid(2), None).unwrap();
        assert!(!v.pole_free && !v.admissible);
        assert!(v.reason.unwrap().contains("J["));
        let v = family_verdict(&j, &h, &[vec![q(1), q(0)], vec![q(3), q(5)]], None).unwrap();
        assert!(v.admissible);
    }
}
