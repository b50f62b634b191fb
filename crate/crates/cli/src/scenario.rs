//! Scenario files: parsing and load-time validation.

use gck_core::calculus::courant::check_closed;
use gck_core::calculus::{Embedding, FieldGCS, FormField, RatFun};
use gck_core::field::{Field, Q};
use gck_core::gcs::{validate_gcs, GCStructure};
use gck_core::induction::LinearSubmanifold;
use gck_core::{Matrix, Subspace};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::codec::{decode_form_terms, decode_ratfun, decode_vector};

pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{path}: {message}")]
    Syntax { path: String, message: String },
    #[error("{path}: dimension mismatch: {message}")]
    DimensionMismatch { path: String, message: String },
    #[error("{path}: invariant violated: {message}")]
    InvariantViolation { path: String, message: String },
}

impl ScenarioError {
    pub fn path(&self) -> &str {
        match self {
            ScenarioError::Syntax { path, .. }
            | ScenarioError::DimensionMismatch { path, .. }
            | ScenarioError::InvariantViolation { path, .. } => path,
        }
    }
}

fn invariant(path: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::InvariantViolation { path: path.into(), message: message.into() }
}

fn mismatch(path: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::DimensionMismatch { path: path.into(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pointwise,
    Field,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    kind: Kind,
    n: usize,
    #[serde(default)]
    structure: Option<RawStructure>,
    #[serde(default)]
    second: Option<RawStructure>,
    #[serde(default)]
    twist: Option<Value>,
    #[serde(default)]
    submanifold: Option<RawSubmanifold>,
    #[serde(default)]
    involution: Option<Value>,
    #[serde(default)]
    sample_points: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawStructure {
    Symplectic(Value),
    Complex(Value),
    HolomorphicPoisson { j: Value, pi: Value },
    Raw(Value),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawSubmanifold {
    Basis(Value),
    Embedding { dim: usize, components: Vec<Value> },
}

#[derive(Clone, Debug)]
pub enum StructureKind {
    Symplectic,
    Complex,
    HolomorphicPoisson,
    Raw,
}

impl StructureKind {
    pub fn name(&self) -> &'static str {
        match self {
            StructureKind::Symplectic => "symplectic",
            StructureKind::Complex => "complex",
            StructureKind::HolomorphicPoisson => "holomorphic_poisson",
            StructureKind::Raw => "raw",
        }
    }
}

/// A validated structure. Pointwise scenarios keep the exact matrix;
/// field scenarios keep rational-function entries.
#[derive(Clone, Debug)]
pub struct Structure {
    pub kind: StructureKind,
    pub field: FieldGCS,
    pub point: Option<GCStructure<Q>>,
}

#[derive(Clone, Debug)]
pub enum Submanifold {
    /// Rows span `TN` (at every point for field scenarios).
    Basis(Matrix<Q>),
    /// Components are expressions in the parameters `x1..x{dim}`.
    Embedding(Embedding),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: Kind,
    pub n: usize,
    pub structure: Option<Structure>,
    pub second: Option<Structure>,
    pub twist: Option<FormField>,
    pub submanifold: Option<Submanifold>,
    pub involution: Option<Matrix<Q>>,
    /// Points of `ℝⁿ`, or parameter tuples when the submanifold is an embedding.
    pub sample_points: Vec<Vec<Q>>,
}

/// `GCK_MAX_N`, defaulting to 6.
pub fn max_n_from_env() -> usize {
    std::env::var("GCK_MAX_N").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario_capped(text, max_n_from_env())
}

pub fn parse_scenario_capped(text: &str, max_n: usize) -> Result<Scenario, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawScenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ScenarioError::Syntax { path: if path == "." { "$".into() } else { path }, message: e.into_inner().to_string() }
    })?;
    let n = raw.n;
    if n == 0 || n > max_n {
        return Err(mismatch("n", format!("n = {n} outside 1..={max_n} (GCK_MAX_N)")));
    }
    let kind = raw.kind;
    let first = raw.structure.as_ref().map(|s| structure(s, "structure", n, kind)).transpose()?;
    let second = raw.second.as_ref().map(|s| structure(s, "second", n, kind)).transpose()?;
    if second.is_some() && first.is_none() {
        return Err(invariant("second", "a second structure needs a first one"));
    }

    let twist = match &raw.twist {
        Some(v) => {
            let omega = decode_form_terms(v, "twist", n, 3)?;
            if let Err(e) = check_closed(&omega) {
                return Err(invariant("twist", e.to_string()));
            }
            Some(omega)
        }
        None => None,
    };

    let submanifold = match &raw.submanifold {
        Some(RawSubmanifold::Basis(v)) => {
            let m = constant_matrix(v, "submanifold.basis", n)?;
            if m.cols() != n && m.rows() > 0 {
                return Err(mismatch("submanifold.basis", format!("rows have {} entries, expected {n}", m.cols())));
            }
            let m = if m.rows() == 0 { Matrix::zeros(0, n) } else { m };
            if m.rank() != m.rows() {
                return Err(invariant("submanifold.basis", "basis rows are linearly dependent"));
            }
            Some(Submanifold::Basis(m))
        }
        Some(RawSubmanifold::Embedding { dim, components }) => {
            if components.len() != n {
                return Err(mismatch(
                    "submanifold.embedding.components",
                    format!("{} components, expected {n}", components.len()),
                ));
            }
            if *dim > n {
                return Err(mismatch("submanifold.embedding.dim", format!("dim {dim} exceeds n = {n}")));
            }
            let comps = components
                .iter()
                .enumerate()
                .map(|(i, c)| decode_ratfun(c, &format!("submanifold.embedding.components[{i}]"), *dim))
                .collect::<Result<Vec<_>, _>>()?;
            let h = Embedding::new(*dim, comps).map_err(|e| mismatch("submanifold.embedding", e.to_string()))?;
            Some(Submanifold::Embedding(h))
        }
        None => None,
    };

    let involution = match &raw.involution {
        Some(v) => {
            let psi = constant_matrix(v, "involution", n)?;
            square(&psi, "involution", n)?;
            if !psi.pow2().is_identity() {
                let residual = &psi.pow2() - &Matrix::identity(n);
                return Err(invariant("involution", format!("Ψ² ≠ id, residual Ψ² − id = {residual}")));
            }
            Some(psi)
        }
        None => None,
    };

    let point_len = match &submanifold {
        Some(Submanifold::Embedding(h)) => h.dim(),
        _ => n,
    };
    let mut sample_points = Vec::with_capacity(raw.sample_points.len());
    for (i, p) in raw.sample_points.iter().enumerate() {
        let path = format!("sample_points[{i}]");
        let v: Vec<Q> = decode_vector(p, &path)?;
        if v.len() != point_len {
            return Err(mismatch(&path, format!("{} coordinates, expected {point_len}", v.len())));
        }
        sample_points.push(v);
    }

    Ok(Scenario { kind, n, structure: first, second, twist, submanifold, involution, sample_points })
}

fn square<F: Field>(m: &Matrix<F>, path: &str, n: usize) -> Result<(), ScenarioError> {
    if m.rows() != n || m.cols() != n {
        return Err(mismatch(path, format!("matrix is {}×{}, expected {n}×{n}", m.rows(), m.cols())));
    }
    Ok(())
}

fn symbolic_matrix(v: &Value, path: &str, nvars: usize) -> Result<Matrix<RatFun>, ScenarioError> {
    let rows = v.as_array().ok_or_else(|| ScenarioError::Syntax { path: path.into(), message: "expected an array of rows".into() })?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let r = r.as_array().ok_or_else(|| ScenarioError::Syntax { path: rp.clone(), message: "expected an array".into() })?;
        let row = r
            .iter()
            .enumerate()
            .map(|(k, e)| decode_ratfun(e, &format!("{rp}[{k}]"), nvars))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = out.first() {
            let first: &Vec<RatFun> = first;
            if first.len() != row.len() {
                return Err(mismatch(&rp, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        out.push(row);
    }
    let cols = out.first().map_or(0, Vec::len);
    Ok(Matrix::from_rows(cols, out))
}

fn constant_matrix(v: &Value, path: &str, n: usize) -> Result<Matrix<Q>, ScenarioError> {
    let m = symbolic_matrix(v, path, n)?;
    for i in 0..m.rows() {
        for k in 0..m.cols() {
            if m[(i, k)].constant_value().is_none() {
                return Err(ScenarioError::Syntax { path: format!("{path}[{i}][{k}]"), message: "expected a constant".into() });
            }
        }
    }
    Ok(m.map(|e| e.constant_value().unwrap()))
}

fn structure_matrix(v: &Value, path: &str, n: usize, kind: Kind, size: usize) -> Result<Matrix<RatFun>, ScenarioError> {
    let m = match kind {
        Kind::Pointwise => constant_matrix(v, path, n)?.map(RatFun::from_q),
        Kind::Field => symbolic_matrix(v, path, n)?,
    };
    square(&m, path, size)?;
    Ok(m)
}

fn skew(m: &Matrix<RatFun>, path: &str) -> Result<(), ScenarioError> {
    for i in 0..m.rows() {
        for k in 0..i {
            if m[(i, k)] != -m[(k, i)].clone() {
                return Err(invariant(
                    path,
                    format!("not skew: entry [{i}][{k}] = {} but [{k}][{i}] = {}", m[(i, k)], m[(k, i)]),
                ));
            }
        }
        if !m[(i, i)].is_zero() {
            return Err(invariant(path, format!("not skew: diagonal entry [{i}][{i}] = {}", m[(i, i)])));
        }
    }
    Ok(())
}

fn structure(raw: &RawStructure, path: &str, n: usize, kind: Kind) -> Result<Structure, ScenarioError> {
    let violated = |sub: &str, e: gck_core::Error| invariant(&format!("{path}.{sub}"), e.to_string());
    let (skind, field) = match raw {
        RawStructure::Symplectic(v) => {
            let p = format!("{path}.symplectic");
            let omega = structure_matrix(v, &p, n, kind, n)?;
            skew(&omega, &p)?;
            let field = FieldGCS::from_symplectic(&FormField::from_gram(&omega)).map_err(|e| violated("symplectic", e))?;
            (StructureKind::Symplectic, field)
        }
        RawStructure::Complex(v) => {
            let p = format!("{path}.complex");
            let j = structure_matrix(v, &p, n, kind, n)?;
            let field = FieldGCS::from_complex(&j).map_err(|e| {
                let residual = &j.pow2() + &Matrix::identity(n);
                invariant(&p, format!("{e}; residual j² + id = {residual}"))
            })?;
            (StructureKind::Complex, field)
        }
        RawStructure::HolomorphicPoisson { j, pi } => {
            let jp = format!("{path}.holomorphic_poisson.j");
            let pp = format!("{path}.holomorphic_poisson.pi");
            let j = structure_matrix(j, &jp, n, kind, n)?;
            let pi = structure_matrix(pi, &pp, n, kind, n)?;
            skew(&pi, &pp)?;
            let field = FieldGCS::from_holomorphic_poisson(&j, &pi).map_err(|e| violated("holomorphic_poisson", e))?;
            (StructureKind::HolomorphicPoisson, field)
        }
        RawStructure::Raw(v) => {
            let p = format!("{path}.raw");
            let j = structure_matrix(v, &p, n, kind, 2 * n)?;
            let field = FieldGCS::new(j).map_err(|e| violated("raw", e))?;
            (StructureKind::Raw, field)
        }
    };
    let point = match kind {
        Kind::Pointwise => {
            let m = field.matrix().map(|e| e.constant_value().expect("constant entries"));
            Some(validate_gcs(m).map_err(|e| invariant(path, e.to_string()))?)
        }
        Kind::Field => None,
    };
    Ok(Structure { kind: skind, field, point })
}

/// One point of a scenario: the structure(s) there and the tangent space of
/// the submanifold, if any.
#[derive(Clone, Debug)]
pub struct Instance {
    /// `None` for pointwise scenarios.
    pub at: Option<Vec<Q>>,
    pub j: GCStructure<Q>,
    pub second: Option<GCStructure<Q>>,
    pub w: Option<LinearSubmanifold<Q>>,
}

impl Scenario {
    pub fn structure(&self) -> Result<&Structure, ScenarioError> {
        self.structure.as_ref().ok_or_else(|| ScenarioError::Syntax {
            path: "structure".into(),
            message: "this command needs a structure".into(),
        })
    }

    /// Pointwise scenarios give one instance; field scenarios give one per
    /// sample point (parameter tuple for an embedded submanifold).
    pub fn instances(&self) -> Result<Vec<Instance>, ScenarioError> {
        let s = self.structure()?;
        match self.kind {
            Kind::Pointwise => {
                let w = match &self.submanifold {
                    Some(Submanifold::Basis(b)) => Some(linear(b)?),
                    Some(Submanifold::Embedding(_)) => {
                        return Err(ScenarioError::Syntax {
                            path: "submanifold".into(),
                            message: "pointwise scenarios take a basis, not an embedding".into(),
                        })
                    }
                    None => None,
                };
                Ok(vec![Instance {
                    at: None,
                    j: s.point.clone().expect("pointwise structure"),
                    second: self.second.as_ref().map(|t| t.point.clone().expect("pointwise structure")),
                    w,
                }])
            }
            Kind::Field => {
                if self.sample_points.is_empty() {
                    return Err(ScenarioError::Syntax {
                        path: "sample_points".into(),
                        message: "field scenarios need at least one sample point".into(),
                    });
                }
                self.sample_points.iter().enumerate().map(|(i, u)| self.instance_at(i, u)).collect()
            }
        }
    }

    fn instance_at(&self, i: usize, u: &[Q]) -> Result<Instance, ScenarioError> {
        let path = format!("sample_points[{i}]");
        let (point, w) = match &self.submanifold {
            Some(Submanifold::Embedding(h)) => {
                let p = h.eval(u).ok_or_else(|| invariant(&path, "embedding has a pole here"))?;
                let jac = h.jacobian();
                let mut frame = Matrix::zeros(jac.rows(), jac.cols());
                for a in 0..jac.rows() {
                    for k in 0..jac.cols() {
                        frame[(a, k)] = jac[(a, k)].eval(u).ok_or_else(|| invariant(&path, "embedding derivative has a pole here"))?;
                    }
                }
                if frame.rank() != frame.rows() {
                    return Err(invariant(&path, "embedding is not an immersion here"));
                }
                (p, Some(LinearSubmanifold::new(Subspace::from_rows(&frame))))
            }
            Some(Submanifold::Basis(b)) => (u.to_vec(), Some(linear(b)?)),
            None => (u.to_vec(), None),
        };
        let eval = |s: &Structure| s.field.eval(&point).map_err(|e| invariant(&path, e.to_string()));
        let j = eval(self.structure()?)?;
        let second = self.second.as_ref().map(eval).transpose()?;
        Ok(Instance { at: Some(u.to_vec()), j, second, w })
    }
}

fn linear(b: &Matrix<Q>) -> Result<LinearSubmanifold<Q>, ScenarioError> {
    Ok(LinearSubmanifold::new(Subspace::from_rows(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SYMPLECTIC_R2: &str = r#"{"kind": "pointwise", "n": 2, "structure": {"symplectic": [["0", "1"], ["-1", "0"]]}}"#;

    #[test]
    fn minimal_symplectic() {
        let s = parse_scenario_capped(SYMPLECTIC_R2, 6).unwrap();
        assert_eq!(s.n, 2);
        let j = s.structure.unwrap().point.unwrap();
        // ω♭ is the transposed Gram matrix
        assert_eq!(j.split().sigma_flat, Matrix::from_rows(2, vec![vec![Q::zero(), -Q::one()], vec![Q::one(), Q::zero()]]));
    }

    #[test]
    fn syntax_errors_carry_paths() {
        let err = parse_scenario_capped(r#"{"kind": "pointwise", "n": 2, "structure": {"symplectic": [["0", "x"]]}}"#, 6)
            .unwrap_err();
        assert_eq!(err.path(), "structure.symplectic[0][1]");
        let err = parse_scenario_capped(r#"{"kind": "pointwise", "n": "two"}"#, 6).unwrap_err();
        assert!(matches!(err, ScenarioError::Syntax { ref path, .. } if path == "n"), "{err:?}");
        let err = parse_scenario_capped("{", 6).unwrap_err();
        assert!(matches!(err, ScenarioError::Syntax { .. }));
        let err = parse_scenario_capped(r#"{"kind": "pointwise", "n": 2, "colour": 1}"#, 6).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn dimension_errors() {
        let err = parse_scenario_capped(r#"{"kind": "pointwise", "n": 4, "structure": {"complex": [["0", "-1"], ["1", "0"]]}}"#, 6)
            .unwrap_err();
        assert!(matches!(err, ScenarioError::DimensionMismatch { ref path, .. } if path == "structure.complex"), "{err:?}");
        let err = parse_scenario_capped(r#"{"kind": "pointwise", "n": 8}"#, 6).unwrap_err();
        assert!(matches!(err, ScenarioError::DimensionMismatch { ref path, .. } if path == "n"));
        assert!(parse_scenario_capped(r#"{"kind": "pointwise", "n": 8}"#, 8).is_ok());
    }

    #[test]
    fn non_closed_twist_names_coefficient() {
        let text = r#"{"kind": "field", "n": 4, "twist": [{"indices": [2, 3, 4], "coeff": "x1"}]}"#;
        let err = parse_scenario_capped(text, 6).unwrap_err();
        match err {
            ScenarioError::InvariantViolation { path, message } => {
                assert_eq!(path, "twist");
                // dΩ = dx1∧dx2∧dx3∧dx4
                assert!(message.contains("dx1∧dx2∧dx3∧dx4"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn failing_square_reports_residual() {
        let text = r#"{"kind": "pointwise", "n": 1, "structure": {"raw": [["1", "0"], ["0", "-1"]]}}"#;
        let err = parse_scenario_capped(text, 6).unwrap_err();
        match err {
            ScenarioError::InvariantViolation { path, message } => {
                assert_eq!(path, "structure.raw");
                assert!(message.contains("residual"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let text = r#"{"kind": "pointwise", "n": 2, "structure": {"symplectic": [["0", "1"], ["1", "0"]]}}"#;
        assert!(matches!(parse_scenario_capped(text, 6), Err(ScenarioError::InvariantViolation { .. })));
    }

    #[test]
    fn field_instances_follow_samples() {
        let text = r#"{"kind": "field", "n": 2, "structure": {"symplectic": [["0", "1 + x1^2"], ["-1 - x1^2", "0"]]},
                       "sample_points": [["0", "0"], ["2", "1/3"]]}"#;
        let s = parse_scenario_capped(text, 6).unwrap();
        let inst = s.instances().unwrap();
        assert_eq!(inst.len(), 2);
        let sigma = inst[1].j.split().sigma_flat;
        assert_eq!(sigma[(0, 1)], Q::from_integer((-5).into()));
    }
}
