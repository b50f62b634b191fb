//! Lossless JSON encoding of exact objects.
//!
//! Rationals are `"p/q"` strings, complex numbers `{"re", "im"}`, and index
//! lists in forms and spinors are 1-based.

use gck_core::calculus::{parse_ratfun, FormField, RatFun};
use gck_core::dirac::GTVector;
use gck_core::field::{cq, fmt_q, parse_q, Field, C, Q};
use gck_core::gcs::Splitting;
use gck_core::spinor::Spinor;
use gck_core::{Matrix, Subspace};
use serde_json::{json, Value};

use crate::scenario::ScenarioError;

type Decoded<T> = Result<T, ScenarioError>;

fn syntax(path: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Syntax { path: path.to_string(), message: message.into() }
}

fn array<'a>(v: &'a Value, path: &str) -> Decoded<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| syntax(path, "expected an array"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Decoded<&'a Value> {
    v.get(key).ok_or_else(|| syntax(path, format!("missing field `{key}`")))
}

fn usize_at(v: &Value, path: &str) -> Decoded<usize> {
    v.as_u64().map(|k| k as usize).ok_or_else(|| syntax(path, "expected a non-negative integer"))
}

pub trait Scalar: Field {
    fn encode(&self) -> Value;
    fn decode(v: &Value, path: &str) -> Decoded<Self>;
}

impl Scalar for Q {
    fn encode(&self) -> Value {
        Value::String(fmt_q(self))
    }

    fn decode(v: &Value, path: &str) -> Decoded<Self> {
        match v {
            Value::String(s) => parse_q(s).map_err(|e| syntax(path, e.to_string())),
            Value::Number(k) if k.is_i64() => Ok(Q::from_integer(k.as_i64().unwrap().into())),
            _ => Err(syntax(path, "expected a rational string \"p/q\"")),
        }
    }
}

impl Scalar for C {
    fn encode(&self) -> Value {
        json!({ "re": self.re.encode(), "im": self.im.encode() })
    }

    fn decode(v: &Value, path: &str) -> Decoded<Self> {
        if v.is_object() {
            let re = Q::decode(field(v, "re", path)?, &format!("{path}.re"))?;
            let im = Q::decode(field(v, "im", path)?, &format!("{path}.im"))?;
            Ok(cq(re, im))
        } else {
            Ok(cq(Q::decode(v, path)?, Q::zero()))
        }
    }
}

pub fn vector<F: Scalar>(v: &[F]) -> Value {
    Value::Array(v.iter().map(Scalar::encode).collect())
}

pub fn decode_vector<F: Scalar>(v: &Value, path: &str) -> Decoded<Vec<F>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| F::decode(x, &format!("{path}[{i}]"))).collect()
}

pub fn matrix<F: Scalar>(m: &Matrix<F>) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector(r)).collect())
}

pub fn decode_matrix<F: Scalar>(v: &Value, path: &str) -> Decoded<Matrix<F>> {
    let rows = array(v, path)?;
    let rows: Vec<Vec<F>> =
        rows.iter().enumerate().map(|(i, r)| decode_vector(r, &format!("{path}[{i}]"))).collect::<Decoded<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(ScenarioError::DimensionMismatch {
            path: format!("{path}[{i}]"),
            message: format!("row has {} entries, expected {cols}", rows[i].len()),
        });
    }
    Ok(Matrix::from_rows(cols, rows))
}

pub fn symbolic_matrix(m: &Matrix<RatFun>) -> Value {
    Value::Array(
        m.row_vecs().iter().map(|r| Value::Array(r.iter().map(|e| Value::String(e.to_string())).collect())).collect(),
    )
}

pub fn subspace<F: Scalar>(s: &Subspace<F>) -> Value {
    json!({ "ambient": s.ambient(), "basis": Value::Array(s.basis_vectors().iter().map(|v| vector(v)).collect()) })
}

pub fn decode_subspace<F: Scalar>(v: &Value, path: &str) -> Decoded<Subspace<F>> {
    let ambient = usize_at(field(v, "ambient", path)?, &format!("{path}.ambient"))?;
    let basis_path = format!("{path}.basis");
    let rows = array(field(v, "basis", path)?, &basis_path)?;
    let mut vectors = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let p = format!("{basis_path}[{i}]");
        let vec: Vec<F> = decode_vector(r, &p)?;
        if vec.len() != ambient {
            return Err(ScenarioError::DimensionMismatch {
                path: p,
                message: format!("vector has {} entries, expected {ambient}", vec.len()),
            });
        }
        vectors.push(vec);
    }
    Ok(Subspace::span(ambient, vectors))
}

pub fn gt_vector<F: Scalar>(v: &GTVector<F>) -> Value {
    json!({ "x": vector(v.x()), "xi": vector(v.xi()) })
}

pub fn splitting<F: Scalar>(s: &Splitting<F>) -> Value {
    json!({ "phi": matrix(&s.phi), "pi": matrix(&s.pi_sharp), "sigma": matrix(&s.sigma_flat) })
}

pub fn decode_splitting<F: Scalar>(v: &Value, path: &str) -> Decoded<Splitting<F>> {
    let get = |k: &str| -> Decoded<Matrix<F>> { decode_matrix(field(v, k, path)?, &format!("{path}.{k}")) };
    Ok(Splitting { phi: get("phi")?, pi_sharp: get("pi")?, sigma_flat: get("sigma")? })
}

fn one_based(idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|i| json!(i + 1)).collect())
}

fn decode_indices(v: &Value, path: &str, n: usize) -> Decoded<Vec<usize>> {
    let raw = array(v, path)?;
    raw.iter()
        .enumerate()
        .map(|(k, i)| {
            let p = format!("{path}[{k}]");
            match usize_at(i, &p)? {
                i @ 1.. if i <= n => Ok(i - 1),
                i => Err(ScenarioError::DimensionMismatch { path: p, message: format!("index {i} outside 1..={n}") }),
            }
        })
        .collect()
}

pub fn spinor(s: &Spinor) -> Value {
    let terms: Vec<Value> =
        s.terms().iter().map(|(idx, c)| json!({ "indices": one_based(idx), "coeff": c.encode() })).collect();
    json!({ "n": s.n(), "terms": terms })
}

pub fn decode_spinor(v: &Value, path: &str) -> Decoded<Spinor> {
    let n = usize_at(field(v, "n", path)?, &format!("{path}.n"))?;
    let terms_path = format!("{path}.terms");
    let mut terms = Vec::new();
    for (k, t) in array(field(v, "terms", path)?, &terms_path)?.iter().enumerate() {
        let p = format!("{terms_path}[{k}]");
        let idx = decode_indices(field(t, "indices", &p)?, &format!("{p}.indices"), n)?;
        let c = C::decode(field(t, "coeff", &p)?, &format!("{p}.coeff"))?;
        terms.push((idx, c));
    }
    Spinor::from_terms(n, &terms).map_err(|e| ScenarioError::InvariantViolation { path: path.into(), message: e.to_string() })
}

pub fn form(f: &FormField) -> Value {
    let terms: Vec<Value> =
        f.terms().map(|(idx, c)| json!({ "indices": one_based(idx), "coeff": c.to_string() })).collect();
    json!({ "n": f.n(), "degree": f.degree(), "terms": terms })
}

/// Decodes a list of `{"indices", "coeff"}` terms into a `k`-form on `ℝⁿ`;
/// coefficients are expressions in `x1..xn`.
pub fn decode_form_terms(v: &Value, path: &str, n: usize, k: usize) -> Decoded<FormField> {
    let mut terms = Vec::new();
    for (t, term) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{t}]");
        let ip = format!("{p}.indices");
        let idx = decode_indices(field(term, "indices", &p)?, &ip, n)?;
        if idx.len() != k {
            return Err(ScenarioError::DimensionMismatch {
                path: ip,
                message: format!("{} indices for a degree-{k} form", idx.len()),
            });
        }
        let cp = format!("{p}.coeff");
        terms.push((idx, decode_ratfun(field(term, "coeff", &p)?, &cp, n)?));
    }
    FormField::from_terms(n, k, terms).map_err(|e| ScenarioError::InvariantViolation { path: path.into(), message: e.to_string() })
}

pub fn decode_form(v: &Value, path: &str) -> Decoded<FormField> {
    let n = usize_at(field(v, "n", path)?, &format!("{path}.n"))?;
    let k = usize_at(field(v, "degree", path)?, &format!("{path}.degree"))?;
    decode_form_terms(field(v, "terms", path)?, &format!("{path}.terms"), n, k)
}

pub fn decode_ratfun(v: &Value, path: &str, nvars: usize) -> Decoded<RatFun> {
    match v {
        Value::String(s) => parse_ratfun(s, nvars).map_err(|e| syntax(path, e.to_string())),
        Value::Number(k) if k.is_i64() => Ok(RatFun::from_q(&Q::from_integer(k.as_i64().unwrap().into()))),
        _ => Err(syntax(path, "expected an expression string")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gck_core::dirac::random_dirac_c;
    use gck_core::gcs::random_gcs;
    use gck_core::sample;
    use gck_core::spinor::spinor_from_dirac;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(5)
    }

    #[test]
    fn scalars() {
        let x = Q::new((-3).into(), 4.into());
        assert_eq!(x.encode(), json!("-3/4"));
        assert_eq!(Q::decode(&json!("-3/4"), "$").unwrap(), x);
        assert_eq!(Q::decode(&json!(7), "$").unwrap(), Q::from_integer(7.into()));
        let z = cq(x.clone(), Q::one());
        assert_eq!(C::decode(&z.encode(), "$").unwrap(), z);
        let err = Q::decode(&json!("1/0"), "a[2]").unwrap_err();
        assert!(err.to_string().contains("a[2]"), "{err}");
    }

    #[test]
    fn objects_round_trip() {
        let mut rng = rng();
        for _ in 0..20 {
            let d = rand::Rng::gen_range(&mut rng, 0..=4);
            let s = sample::random_subspace(&mut rng, 4, d);
            assert_eq!(decode_subspace::<Q>(&subspace(&s), "$").unwrap(), s);
            let sc = sample::random_subspace_c(&mut rng, 4, d);
            assert_eq!(decode_subspace::<C>(&subspace(&sc), "$").unwrap(), sc);

            let j = random_gcs(&mut rng, 2);
            let sp = j.split();
            assert_eq!(decode_splitting::<Q>(&splitting(&sp), "$").unwrap(), sp);
            assert_eq!(decode_matrix::<Q>(&matrix(j.matrix()), "$").unwrap(), *j.matrix());

            let mu = spinor_from_dirac(&random_dirac_c(&mut rng, 3)).unwrap();
            assert_eq!(decode_spinor(&spinor(&mu), "$").unwrap(), mu);
        }
    }

    #[test]
    fn forms_round_trip() {
        let n = 3;
        let f = FormField::from_terms(
            n,
            2,
            vec![(vec![0, 2], parse_ratfun("x1^2 - 1/2*x3", n).unwrap()), (vec![1, 2], parse_ratfun("1/(1 + x2)", n).unwrap())],
        )
        .unwrap();
        assert_eq!(decode_form(&form(&f), "$").unwrap(), f);
    }

    #[test]
    fn ragged_matrix_names_row() {
        let err = decode_matrix::<Q>(&json!([["1", "0"], ["0"]]), "structure.raw").unwrap_err();
        assert!(matches!(err, ScenarioError::DimensionMismatch { ref path, .. } if path == "structure.raw[1]"), "{err}");
    }
}
