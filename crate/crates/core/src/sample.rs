//! Seeded random generators for exact test corpora.

use rand::Rng;

use crate::field::{cq, Field, C, Q};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Small integer drawn uniformly from `[-range, range]`.
pub fn small_q<R: Rng + ?Sized>(rng: &mut R, range: i64) -> Q {
    Q::from_i64(rng.gen_range(-range..=range))
}

/// Small fraction `a / b` with `b` in `1..=den`.
pub fn small_frac<R: Rng + ?Sized>(rng: &mut R, range: i64, den: i64) -> Q {
    let a = rng.gen_range(-range..=range);
    let b = rng.gen_range(1..=den);
    Q::from_i64(a) * Q::from_i64(b).inv()
}

pub fn small_c<R: Rng + ?Sized>(rng: &mut R, range: i64) -> C {
    cq(small_q(rng, range), small_q(rng, range))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, range: i64) -> Matrix<Q> {
    Matrix::from_fn(rows, cols, |_, _| small_q(rng, range))
}

pub fn random_matrix_c<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, range: i64) -> Matrix<C> {
    Matrix::from_fn(rows, cols, |_, _| small_c(rng, range))
}

pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small_q(rng, range);
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    m
}

pub fn random_skew_c<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> Matrix<C> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small_c(rng, range);
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    m
}

/// Invertible matrix with small entries (rejection sampling).
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> Matrix<Q> {
    loop {
        let m = random_matrix(rng, n, n, range);
        if m.rank() == n {
            return m;
        }
    }
}

/// Subspace of exactly the requested dimension. Half of the draws are
/// coordinate subspaces, which hit degenerate configurations far more often
/// than generic ones.
pub fn random_subspace<R: Rng + ?Sized>(rng: &mut R, ambient: usize, dim: usize) -> Subspace<Q> {
    assert!(dim <= ambient);
    if rng.gen_bool(0.5) {
        let mut idx: Vec<usize> = (0..ambient).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        let rows = idx[..dim]
            .iter()
            .map(|&i| crate::matrix::unit_vec(ambient, i))
            .collect();
        return Subspace::span(ambient, rows);
    }
    loop {
        let s = Subspace::from_rows(&random_matrix(rng, dim, ambient, 2));
        if s.dim() == dim {
            return s;
        }
    }
}

pub fn random_subspace_c<R: Rng + ?Sized>(rng: &mut R, ambient: usize, dim: usize) -> Subspace<C> {
    loop {
        let s = Subspace::from_rows(&random_matrix_c(rng, dim, ambient, 2));
        if s.dim() == dim {
            return s;
        }
    }
}
