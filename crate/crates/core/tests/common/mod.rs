#![allow(dead_code)]

use gck_core::field::{qf, Field, Q};
use gck_core::gcs::{
    a_block, b_shear, beta_shear, from_complex, from_holomorphic_poisson, from_symplectic, holomorphic_poisson_base,
    random_gcs, standard_complex, standard_symplectic_flat, GCStructure,
};
use gck_core::induction::{involution_lift, LinearSubmanifold};
use gck_core::matrix::Matrix;
use gck_core::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random structure on ℝ^{2m} and a random tangent space of random dimension.
pub fn random_pair<R: Rng>(rng: &mut R) -> (GCStructure<Q>, LinearSubmanifold<Q>) {
    let m = rng.gen_range(1..=3);
    let j = random_gcs(rng, m);
    let d = rng.gen_range(0..=2 * m);
    (j, LinearSubmanifold::new(sample::random_subspace(rng, 2 * m, d)))
}

/// Canonical block of size `2k` with an involution acting as `±id` on it.
fn base_block<R: Rng>(rng: &mut R, k: usize) -> (GCStructure<Q>, Matrix<Q>) {
    let j = if rng.gen_bool(0.5) {
        from_complex(&standard_complex(k)).unwrap()
    } else {
        from_symplectic(&standard_symplectic_flat(k)).unwrap()
    };
    let sign = if rng.gen_bool(0.5) { Q::one() } else { -Q::one() };
    (j, Matrix::identity(2 * k).scale(&sign))
}

/// A compatible pair `(Ψ, J)` on ℝ^{2m}: a product of canonical blocks with
/// `Ψ = ±id` blockwise (or a swap of two equal blocks), conjugated by an
/// A-block and by shears averaged over `Ψ`.
pub fn involution_pair<R: Rng>(rng: &mut R, m: usize) -> (Matrix<Q>, GCStructure<Q>) {
    let (mut j, mut psi) = if m >= 2 && rng.gen_bool(0.3) {
        let (block, _) = base_block(rng, 1);
        let mut j = block.direct_sum(&block);
        let mut psi = Matrix::zeros(4, 4);
        for i in 0..2 {
            psi[(i, i + 2)] = Q::one();
            psi[(i + 2, i)] = Q::one();
        }
        if m == 3 {
            let (b, p) = base_block(rng, 1);
            j = j.direct_sum(&b);
            psi = Matrix::block_diag(&psi, &p);
        }
        (j, psi)
    } else {
        let mut acc = base_block(rng, 1);
        for _ in 1..m {
            let (b, p) = base_block(rng, 1);
            acc = (acc.0.direct_sum(&b), Matrix::block_diag(&acc.1, &p));
        }
        acc
    };
    let n = 2 * m;
    let a = sample::random_invertible(rng, n, 1);
    let ainv = a.inverse().unwrap();
    j = j.conjugate(&a_block(&a)).unwrap();
    psi = &(&a * &psi) * &ainv;
    let half = qf(1, 2);
    let b = sample::random_skew(rng, n, 2);
    let b = (&b + &(&(&psi.transpose() * &b) * &psi)).scale(&half);
    let beta = sample::random_skew(rng, n, 2);
    let beta = (&beta + &(&(&psi * &beta) * &psi.transpose())).scale(&half);
    j = j.conjugate(&b_shear(&b)).unwrap().conjugate(&beta_shear(&beta)).unwrap();
    debug_assert!(involution_lift(&psi).commutator(j.matrix()).is_zero());
    (psi, j)
}

/// `[[j, π♯], [0, -j*]]` with `j` and `π` transported by a random A-block
/// and a random β-shear, both of which keep the lower-left block zero.
pub fn hol_poisson<R: Rng>(rng: &mut R, m: usize) -> GCStructure<Q> {
    let (j, pi) = holomorphic_poisson_base(rng, m);
    let base = from_holomorphic_poisson(&j, &pi).unwrap();
    let a = sample::random_invertible(rng, 2 * m, 1);
    let mut out = base.conjugate(&a_block(&a)).unwrap();
    if rng.gen_bool(0.5) {
        out = out.conjugate(&beta_shear(&sample::random_skew(rng, 2 * m, 1))).unwrap();
    }
    out
}
