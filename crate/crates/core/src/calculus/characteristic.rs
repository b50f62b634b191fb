//! Characteristic distribution and the bialgebroid bivector at a point.

use crate::dirac::pairing_coords;
use crate::field::{i_unit, Field, C, Q};
use crate::gcs::{eigenbundles, GCStructure};
use crate::matrix::{unit_vec, Matrix};
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct CharacteristicReport {
    pub image_pi: Subspace<C>,
    /// `ρ(J·V*)`.
    pub rho_j_cotangent: Subspace<C>,
    /// `ρ(L₊) ∩ ρ(L₋)`.
    pub rho_intersection: Subspace<C>,
    pub distributions_agree: bool,
    /// `-i ρ₋ Ξ⁻¹ ρ₊*`, columns indexed by covectors.
    pub bivector_minus: Matrix<C>,
    /// `i ρ₊ Ξ⁻¹ ρ₋*`.
    pub bivector_plus: Matrix<C>,
    pub bivector_real: bool,
    pub bivector_matches_pi: bool,
    /// The two compositions add up to `2π♯`.
    pub sum_is_twice_pi: bool,
}

impl CharacteristicReport {
    pub fn all_hold(&self) -> bool {
        self.distributions_agree && self.bivector_real && self.bivector_matches_pi && self.sum_is_twice_pi
    }

    pub fn rank(&self) -> usize {
        self.image_pi.dim()
    }
}

fn anchor_rows(space: &Subspace<C>, n: usize) -> Vec<Vec<C>> {
    space.basis_vectors().into_iter().map(|v| v[..n].to_vec()).collect()
}

/// Solves `⟨m, l⟩ = α(ρ l)` for `m ∈ target`, `l ∈ source`, one column per `α = eⁱ`,
/// and returns `ρ(m)` column by column.
fn anchor_of_dual(target: &Subspace<C>, source: &Subspace<C>, n: usize) -> Matrix<C> {
    let ms = target.basis_vectors();
    let ls = source.basis_vectors();
    let gram = Matrix::from_fn(ls.len(), ms.len(), |j, k| pairing_coords(&ms[k], &ls[j]));
    let rho_l = Matrix::from_fn(ls.len(), n, |j, i| ls[j][i].clone());
    let coeffs = &gram.inverse().expect("L₊ and L₋ are dual under the pairing") * &rho_l;
    let rho_m = Matrix::from_cols(n, ms.iter().map(|m| m[..n].to_vec()).collect());
    &rho_m * &coeffs
}

pub fn characteristic_checks(j: &GCStructure<Q>) -> CharacteristicReport {
    let n = j.n();
    let split = j.split();
    let pi: Matrix<C> = split.pi_sharp.lift();
    let jc: Matrix<C> = j.matrix().lift();
    let image_pi = Subspace::image(&pi);
    let rho_j_cotangent = Subspace::span(
        n,
        (0..n).map(|i| jc.mul_vec(&unit_vec(2 * n, n + i))[..n].to_vec()).collect(),
    );
    let (lp, lm) = eigenbundles(j);
    let rho_plus = Subspace::span(n, anchor_rows(lp.space(), n));
    let rho_minus = Subspace::span(n, anchor_rows(lm.space(), n));
    let rho_intersection = rho_plus.intersect(&rho_minus).expect("same ambient");
    let distributions_agree = image_pi == rho_j_cotangent && image_pi == rho_intersection;

    let i = i_unit();
    let bivector_minus = anchor_of_dual(lm.space(), lp.space(), n).scale(&-i.clone());
    let bivector_plus = anchor_of_dual(lp.space(), lm.space(), n).scale(&i);
    let bivector_real = bivector_minus.entries().iter().all(|z| z.im.is_zero());
    let bivector_matches_pi = bivector_minus == pi && bivector_plus == pi;
    let sum_is_twice_pi = &bivector_minus + &bivector_plus == pi.scale(&C::from_i64(2));
    CharacteristicReport {
        image_pi,
        rho_j_cotangent,
        rho_intersection,
        distributions_agree,
        bivector_minus,
        bivector_plus,
        bivector_real,
        bivector_matches_pi,
        sum_is_twice_pi,
    }
}
