//! Pointwise generalized complex structures on `V ⊕ V*`.
//!
//! `J` acts on columns `(X; ξ)` with the vector block first and splits as
//! `[[φ, π♯], [σ♭, -φ*]]`. A 2-form `ω` enters through `ω♭X = ι_Xω`, so
//! `ω = e¹∧e²` has `ω♭ e1 = e²`.

use rand::Rng;

use crate::dirac::{pairing_coords, pairing_matrix, DiracStructure};
use crate::error::{Error, Result};
use crate::field::{i_unit, Field, C, Q};
use crate::matrix::{dot, Matrix};
use crate::sample;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GCStructure<F> {
    n: usize,
    j: Matrix<F>,
}

/// The blocks of `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Splitting<F> {
    pub phi: Matrix<F>,
    pub pi_sharp: Matrix<F>,
    pub sigma_flat: Matrix<F>,
}

/// Outcome of the three square identities `φ² + π♯σ♭ = -id`,
/// `φπ♯ = π♯φ*`, `φ*σ♭ = σ♭φ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareReport<F> {
    pub phi_squared: bool,
    pub phi_pi: bool,
    pub sigma_phi: bool,
    pub residuals: [Matrix<F>; 3],
}

impl<F> SquareReport<F> {
    pub fn all_hold(&self) -> bool {
        self.phi_squared && self.phi_pi && self.sigma_phi
    }
}

/// Checks `J² = -id` and `Jᵀ P J = P` for the pairing Gram matrix `P`.
pub fn validate_gcs<F: Field>(j: Matrix<F>) -> Result<GCStructure<F>> {
    if !j.is_square() || j.rows() % 2 != 0 {
        return Err(Error::Dimension(format!(
            "J must be square of even size, got {}x{}",
            j.rows(),
            j.cols()
        )));
    }
    let size = j.rows();
    let sq = &j.pow2() + &Matrix::identity(size);
    if !sq.is_zero() {
        return Err(Error::NotComplex { residual: sq.to_string() });
    }
    let p = pairing_matrix::<F>(size / 2);
    let orth = &(&(&j.transpose() * &p) * &j) - &p;
    if !orth.is_zero() {
        return Err(Error::NotOrthogonal { residual: orth.to_string() });
    }
    Ok(GCStructure { n: size / 2, j })
}

impl<F: Field> GCStructure<F> {
    /// Half the size of `J`, i.e. `dim V`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.j
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.j
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.j.mul_vec(v)
    }

    pub fn split(&self) -> Splitting<F> {
        let n = self.n;
        Splitting {
            phi: self.j.block(0, 0, n, n),
            pi_sharp: self.j.block(0, n, n, n),
            sigma_flat: self.j.block(n, 0, n, n),
        }
    }

    /// Conjugates by a pairing-preserving map `P`: `P J P⁻¹`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        let pinv = p.inverse().ok_or_else(|| Error::Dimension("conjugator is singular".into()))?;
        validate_gcs(&(p * &self.j) * &pinv)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> GCStructure<G> {
        GCStructure { n: self.n, j: self.j.map(f) }
    }

    /// Direct sum `J₁ ⊕ J₂` on `(V₁ ⊕ V₂) ⊕ (V₁* ⊕ V₂*)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.split(), other.split());
        Splitting {
            phi: Matrix::block_diag(&a.phi, &b.phi),
            pi_sharp: Matrix::block_diag(&a.pi_sharp, &b.pi_sharp),
            sigma_flat: Matrix::block_diag(&a.sigma_flat, &b.sigma_flat),
        }
        .assemble()
        .expect("direct sum of generalized complex structures")
    }
}

impl<F: Field> Splitting<F> {
    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    /// `[[φ, π♯], [σ♭, -φ*]]`, validated.
    pub fn assemble(&self) -> Result<GCStructure<F>> {
        validate_gcs(self.assemble_raw())
    }

    pub fn assemble_raw(&self) -> Matrix<F> {
        Matrix::from_blocks(&self.phi, &self.pi_sharp, &self.sigma_flat, &-&self.phi.transpose())
    }

    pub fn square_identities(&self) -> SquareReport<F> {
        let n = self.n();
        let phit = self.phi.transpose();
        let r1 = &(&self.phi.pow2() + &(&self.pi_sharp * &self.sigma_flat)) + &Matrix::identity(n);
        let r2 = &(&self.phi * &self.pi_sharp) - &(&self.pi_sharp * &phit);
        let r3 = &(&phit * &self.sigma_flat) - &(&self.sigma_flat * &self.phi);
        SquareReport {
            phi_squared: r1.is_zero(),
            phi_pi: r2.is_zero(),
            sigma_phi: r3.is_zero(),
            residuals: [r1, r2, r3],
        }
    }
}

/// `ω♭` from the matrix `W[i][j] = ω(e_i, e_j)`.
pub fn flat_of_form<F: Field>(w: &Matrix<F>) -> Matrix<F> {
    w.transpose()
}

/// `φ = 0`, `σ♭ = ω♭`, `π♯ = -ω♭⁻¹`.
pub fn from_symplectic<F: Field>(omega_flat: &Matrix<F>) -> Result<GCStructure<F>> {
    if !omega_flat.is_skew() {
        return Err(Error::NotSkew);
    }
    let inv = omega_flat.inverse().ok_or(Error::DegenerateForm)?;
    let n = omega_flat.rows();
    Splitting { phi: Matrix::zeros(n, n), pi_sharp: -&inv, sigma_flat: omega_flat.clone() }.assemble()
}

/// `φ = j`, `π = σ = 0`.
pub fn from_complex<F: Field>(j: &Matrix<F>) -> Result<GCStructure<F>> {
    if !j.is_square() || !(&j.pow2() + &Matrix::identity(j.rows())).is_zero() {
        return Err(Error::NotAlmostComplex);
    }
    let n = j.rows();
    Splitting { phi: j.clone(), pi_sharp: Matrix::zeros(n, n), sigma_flat: Matrix::zeros(n, n) }.assemble()
}

/// `J = [[j, π♯], [0, -j*]]`.
pub fn from_holomorphic_poisson<F: Field>(j: &Matrix<F>, pi_sharp: &Matrix<F>) -> Result<GCStructure<F>> {
    if !j.is_square() || !(&j.pow2() + &Matrix::identity(j.rows())).is_zero() {
        return Err(Error::NotAlmostComplex);
    }
    if !pi_sharp.is_skew() || pi_sharp.rows() != j.rows() {
        return Err(Error::NotSkew);
    }
    if !(&(j * pi_sharp) - &(pi_sharp * &j.transpose())).is_zero() {
        return Err(Error::IncompatiblePair);
    }
    let n = j.rows();
    Splitting { phi: j.clone(), pi_sharp: pi_sharp.clone(), sigma_flat: Matrix::zeros(n, n) }.assemble()
}

/// `L± = ker(J ∓ i·id)` in the complexification.
pub fn eigenbundles(j: &GCStructure<Q>) -> (DiracStructure<C>, DiracStructure<C>) {
    let jc: Matrix<C> = j.matrix().lift();
    let size = jc.rows();
    let shift = Matrix::identity(size).scale(&i_unit());
    let plus = Subspace::kernel(&(&jc - &shift));
    let minus = Subspace::kernel(&(&jc + &shift));
    (
        DiracStructure::new(plus).expect("+i eigenbundle of an orthogonal J is maximal isotropic"),
        DiracStructure::new(minus).expect("-i eigenbundle of an orthogonal J is maximal isotropic"),
    )
}

/// `{f, g} = 2⟨J df, dg⟩` at a point, from covectors `df`, `dg`.
pub fn pointwise_poisson<F: Field>(j: &GCStructure<F>, df: &[F], dg: &[F]) -> F {
    let n = j.n();
    let mut u = vec![F::zero(); n];
    u.extend_from_slice(df);
    let mut v = vec![F::zero(); n];
    v.extend_from_slice(dg);
    F::from_i64(2) * pairing_coords(&j.apply(&u), &v)
}

/// `π(df, dg) = dg(π♯ df)` from the splitting.
pub fn bivector_pairing<F: Field>(s: &Splitting<F>, df: &[F], dg: &[F]) -> F {
    dot(dg, &s.pi_sharp.mul_vec(df))
}

/// Pairing-preserving map `diag(A, A⁻ᵀ)`.
pub fn a_block<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let ait = a.inverse().expect("A must be invertible").transpose();
    Matrix::block_diag(a, &ait)
}

/// B-field shear `[[I, 0], [B, I]]`, `B` skew.
pub fn b_shear<F: Field>(b: &Matrix<F>) -> Matrix<F> {
    let n = b.rows();
    Matrix::from_blocks(&Matrix::identity(n), &Matrix::zeros(n, n), b, &Matrix::identity(n))
}

/// β-shear `[[I, β], [0, I]]`, `β` skew.
pub fn beta_shear<F: Field>(beta: &Matrix<F>) -> Matrix<F> {
    let n = beta.rows();
    Matrix::from_blocks(&Matrix::identity(n), beta, &Matrix::zeros(n, n), &Matrix::identity(n))
}

/// Standard rotation `j e_{2k} = e_{2k+1}, j e_{2k+1} = -e_{2k}` on `ℝ^{2m}`.
pub fn standard_complex(m: usize) -> Matrix<Q> {
    let mut j = Matrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        j[(2 * k + 1, 2 * k)] = Q::one();
        j[(2 * k, 2 * k + 1)] = -Q::one();
    }
    j
}

/// `ω♭` for `ω = Σ e^{2k+1}∧e^{2k+2}` on `ℝ^{2m}`.
pub fn standard_symplectic_flat(m: usize) -> Matrix<Q> {
    // ω♭ e_{2k} = e^{2k+1}, ω♭ e_{2k+1} = -e^{2k}
    standard_complex(m)
}

/// One of the canonical building blocks, chosen at random.
fn random_block<R: Rng + ?Sized>(rng: &mut R, m: usize) -> GCStructure<Q> {
    match rng.gen_range(0..3) {
        0 => from_complex(&standard_complex(m)).expect("standard complex structure"),
        1 => {
            let scale = loop {
                let s = sample::small_frac(rng, 3, 2);
                if !s.is_zero() {
                    break s;
                }
            };
            from_symplectic(&standard_symplectic_flat(m).scale(&scale)).expect("standard symplectic form")
        }
        _ if m >= 2 => {
            let (j, pi) = holomorphic_poisson_base(rng, m);
            from_holomorphic_poisson(&j, &pi).expect("compatible holomorphic Poisson pair")
        }
        _ => from_complex(&standard_complex(m)).expect("standard complex structure"),
    }
}

/// A compatible `(j, π♯)` with `j` standard on `ℝ^{2m}`: a random real
/// combination of the real and imaginary parts of `∂z_a ∧ ∂z_b`.
pub fn holomorphic_poisson_base<R: Rng + ?Sized>(rng: &mut R, m: usize) -> (Matrix<Q>, Matrix<Q>) {
    let j = standard_complex(m);
    let mut pi = Matrix::zeros(2 * m, 2 * m);
    for a in 0..m {
        for b in a + 1..m {
            let (re, im) = (sample::small_q(rng, 2), sample::small_q(rng, 2));
            let add = |pi: &mut Matrix<Q>, u: usize, v: usize, c: &Q| {
                pi[(u, v)] = pi[(u, v)].clone() + c.clone();
                pi[(v, u)] = pi[(v, u)].clone() - c.clone();
            };
            let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            // Re(∂za∧∂zb) ∝ ∂xa∧∂xb − ∂ya∧∂yb, Im ∝ ∂xa∧∂yb + ∂ya∧∂xb
            add(&mut pi, xa, xb, &re);
            add(&mut pi, ya, yb, &-re.clone());
            add(&mut pi, xa, yb, &im);
            add(&mut pi, ya, xb, &im);
        }
    }
    (j, pi)
}

/// Random pairing-preserving map built from A-blocks and both shears.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<Q> {
    let mut p = Matrix::identity(2 * n);
    for _ in 0..rng.gen_range(1..=3) {
        let step = match rng.gen_range(0..3) {
            0 => a_block(&sample::random_invertible(rng, n, 1)),
            1 => b_shear(&sample::random_skew(rng, n, 1)),
            _ => beta_shear(&sample::random_skew(rng, n, 1)),
        };
        p = &step * &p;
    }
    p
}

/// Random valid structure on `ℝ^{2m}`: a direct sum of canonical blocks
/// conjugated by a random pairing-preserving map.
pub fn random_gcs<R: Rng + ?Sized>(rng: &mut R, m: usize) -> GCStructure<Q> {
    assert!(m >= 1);
    let mut remaining = m;
    let mut acc: Option<GCStructure<Q>> = None;
    while remaining > 0 {
        let size = rng.gen_range(1..=remaining);
        let block = random_block(rng, size);
        acc = Some(match acc {
            None => block,
            Some(a) => a.direct_sum(&block),
        });
        remaining -= size;
    }
    let base = acc.expect("m >= 1");
    base.conjugate(&random_orthogonal(rng, 2 * m)).expect("orthogonal conjugation preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{c, q};
    use crate::matrix::int_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn omega2() -> Matrix<Q> {
        flat_of_form(&int_matrix(&[&[0, 1], &[-1, 0]]))
    }

    #[test]
    fn flat_convention() {
        // ω = e¹∧e²: ω♭ e1 = e²
        assert_eq!(omega2().col(0), vec![q(0), q(1)]);
        assert_eq!(standard_symplectic_flat(1), omega2());
    }

    #[test]
    fn validate_examples() {
        assert!(from_symplectic(&omega2()).is_ok());
        assert!(from_complex(&standard_complex(1)).is_ok());
        assert!(matches!(validate_gcs(Matrix::<Q>::identity(2)), Err(Error::NotComplex { .. })));
        // J² = -id but not orthogonal
        let a = Matrix::from_rows(2, vec![vec![q(0), q(-2)], vec![crate::field::qf(1, 2), q(0)]]);
        let bad = Matrix::block_diag(&a, &a);
        assert!(bad.pow2() == -&Matrix::identity(4));
        assert!(matches!(validate_gcs(bad), Err(Error::NotOrthogonal { .. })));
        assert!(validate_gcs(Matrix::<Q>::identity(3)).is_err());
    }

    #[test]
    fn split_examples() {
        let s = from_symplectic(&omega2()).unwrap().split();
        assert!(s.phi.is_zero());
        // π♯ e¹ = e2, π♯ e² = -e1
        assert_eq!(s.pi_sharp, int_matrix(&[&[0, -1], &[1, 0]]));
        // σ♭ e1 = e², σ♭ e2 = -e¹
        assert_eq!(s.sigma_flat, int_matrix(&[&[0, -1], &[1, 0]]));
        let s = from_complex(&standard_complex(1)).unwrap().split();
        assert!(s.pi_sharp.is_zero() && s.sigma_flat.is_zero());
        let j = random_gcs(&mut ChaCha8Rng::seed_from_u64(3), 2);
        assert_eq!(j.split().assemble().unwrap(), j);
    }

    #[test]
    fn square_identity_examples() {
        assert!(from_symplectic(&omega2()).unwrap().split().square_identities().all_hold());
        assert!(from_complex(&standard_complex(1)).unwrap().split().square_identities().all_hold());
        let mut s = from_symplectic(&omega2()).unwrap().split();
        s.pi_sharp = s.pi_sharp.scale(&q(2));
        let r = s.square_identities();
        assert!(!r.phi_squared);
        assert!(r.phi_pi && r.sigma_phi);
    }

    #[test]
    fn eigenbundle_examples() {
        let (plus, minus) = eigenbundles(&from_complex(&standard_complex(1)).unwrap());
        let expected = Subspace::span(4, vec![vec![c(1, 0), c(0, -1), c(0, 0), c(0, 0)], vec![c(0, 0), c(0, 0), c(1, 0), c(0, -1)]]);
        assert_eq!(plus.space(), &expected);
        assert_eq!(minus, plus.conj());

        // J(X + iω♭X) = -i(X + iω♭X), so the +i bundle is {X - iι_Xω}
        let (plus, _) = eigenbundles(&from_symplectic(&omega2()).unwrap());
        let expected = Subspace::span(4, vec![vec![c(1, 0), c(0, 0), c(0, 0), c(0, -1)], vec![c(0, 0), c(1, 0), c(0, 1), c(0, 0)]]);
        assert_eq!(plus.space(), &expected);
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(from_symplectic(&Matrix::<Q>::zeros(2, 2)), Err(Error::DegenerateForm)));
        assert!(matches!(from_complex(&Matrix::<Q>::identity(2)), Err(Error::NotAlmostComplex)));
        let pi = int_matrix(&[&[0, 1], &[-1, 0]]);
        assert!(matches!(
            from_holomorphic_poisson(&standard_complex(1), &pi),
            Err(Error::IncompatiblePair)
        ));
        assert_eq!(
            from_holomorphic_poisson(&standard_complex(2), &Matrix::zeros(4, 4)).unwrap(),
            from_complex(&standard_complex(2)).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (j, pi) = holomorphic_poisson_base(&mut rng, 2);
        assert!(from_holomorphic_poisson(&j, &pi).is_ok());
        // ∂z1∧∂z2 real part: ∂x1∧∂x2 − ∂y1∧∂y2 in (x1, y1, x2, y2) ordering
        let re = int_matrix(&[&[0, 0, 1, 0], &[0, 0, 0, -1], &[-1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(from_holomorphic_poisson(&standard_complex(2), &re).is_ok());
    }

    #[test]
    fn pointwise_poisson_examples() {
        let j = from_symplectic(&omega2()).unwrap();
        assert_eq!(pointwise_poisson(&j, &[q(1), q(0)], &[q(0), q(1)]), q(1));
        assert_eq!(pointwise_poisson(&j, &[q(2), q(3)], &[q(2), q(3)]), q(0));
        let jc = from_complex(&standard_complex(1)).unwrap();
        assert_eq!(pointwise_poisson(&jc, &[q(1), q(0)], &[q(0), q(1)]), q(0));
    }

    #[test]
    fn random_structures_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=3 {
            for _ in 0..10 {
                let j = random_gcs(&mut rng, m);
                assert_eq!(j.n(), 2 * m);
                assert!(j.split().square_identities().all_hold());
            }
        }
    }
}
