//! Generalized Kähler pairs and their restriction to submanifolds.

use rand::Rng;

use crate::dirac::{pairing_matrix, pull_back, DiracStructure};
use crate::error::{Error, Result};
use crate::field::{is_positive, Field, C, Q};
use crate::gcs::{a_block, b_shear, beta_shear, eigenbundles, from_complex, from_symplectic, standard_complex, GCStructure};
use crate::induction::{b_spaces, theorem_main_verdict, InducedStructure, LinearSubmanifold};
use crate::matrix::{dot, Matrix};
use crate::sample;
use crate::subspace::Subspace;

fn check_pair(j1: &GCStructure<Q>, j2: &GCStructure<Q>) -> Result<()> {
    if j1.n() != j2.n() {
        return Err(Error::AmbientMismatch(j1.n(), j2.n()));
    }
    Ok(())
}

/// `L¹₊∩L²₊, L¹₊∩L²₋, L¹₋∩L²₊, L¹₋∩L²₋`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourSplit {
    pub pieces: [Subspace<C>; 4],
}

impl FourSplit {
    pub fn dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.pieces[k].dim())
    }

    /// The four pieces span and the sum is direct.
    pub fn is_decomposition(&self) -> bool {
        let ambient = self.pieces[0].ambient();
        let mut total = Subspace::zero(ambient);
        for p in &self.pieces {
            total = total.sum(p).expect("same ambient");
        }
        total.is_full() && self.dims().iter().sum::<usize>() == ambient
    }
}

#[derive(Clone, Debug)]
pub struct CommuteReport {
    pub by_commutator: bool,
    pub by_decomposition: bool,
    pub split: FourSplit,
}

impl CommuteReport {
    pub fn agree(&self) -> bool {
        self.by_commutator == self.by_decomposition
    }
}

pub fn four_split(j1: &GCStructure<Q>, j2: &GCStructure<Q>) -> FourSplit {
    let (p1, m1) = eigenbundles(j1);
    let (p2, m2) = eigenbundles(j2);
    let cap = |a: &DiracStructure<C>, b: &DiracStructure<C>| a.space().intersect(b.space()).expect("same ambient");
    FourSplit { pieces: [cap(&p1, &p2), cap(&p1, &m2), cap(&m1, &p2), cap(&m1, &m2)] }
}

pub fn commute_decomposition(j1: &GCStructure<Q>, j2: &GCStructure<Q>) -> Result<CommuteReport> {
    check_pair(j1, j2)?;
    let by_commutator = j1.matrix().commutator(j2.matrix()).is_zero();
    let split = four_split(j1, j2);
    Ok(CommuteReport { by_commutator, by_decomposition: split.is_decomposition(), split })
}

/// Gram matrix of `x ↦ ⟨x, J₁J₂x⟩`.
pub fn metric_gram(j1: &GCStructure<Q>, j2: &GCStructure<Q>) -> Matrix<Q> {
    &pairing_matrix::<Q>(j1.n()) * &(j1.matrix() * j2.matrix())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricReport {
    pub symmetric: bool,
    pub positive_definite: bool,
    /// Diagonal of the `LDLᵀ` factorization up to the first non-positive pivot.
    pub pivots: Vec<Q>,
    /// A nonzero `x` with `⟨x, Gx⟩ ≤ 0`, and that value.
    pub witness: Option<(Vec<Q>, Q)>,
}

/// Exact `LDLᵀ` of a symmetric matrix; stops at the first pivot `≤ 0` and
/// returns `x` with `xᵀSx` equal to that pivot.
pub fn ldl_definiteness(s: &Matrix<Q>) -> (Vec<Q>, Option<(Vec<Q>, Q)>) {
    let n = s.rows();
    let mut l: Matrix<Q> = Matrix::identity(n);
    let mut d: Vec<Q> = Vec::with_capacity(n);
    for k in 0..n {
        let dk = (0..k).fold(s[(k, k)].clone(), |acc, j| acc - l[(k, j)].clone() * l[(k, j)].clone() * d[j].clone());
        if !is_positive(&dk) {
            // back-substitute Lᵀx = e_k on the leading block
            let mut x = vec![Q::zero(); n];
            x[k] = Q::one();
            for i in (0..k).rev() {
                x[i] = -(i + 1..=k).fold(Q::zero(), |acc, r| acc + l[(r, i)].clone() * x[r].clone());
            }
            d.push(dk.clone());
            return (d, Some((x, dk)));
        }
        for i in k + 1..n {
            let v = (0..k).fold(s[(i, k)].clone(), |acc, j| acc - l[(i, j)].clone() * l[(k, j)].clone() * d[j].clone());
            l[(i, k)] = v / dk.clone();
        }
        d.push(dk);
    }
    (d, None)
}

pub fn metric_check(j1: &GCStructure<Q>, j2: &GCStructure<Q>) -> Result<MetricReport> {
    check_pair(j1, j2)?;
    if !j1.matrix().commutator(j2.matrix()).is_zero() {
        return Err(Error::NotCommuting);
    }
    let g = metric_gram(j1, j2);
    let symmetric = g.is_symmetric();
    if !symmetric {
        return Ok(MetricReport { symmetric, positive_definite: false, pivots: vec![], witness: None });
    }
    let (pivots, witness) = ldl_definiteness(&g);
    Ok(MetricReport { symmetric, positive_definite: witness.is_none(), pivots, witness })
}

/// Commuting pair with positive-definite `⟨x, J₁J₂x⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KahlerPair {
    j1: GCStructure<Q>,
    j2: GCStructure<Q>,
}

impl KahlerPair {
    pub fn new(j1: GCStructure<Q>, j2: GCStructure<Q>) -> Result<Self> {
        if !metric_check(&j1, &j2)?.positive_definite {
            return Err(Error::IncompatiblePair);
        }
        Ok(KahlerPair { j1, j2 })
    }

    pub fn first(&self) -> &GCStructure<Q> {
        &self.j1
    }

    pub fn second(&self) -> &GCStructure<Q> {
        &self.j2
    }

    pub fn conjugate(&self, p: &Matrix<Q>) -> Result<Self> {
        Self::new(self.j1.conjugate(p)?, self.j2.conjugate(p)?)
    }
}

/// `(J_j, J_{−ω})` for the standard `j` and `ω = Σ e^{2k-1}∧e^{2k}` on `ℝ^{2m}`.
/// With `π♯ = −ω♭⁻¹` the pair `(J_j, J_ω)` is negative definite.
pub fn standard_kahler_pair(m: usize) -> KahlerPair {
    let j = standard_complex(m);
    let flat = crate::gcs::standard_symplectic_flat(m);
    KahlerPair::new(from_complex(&j).unwrap(), from_symplectic(&-&flat).unwrap())
        .expect("standard pair is positive definite")
}

/// Standard pair conjugated by a random A-block and B/β shears.
pub fn random_kahler_pair<R: Rng + ?Sized>(rng: &mut R, m: usize) -> KahlerPair {
    let n = 2 * m;
    let mut pair = standard_kahler_pair(m);
    if rng.gen_bool(0.7) {
        pair = pair.conjugate(&b_shear(&sample::random_skew(rng, n, 2))).unwrap();
    }
    if rng.gen_bool(0.5) {
        pair = pair.conjugate(&a_block(&sample::random_invertible(rng, n, 2))).unwrap();
    }
    if rng.gen_bool(0.3) {
        pair = pair.conjugate(&beta_shear(&sample::random_skew(rng, n, 1))).unwrap();
    }
    pair
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LalgReport {
    /// The four `s((L¹∩L²)∩B_ℂ)` span `TN⊕T*N`.
    pub span: bool,
    /// `s(B∩J₁B∩J₂B∩J₁J₂B) = TN⊕T*N`.
    pub section_image: bool,
    /// `B = B∩J₁B∩J₂B∩J₁J₂B + B⊥`.
    pub b_decomposition: bool,
    /// `J₁B⊥∩B ⊆ B⊥`, `J₂B⊥∩B ⊆ B⊥`, `B∩J₁J₂B⊥ ⊆ B⊥`.
    pub containments: [bool; 3],
    /// `B ∩ (J₁B⊥ + J₂B⊥ + J₁J₂B⊥) ⊆ B⊥`, the form before splitting the sum.
    pub sum_containment: bool,
}

impl LalgReport {
    pub fn values(&self) -> [bool; 4] {
        [self.span, self.section_image, self.b_decomposition, self.containments.iter().all(|&c| c)]
    }

    pub fn all_agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

fn c_space(s: &Subspace<Q>) -> Subspace<C> {
    s.map_field(C::from_q)
}

fn quadruple(j1: &GCStructure<Q>, j2: &GCStructure<Q>, b: &Subspace<Q>) -> Result<Subspace<Q>> {
    let j12 = j1.matrix() * j2.matrix();
    b.intersect(&b.map(j1.matrix())?)?.intersect(&b.map(j2.matrix())?)?.intersect(&b.map(&j12)?)
}

pub fn lalg_conditions(j1: &GCStructure<Q>, j2: &GCStructure<Q>, w: &LinearSubmanifold<Q>) -> Result<LalgReport> {
    check_pair(j1, j2)?;
    if w.ambient_n() != j1.n() {
        return Err(Error::AmbientMismatch(w.ambient_n(), j1.n()));
    }
    let (b, bp) = b_spaces(w);
    let s = w.s_matrix();
    let k2 = 2 * w.dim();

    let bc = c_space(&b);
    let sc: Matrix<C> = s.lift();
    let mut total = Subspace::zero(k2);
    for piece in &four_split(j1, j2).pieces {
        total = total.sum(&piece.intersect(&bc)?.map(&sc)?)?;
    }
    let span = total.is_full();

    let quad = quadruple(j1, j2, &b)?;
    let section_image = quad.map(&s)?.is_full();
    let b_decomposition = quad.sum(&bp)? == b;

    let j12 = j1.matrix() * j2.matrix();
    let contained = |m: &Matrix<Q>| -> Result<bool> { Ok(bp.map(m)?.intersect(&b)?.is_subspace_of(&bp)) };
    let containments = [contained(j1.matrix())?, contained(j2.matrix())?, contained(&j12)?];
    let sum = bp.map(j1.matrix())?.sum(&bp.map(j2.matrix())?)?.sum(&bp.map(&j12)?)?;
    let sum_containment = sum.intersect(&b)?.is_subspace_of(&bp);
    Ok(LalgReport { span, section_image, b_decomposition, containments, sum_containment })
}

/// `B ∩ J₁J₂B⊥ ⊆ B⊥`.
pub fn product_containment(j1: &GCStructure<Q>, j2: &GCStructure<Q>, w: &LinearSubmanifold<Q>) -> Result<bool> {
    let (b, bp) = b_spaces(w);
    let j12 = j1.matrix() * j2.matrix();
    Ok(bp.map(&j12)?.intersect(&b)?.is_subspace_of(&bp))
}

#[derive(Clone, Debug)]
pub struct InducedPair {
    pub first: InducedStructure<Q>,
    pub second: InducedStructure<Q>,
    pub commute: bool,
    pub metric: MetricReport,
    /// `B ∩ J₁J₂B⊥ ⊆ B⊥` on the ambient pair.
    pub product_containment: bool,
}

impl InducedPair {
    pub fn is_kahler(&self) -> bool {
        self.commute && self.metric.positive_definite
    }
}

fn induced_or_fail(j: &GCStructure<Q>, w: &LinearSubmanifold<Q>, which: &str) -> Result<InducedStructure<Q>> {
    theorem_main_verdict(j, w)?
        .induced
        .ok_or_else(|| Error::NotAdmissible(format!("submanifold is not admissible for {which}")))
}

pub fn induced_pair(j1: &GCStructure<Q>, j2: &GCStructure<Q>, w: &LinearSubmanifold<Q>) -> Result<InducedPair> {
    check_pair(j1, j2)?;
    let first = induced_or_fail(j1, w, "J1")?;
    let second = induced_or_fail(j2, w, "J2")?;
    let (a, b) = (&first.j_prime, &second.j_prime);
    let commute = a.matrix().commutator(b.matrix()).is_zero();
    let metric = if commute {
        metric_check(a, b)?
    } else {
        MetricReport { symmetric: false, positive_definite: false, pivots: vec![], witness: None }
    };
    Ok(InducedPair { first, second, commute, metric, product_containment: product_containment(j1, j2, w)? })
}

#[derive(Clone, Debug)]
pub struct DirectnessReport {
    pub direct: bool,
    /// `s((L¹±∩L²±)∩B_ℂ) = F¹±∩F²±` for the four sign pairs.
    pub identities: [bool; 4],
}

impl DirectnessReport {
    pub fn holds(&self) -> bool {
        self.direct && self.identities.iter().all(|&b| b)
    }
}

pub fn directness_check(j1: &GCStructure<Q>, j2: &GCStructure<Q>, w: &LinearSubmanifold<Q>) -> Result<DirectnessReport> {
    check_pair(j1, j2)?;
    for (j, which) in [(j1, "J1"), (j2, "J2")] {
        if !theorem_main_verdict(j, w)?.admissible {
            return Err(Error::NotAdmissible(format!("submanifold is not admissible for {which}")));
        }
    }
    let (b, _) = b_spaces(w);
    let bc = c_space(&b);
    let sc: Matrix<C> = w.s_matrix().lift();
    let h: Matrix<C> = w.inclusion().lift();
    let (p1, m1) = eigenbundles(j1);
    let (p2, m2) = eigenbundles(j2);
    let f = |l: &DiracStructure<C>| pull_back(&h, l).map(DiracStructure::into_space);
    let (fp1, fm1, fp2, fm2) = (f(&p1)?, f(&m1)?, f(&p2)?, f(&m2)?);
    let targets = [fp1.intersect(&fp2)?, fp1.intersect(&fm2)?, fm1.intersect(&fp2)?, fm1.intersect(&fm2)?];

    let split = four_split(j1, j2);
    let k2 = 2 * w.dim();
    let mut total = Subspace::zero(k2);
    let mut dims = 0;
    let mut identities = [false; 4];
    for (idx, piece) in split.pieces.iter().enumerate() {
        let image = piece.intersect(&bc)?.map(&sc)?;
        dims += image.dim();
        total = total.sum(&image)?;
        identities[idx] = image == targets[idx];
    }
    Ok(DirectnessReport { direct: total.is_full() && dims == k2, identities })
}

/// `⟨x, Gx⟩` evaluated directly, for checking witnesses.
pub fn metric_value(j1: &GCStructure<Q>, j2: &GCStructure<Q>, x: &[Q]) -> Q {
    dot(x, &metric_gram(j1, j2).mul_vec(x))
}
