mod common;

use gck_core::field::Q;
use gck_core::gcs::{a_block, b_shear, validate_gcs};
use gck_core::induction::{theorem_main_verdict, LinearSubmanifold};
use gck_core::kahler::{
    directness_check, induced_pair, lalg_conditions, product_containment, random_kahler_pair, standard_kahler_pair,
    KahlerPair,
};
use gck_core::matrix::{unit_vec, Matrix};
use gck_core::sample;
use gck_core::subspace::Subspace;
use rand::Rng;

/// Standard pair with a product of complex coordinate lines, moved by a
/// B-shear and an A-block together with the subspace.
fn pair_with_plane<R: Rng>(rng: &mut R, m: usize) -> (KahlerPair, LinearSubmanifold<Q>) {
    let n = 2 * m;
    let mut pair = standard_kahler_pair(m);
    let mut vectors = Vec::new();
    for a in 0..m {
        if rng.gen_bool(0.5) {
            vectors.push(unit_vec(n, 2 * a));
            vectors.push(unit_vec(n, 2 * a + 1));
        }
    }
    let mut w = Subspace::span(n, vectors);
    if rng.gen_bool(0.7) {
        pair = pair.conjugate(&b_shear(&sample::random_skew(rng, n, 2))).unwrap();
    }
    if rng.gen_bool(0.7) {
        let a = sample::random_invertible(rng, n, 2);
        pair = pair.conjugate(&a_block(&a)).unwrap();
        w = w.map(&a).unwrap();
    }
    (pair, LinearSubmanifold::new(w))
}

fn coordinate_subspaces(n: usize) -> Vec<LinearSubmanifold<Q>> {
    (0..1usize << n)
        .map(|mask| {
            let vs = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| unit_vec(n, i)).collect();
            LinearSubmanifold::new(Subspace::span(n, vs))
        })
        .collect()
}

#[test]
fn standard_pair_over_coordinate_subspaces() {
    for m in 1..=2 {
        let pair = standard_kahler_pair(m);
        let (j1, j2) = (pair.first(), pair.second());
        let mut admissible = 0;
        for w in coordinate_subspaces(2 * m) {
            let lalg = lalg_conditions(j1, j2, &w).unwrap();
            assert!(lalg.all_agree(), "{lalg:?}");
            assert!(product_containment(j1, j2, &w).unwrap());
            let both = theorem_main_verdict(j1, &w).unwrap().admissible && theorem_main_verdict(j2, &w).unwrap().admissible;
            if both {
                admissible += 1;
                let ind = induced_pair(j1, j2, &w).unwrap();
                assert!(ind.is_kahler());
                assert!(directness_check(j1, j2, &w).unwrap().holds());
                assert!(lalg.span);
            }
        }
        assert!(admissible >= 2);
    }
}

#[test]
fn standard_pair_and_b_shears() {
    let mut rng = common::rng(21);
    let (mut admissible, mut tried) = (0, 0);
    for t in 0..200 {
        let mut pair = standard_kahler_pair(2);
        if t > 0 {
            pair = pair.conjugate(&b_shear(&sample::random_skew(&mut rng, 4, 2))).unwrap();
        }
        let ws = if t % 10 == 0 {
            coordinate_subspaces(4)
        } else {
            let d = rng.gen_range(0..=4);
            vec![LinearSubmanifold::new(sample::random_subspace(&mut rng, 4, d))]
        };
        for w in ws {
            tried += 1;
            let (j1, j2) = (pair.first(), pair.second());
            let lalg = lalg_conditions(j1, j2, &w).unwrap();
            assert!(lalg.all_agree(), "{lalg:?}");
            let both = theorem_main_verdict(j1, &w).unwrap().admissible && theorem_main_verdict(j2, &w).unwrap().admissible;
            if both {
                admissible += 1;
                let ind = induced_pair(j1, j2, &w).unwrap();
                assert!(ind.is_kahler(), "{:?}", ind.metric);
                assert!(directness_check(j1, j2, &w).unwrap().holds());
                assert!(lalg.span);
            }
        }
    }
    assert!(admissible >= 40 && tried > admissible, "{admissible}/{tried}");
}

#[test]
fn wider_corpus_relations() {
    let mut rng = common::rng(23);
    let (mut admissible, mut split_only, mut not_kahler) = (0, 0, 0);
    for t in 0..240 {
        let m = rng.gen_range(1..=2);
        let (pair, w) = if t % 2 == 0 {
            pair_with_plane(&mut rng, m)
        } else {
            let pair = random_kahler_pair(&mut rng, m);
            let d = rng.gen_range(0..=2 * m);
            (pair, LinearSubmanifold::new(sample::random_subspace(&mut rng, 2 * m, d)))
        };
        let (j1, j2) = (pair.first(), pair.second());
        let lalg = lalg_conditions(j1, j2, &w).unwrap();
        let v = lalg.values();
        assert!(v[0] == v[1] && v[1] == v[2], "{lalg:?}");
        assert_eq!(lalg.sum_containment, lalg.b_decomposition);
        assert!(!v[2] || v[3], "{lalg:?}");
        split_only += (!lalg.all_agree()) as usize;
        assert!(product_containment(j1, j2, &w).unwrap());
        let both = theorem_main_verdict(j1, &w).unwrap().admissible && theorem_main_verdict(j2, &w).unwrap().admissible;
        if both {
            admissible += 1;
            let ind = induced_pair(j1, j2, &w).unwrap();
            if lalg.span {
                assert!(ind.is_kahler(), "{:?}", ind.metric);
                assert!(directness_check(j1, j2, &w).unwrap().holds());
            } else {
                not_kahler += (!ind.commute) as usize;
            }
        }
    }
    assert!(admissible >= 60, "{admissible}");
    // The three separate containments do not imply the decomposition of B.
    assert!(split_only > 0);
    eprintln!("admissible {admissible}, containments without decomposition {split_only}, non-commuting induced pairs {not_kahler}");
}

fn parse(rows: &str) -> Matrix<Q> {
    let data: Vec<Vec<i64>> = rows.split(';').map(|r| r.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    Matrix::from_fn(data.len(), data[0].len(), |i, k| Q::from_integer(data[i][k].into()))
}

/// A Kähler pair on ℝ⁴ and the plane spanned by e₁, e₃: admissible for both
/// structures, separate containments all hold, yet the induced structures do
/// not commute.
#[test]
fn admissible_plane_with_non_commuting_induced_pair() {
    let j1 = validate_gcs(parse(
        "1,0,0,1,0,2,2,0;1,1,1,0,-2,0,2,-2;0,0,1,-1,-2,-2,0,0;0,0,0,1,0,2,0,0;\
         0,0,1,0,-1,-1,0,0;0,0,0,-1,0,-1,0,0;-1,0,0,0,0,-1,-1,0;0,1,0,0,-1,0,1,-1",
    ))
    .unwrap();
    let j2 = validate_gcs(parse(
        "3,3,-11,-5,0,-4,3,-9;0,7,-13,0,4,0,0,-11;0,4,0,0,-3,0,0,-5;8,-7,1,4,9,11,5,0;\
         0,6,-2,0,-3,0,0,-8;-6,0,1,-2,-3,-7,-4,7;2,-1,0,9,11,13,0,-1;0,2,-9,0,5,0,0,-4",
    ))
    .unwrap();
    let pair = KahlerPair::new(j1, j2).unwrap();
    let w = LinearSubmanifold::new(Subspace::span(4, vec![unit_vec(4, 0), unit_vec(4, 2)]));
    let (j1, j2) = (pair.first(), pair.second());
    assert!(theorem_main_verdict(j1, &w).unwrap().admissible);
    assert!(theorem_main_verdict(j2, &w).unwrap().admissible);
    let lalg = lalg_conditions(j1, j2, &w).unwrap();
    assert_eq!(lalg.values(), [false, false, false, true]);
    assert!(!lalg.sum_containment);
    let ind = induced_pair(j1, j2, &w).unwrap();
    assert!(!ind.commute);
    let q = |a: i64, b: i64| Q::new(a.into(), b.into());
    let first = Matrix::from_fn(4, 4, |i, k| q([[1, 0, 0, 2], [0, 1, -2, 0], [0, 1, -1, 0], [-1, 0, 0, -1]][i][k], 1));
    let second =
        Matrix::from_fn(4, 4, |i, k| q([[65, 0, 0, 53], [0, 65, -53, 0], [0, 82, -65, 0], [-82, 0, 0, -65]][i][k], 11));
    assert_eq!(ind.first.j_prime.matrix(), &first);
    assert_eq!(ind.second.j_prime.matrix(), &second);
}

#[test]
fn lalg_agreement_on_commuting_non_kahler_pairs() {
    let mut rng = common::rng(22);
    for _ in 0..150 {
        let m = rng.gen_range(1..=2);
        let j = gck_core::gcs::random_gcs(&mut rng, m);
        let sign = if rng.gen_bool(0.5) { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
        let j2 = gck_core::gcs::validate_gcs(j.matrix().scale(&sign)).unwrap();
        let d = rng.gen_range(0..=2 * m);
        let w = LinearSubmanifold::new(sample::random_subspace(&mut rng, 2 * m, d));
        let lalg = lalg_conditions(&j, &j2, &w).unwrap();
        assert!(lalg.all_agree(), "{lalg:?}");
    }
}
