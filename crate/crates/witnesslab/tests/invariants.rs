//! Cross-module algebraic invariants on seeded random inputs: partial
//! transpose algebra, the quadratic-form identity that fixes the
//! conventions, and agreement of the three pairing evaluation paths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use witnesslab::maps::{choi_of, pairing, pairing_via_choi, rank_one_pairing, KrausTerm};
use witnesslab::{BipartiteOperator, Complex64, ComplexMatrix, ProductVector, PtSide};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
}

fn random_hermitian_operator(rng: &mut ChaCha8Rng, n: usize, m: usize) -> BipartiteOperator {
    let side = n * m;
    let g = random_matrix(rng, side, side);
    let h = g.add(&g.adjoint()).unwrap().scale(0.5);
    BipartiteOperator::new(n, m, h).unwrap()
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

#[test]
fn partial_transposes_compose_to_full_transpose() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, m) in [(2, 2), (3, 3), (2, 4)] {
        for _ in 0..10 {
            let a = random_hermitian_operator(&mut rng, n, m);
            let both = a.partial_transpose(PtSide::A).partial_transpose(PtSide::B);
            let full = a.matrix().transpose();
            assert!(both.matrix().max_abs_diff(&full).unwrap() <= 1e-14);
            // Opposite composition order agrees as well.
            let swapped = a.partial_transpose(PtSide::B).partial_transpose(PtSide::A);
            assert!(swapped.matrix().max_abs_diff(&full).unwrap() <= 1e-14);
        }
    }
}

#[test]
fn partial_transpose_is_an_involution_on_each_side() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for side in [PtSide::A, PtSide::B] {
        for _ in 0..10 {
            let a = random_hermitian_operator(&mut rng, 3, 4);
            let round_trip = a.partial_transpose(side).partial_transpose(side);
            assert!(round_trip.matrix().max_abs_diff(a.matrix()).unwrap() <= 1e-14);
        }
    }
}

/// The identity that pins the index and conjugation conventions:
/// `<x⊗y|A^τ_B|x⊗y> = <x⊗conj(y)|A|x⊗conj(y)>` (and the mirrored A-side
/// version), for arbitrary Hermitian `A` and unit product vectors.
#[test]
fn quadratic_form_identity_on_both_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for (n, m) in [(3, 3), (3, 4)] {
        for _ in 0..250 {
            let a = random_hermitian_operator(&mut rng, n, m);
            let x = random_unit(&mut rng, n);
            let y = random_unit(&mut rng, m);
            let pv = ProductVector::new(&x, &y).unwrap();

            let lhs_b = witnesslab::product_overlap(&pv, &a.partial_transpose(PtSide::B)).unwrap();
            let rhs_b =
                witnesslab::product_overlap(&pv.partial_conjugate(PtSide::B), &a).unwrap();
            worst = worst.max((lhs_b - rhs_b).abs());

            let lhs_a = witnesslab::product_overlap(&pv, &a.partial_transpose(PtSide::A)).unwrap();
            let rhs_a =
                witnesslab::product_overlap(&pv.partial_conjugate(PtSide::A), &a).unwrap();
            worst = worst.max((lhs_a - rhs_a).abs());
        }
    }
    assert!(worst <= 1e-9, "worst deviation {worst:.3e}");
}

fn random_terms(rng: &mut ChaCha8Rng, n: usize, m: usize, count: usize) -> Vec<KrausTerm> {
    (0..count)
        .map(|i| {
            let v = random_matrix(rng, m, n);
            if i % 2 == 0 {
                KrausTerm::plain(v)
            } else {
                KrausTerm::transposed(v)
            }
        })
        .collect()
}

#[test]
fn pairing_paths_agree_on_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (n, m) in [(2, 3), (3, 3)] {
        for terms_count in 1..=3 {
            for _ in 0..10 {
                let terms = random_terms(&mut rng, n, m, terms_count);
                let rep = choi_of(&terms).unwrap();
                let a = random_hermitian_operator(&mut rng, n, m);
                let via_units = pairing(&a, &rep).unwrap();
                let via_choi = pairing_via_choi(&a, &rep).unwrap();
                assert!((via_units - via_choi).norm() <= 1e-12);
                assert!(via_units.im.abs() <= 1e-12, "pairing must be real");
            }
        }
    }
}

#[test]
fn rank_one_pairing_matches_generic_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (n, m) in [(2, 3), (3, 3)] {
        for _ in 0..25 {
            let terms = random_terms(&mut rng, n, m, 2);
            let rep = choi_of(&terms).unwrap();
            let x = random_unit(&mut rng, n);
            let y = random_unit(&mut rng, m);
            let pv = ProductVector::new(&x, &y).unwrap();
            // A = the rank-one projector onto the embedded product vector.
            let v = pv.embed();
            let proj = ComplexMatrix::from_fn(n * m, n * m, |r, s| v[r] * v[s].conj());
            let a = BipartiteOperator::new(n, m, proj).unwrap();
            let generic = pairing(&a, &rep).unwrap();
            let closed = rank_one_pairing(&terms, &pv).unwrap();
            assert!((generic.re - closed).abs() <= 1e-10);
            assert!(closed >= -1e-12, "closed form must be non-negative");
        }
    }
}

#[test]
fn choi_reconstruction_reproduces_kraus_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (n, m) in [(2, 2), (3, 2)] {
        for _ in 0..10 {
            let terms = random_terms(&mut rng, n, m, 3);
            let rep = choi_of(&terms).unwrap();
            // Terms are m x n, so the map eats m x m and emits n x n.
            let x = random_matrix(&mut rng, m, m);
            let applied = rep.apply(&x).unwrap();
            // Direct evaluation of each term's action.
            let mut direct = ComplexMatrix::zeros(n, n);
            for term in &terms {
                let v = &term.matrix;
                let arg = match term.kind {
                    witnesslab::KrausKind::Plain => x.clone(),
                    witnesslab::KrausKind::Transposed => x.transpose(),
                };
                direct = direct
                    .add(&v.adjoint().matmul(&arg).unwrap().matmul(v).unwrap())
                    .unwrap();
            }
            assert!(applied.max_abs_diff(&direct).unwrap() <= 1e-12);
        }
    }
}
