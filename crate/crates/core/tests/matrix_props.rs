mod common;

use common::*;
use ffblock::metrics::predict_mul;
use ffblock::random::{random_matrix, seeded, Sample};
use ffblock::{mat_add, mat_mul, Mat, MulBackend, OpCounts, PolyElem, Ring};
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=17, 1usize..=17, 1usize..=17)
}

fn strassen_matches<R: Sample>(l: usize, n: usize, c: usize, cutoff: usize, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = seeded(seed);
    let a: Mat<R> = random_matrix(l, n, 9, &mut rng);
    let b: Mat<R> = random_matrix(n, c, 9, &mut rng);
    let mut oc = OpCounts::default();
    let mut os = OpCounts::default();
    let classical = mat_mul(&a, &b, MulBackend::Classical, &mut oc).unwrap();
    let backend = MulBackend::Strassen { cutoff };
    let strassen = mat_mul(&a, &b, backend, &mut os).unwrap();
    prop_assert_eq!(&classical, &strassen);
    prop_assert_eq!(oc, predict_mul(l, n, c, MulBackend::Classical));
    prop_assert_eq!(os, predict_mul(l, n, c, backend));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strassen_equals_classical_int((l, n, c) in dims(), cutoff in 1usize..4, seed in any::<u64>()) {
        strassen_matches::<ffblock::IntElem>(l, n, c, cutoff, seed)?;
    }

    #[test]
    fn strassen_equals_classical_poly((l, n, c) in (1usize..=9, 1usize..=9, 1usize..=9), cutoff in 1usize..3, seed in any::<u64>()) {
        strassen_matches::<PolyElem>(l, n, c, cutoff, seed)?;
    }

    #[test]
    fn classical_counts((l, n, c) in dims(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a: IMat = random_matrix(l, n, 9, &mut rng);
        let b: IMat = random_matrix(n, c, 9, &mut rng);
        let mut ops = OpCounts::default();
        mat_mul(&a, &b, MulBackend::Classical, &mut ops).unwrap();
        prop_assert_eq!(ops.muls as usize, l * n * c);
        prop_assert_eq!(ops.adds as usize, l * (n - 1) * c);
        prop_assert_eq!(ops.divs, 0);
    }

    #[test]
    fn large_cutoff_is_classical((l, n, c) in dims(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a: IMat = random_matrix(l, n, 9, &mut rng);
        let b: IMat = random_matrix(n, c, 9, &mut rng);
        let mut oc = OpCounts::default();
        let mut os = OpCounts::default();
        mat_mul(&a, &b, MulBackend::Classical, &mut oc).unwrap();
        mat_mul(&a, &b, MulBackend::Strassen { cutoff: l.min(n).min(c) }, &mut os).unwrap();
        prop_assert_eq!(oc, os);
    }

    #[test]
    fn product_is_associative_and_distributive(p in 1usize..6, q in 1usize..6, r in 1usize..6, s in 1usize..6, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a: IMat = random_matrix(p, q, 9, &mut rng);
        let b: IMat = random_matrix(q, r, 9, &mut rng);
        let b2: IMat = random_matrix(q, r, 9, &mut rng);
        let c: IMat = random_matrix(r, s, 9, &mut rng);
        let ops = &mut OpCounts::default();
        let be = MulBackend::Strassen { cutoff: 1 };
        let left = mat_mul(&mat_mul(&a, &b, be, ops).unwrap(), &c, be, ops).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c, be, ops).unwrap(), be, ops).unwrap();
        prop_assert_eq!(left, right);
        let sum = mat_mul(&a, &mat_add(&b, &b2, ops).unwrap(), be, ops).unwrap();
        let split = mat_add(&mat_mul(&a, &b, be, ops).unwrap(), &mat_mul(&a, &b2, be, ops).unwrap(), ops).unwrap();
        prop_assert_eq!(sum, split);
    }

    #[test]
    fn block_concat_round_trip(rows in 1usize..8, cols in 1usize..8, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a: IMat = random_matrix(rows, cols, 9, &mut rng);
        let r = seed as usize % (rows + 1);
        let c = (seed >> 8) as usize % (cols + 1);
        let top = Mat::hconcat(&[&a.block(0..r, 0..c).unwrap(), &a.block(0..r, c..cols).unwrap()]).unwrap();
        let bottom = Mat::hconcat(&[&a.block(r..rows, 0..c).unwrap(), &a.block(r..rows, c..cols).unwrap()]).unwrap();
        prop_assert_eq!(Mat::vconcat(&[&top, &bottom]).unwrap(), a.clone());
        prop_assert_eq!(a.transpose().transpose(), a);
    }
}

#[test]
fn identity_is_neutral() {
    let a = example();
    let ops = &mut OpCounts::default();
    for be in every_backend() {
        assert_eq!(mat_mul(&IMat::identity(4), &a, be, ops).unwrap(), a);
        assert_eq!(mat_mul(&a, &IMat::identity(5), be, ops).unwrap(), a);
    }
}

#[test]
fn shape_mismatch_is_reported() {
    let ops = &mut OpCounts::default();
    assert!(mat_mul(&IMat::zeros(2, 3), &IMat::zeros(2, 3), MulBackend::Classical, ops).is_err());
    assert!(mat_add(&IMat::zeros(2, 3), &IMat::zeros(3, 2), ops).is_err());
    assert!(Mat::hconcat(&[&IMat::zeros(2, 1), &IMat::zeros(3, 1)]).is_err());
    assert!(IMat::zeros(2, 2).block(0..3, 0..1).is_err());
    assert!(IntElemMat::new(2, 2, vec![int(1)]).is_err());
}

type IntElemMat = Mat<ffblock::IntElem>;

#[test]
fn poly_products_keep_degree_bound() {
    let mut rng = seeded(3);
    let a: Mat<PolyElem> = random_matrix(4, 4, 5, &mut rng);
    let b: Mat<PolyElem> = random_matrix(4, 4, 5, &mut rng);
    let p = mat_mul(&a, &b, MulBackend::Strassen { cutoff: 1 }, &mut OpCounts::default()).unwrap();
    assert!(p.data().iter().all(|e| e.degree().is_none_or(|d| d <= 4)));
    assert!(!p.data().iter().all(Ring::is_zero));
}
