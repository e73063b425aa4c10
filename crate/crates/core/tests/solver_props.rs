mod common;

use common::*;
use ffblock::metrics::predict_tree;
use ffblock::oracle::{bareiss_one_pass, laplace_det};
use ffblock::random::{random_matrix, random_system, seeded, Sample};
use ffblock::{
    mat_mul, mat_scale, Divisor, Error, Mat, MulBackend, OpCounts, PartitionStrategy, PolyElem, Ring, Solver,
    Trace,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn permuted<R: Sample>(n: usize, m: usize, seed: u64) -> Mat<R> {
    let a: Mat<R> = random_system(n, m, 9, &mut seeded(seed));
    let (perm, _) = ffblock::precondition_permute(&a).unwrap();
    a.permute_rows(&perm).unwrap()
}

fn agrees_with_oracle<R: Sample>(n: usize, extra: usize, seed: u64) -> Result<(), TestCaseError> {
    let a: Mat<R> = permuted(n, n + extra, seed);
    let oracle = bareiss_one_pass(&a, &mut OpCounts::default()).unwrap();
    for strategy in every_strategy() {
        for backend in every_backend() {
            let mut trace = Trace::default();
            let r = Solver::new(strategy, backend)
                .reduce_traced(&a, Divisor::Unit, &mut OpCounts::default(), &mut trace)
                .unwrap();
            prop_assert_eq!(&trace.delta_sequence(), &oracle.delta_seq, "{} {}", strategy, backend);
            prop_assert_eq!(&r.g_hat, &oracle.g);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_strategy_and_backend_agrees_int(n in 1usize..=7, extra in 0usize..=3, seed in any::<u64>()) {
        agrees_with_oracle::<ffblock::IntElem>(n, extra, seed)?;
    }

    #[test]
    fn every_strategy_and_backend_agrees_poly(n in 1usize..=4, extra in 0usize..=2, seed in any::<u64>()) {
        agrees_with_oracle::<PolyElem>(n, extra, seed)?;
    }

    #[test]
    fn intermediate_blocks_are_minors(n in 1usize..=5, extra in 1usize..=2, seed in any::<u64>(), pick in 0usize..7) {
        let a: IMat = permuted(n, n + extra, seed);
        let strategy = every_strategy()[pick];
        let mut trace = Trace::default();
        Solver::new(strategy, MulBackend::Classical)
            .reduce_traced(&a, Divisor::Unit, &mut OpCounts::default(), &mut trace)
            .unwrap();
        if let Err(e) = check_minor_semantics(&a, &trace) {
            return Err(TestCaseError::fail(format!("{strategy}: {e}")));
        }
    }

    #[test]
    fn instrumented_counts_match_prediction(n in 1usize..=12, extra in 0usize..=3, pick in 0usize..7, be in 0usize..3, seed in any::<u64>()) {
        let a: IMat = permuted(n, n + extra, seed);
        let strategy = every_strategy()[pick];
        let backend = every_backend()[be];
        let mut ops = OpCounts::default();
        Solver::new(strategy, backend).reduce(&a, Divisor::Unit, &mut ops).unwrap();
        prop_assert_eq!(ops, predict_tree(n, n + extra, strategy, backend).unwrap());
    }

    #[test]
    fn square_residual(n in 1usize..=8, seed in any::<u64>(), be in 0usize..3) {
        let a: IMat = random_system(n, n + 1, 9, &mut seeded(seed));
        let sol = Solver::new(PartitionStrategy::Dichotomous, every_backend()[be])
            .with_permute(true)
            .solve(&a, &mut OpCounts::default())
            .unwrap();
        let ops = &mut OpCounts::default();
        let coeffs = a.block(0..n, 0..n).unwrap();
        let b = a.block(0..n, n..n + 1).unwrap();
        let lhs = mat_mul(&coeffs, &sol.minors, MulBackend::Classical, ops).unwrap();
        prop_assert_eq!(lhs, mat_scale(&sol.delta_n, &b, ops));
    }

    #[test]
    fn underdetermined_residual(n in 1usize..=6, free in 1usize..=3, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a: IMat = random_system(n, n + free + 1, 9, &mut rng);
        let sol = Solver::default().with_permute(true).solve(&a, &mut OpCounts::default()).unwrap();
        let values: Vec<_> = (0..free).map(|i| int((seed >> (8 * i)) as i64 % 11 - 5)).collect();
        let nums = sol.numerators(&values).unwrap();
        let mut x: Vec<BigRational> = nums.iter().map(|v| rat(v) / rat(&sol.delta_n)).collect();
        x.extend(values.iter().map(rat));
        prop_assert!(satisfies(&a, &x));
    }

    #[test]
    fn determinant_matches_laplace(n in 1usize..=6, seed in any::<u64>(), row in 0usize..6, scale in -5i64..=5) {
        let a: IMat = random_matrix(n, n, 9, &mut seeded(seed));
        let solver = Solver::default().with_permute(true);
        let det = solver.determinant(&a, &mut OpCounts::default()).unwrap();
        prop_assert_eq!(&det, &laplace_det(&a).unwrap());
        // scaling one row scales the determinant
        let r = row % n;
        let scaled = Mat::from_fn(n, n, |i, j| if i == r { a.get(i, j).mul(&int(scale)) } else { a.get(i, j).clone() });
        prop_assert_eq!(solver.determinant(&scaled, &mut OpCounts::default()).unwrap(), det.mul(&int(scale)));
        // swapping two rows flips the sign
        if n > 1 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, r.max(1));
            let swapped = a.permute_rows(&perm).unwrap();
            prop_assert_eq!(solver.determinant(&swapped, &mut OpCounts::default()).unwrap(), det.neg());
        }
    }

    #[test]
    fn adjugate_identity(n in 1usize..=6, seed in any::<u64>(), pick in 0usize..7) {
        let a: IMat = random_system(n, n, 9, &mut seeded(seed));
        let solver = Solver::new(every_strategy()[pick], MulBackend::Classical).with_permute(true);
        let ops = &mut OpCounts::default();
        let adj = solver.adjugate(&a, ops).unwrap();
        let det = solver.determinant(&a, ops).unwrap();
        let lhs = mat_mul(&a, &adj, MulBackend::Classical, ops).unwrap();
        prop_assert_eq!(lhs, mat_scale(&det, &IMat::identity(n), ops));
    }
}

#[test]
fn vanishing_corner_minor_is_reported() {
    // δ¹ = 0
    let a = m(&[&[0, 1, 2], &[1, 0, 3]]);
    match Solver::default().solve(&a, &mut OpCounts::default()) {
        Err(Error::SingularMinor(r)) => assert_eq!(r.failing_order, 1),
        other => panic!("expected SingularMinor, got {other:?}"),
    }
    // δ² = 0 but δ³ ≠ 0
    let b = m(&[&[1, 1, 0, 1], &[1, 1, 1, 2], &[0, 1, 1, 3]]);
    match Solver::default().solve(&b, &mut OpCounts::default()) {
        Err(Error::SingularMinor(r)) => assert_eq!(r.failing_order, 2),
        other => panic!("expected SingularMinor, got {other:?}"),
    }
    let sol = Solver::default().with_permute(true).solve(&b, &mut OpCounts::default()).unwrap();
    let x: Vec<BigRational> = sol.minors.column(0).iter().map(|v| rat(v) / rat(&sol.delta_n)).collect();
    assert!(satisfies(&b, &x));
    assert!(sol.permutation.is_some());
}

#[test]
fn structurally_singular_input() {
    let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
    assert!(matches!(
        Solver::default().with_permute(true).solve(&a, &mut OpCounts::default()),
        Err(Error::StructurallySingular(_))
    ));
    let sq = m(&[&[1, 2], &[2, 4]]);
    assert_eq!(Solver::default().with_permute(true).determinant(&sq, &mut OpCounts::default()).unwrap(), int(0));
    assert!(Solver::default().with_permute(true).adjugate(&sq, &mut OpCounts::default()).is_err());
}

#[test]
fn invalid_custom_split_is_rejected() {
    let solver = Solver::new(PartitionStrategy::Custom(|k, _| k), MulBackend::Classical);
    assert!(matches!(solver.solve(&example(), &mut OpCounts::default()), Err(Error::InvalidSplit { .. })));
}

#[test]
fn poly_adjugate() {
    let mut rng = seeded(11);
    for n in 1..=4 {
        let a: Mat<PolyElem> = random_system(n, n, 3, &mut rng);
        let solver = Solver::default().with_permute(true);
        let ops = &mut OpCounts::default();
        let adj = solver.adjugate(&a, ops).unwrap();
        let det = solver.determinant(&a, ops).unwrap();
        assert_eq!(det, laplace_det(&a).unwrap());
        let lhs = mat_mul(&a, &adj, MulBackend::Strassen { cutoff: 1 }, ops).unwrap();
        assert_eq!(lhs, mat_scale(&det, &Mat::identity(n), ops));
    }
}
