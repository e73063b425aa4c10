//! Seeded random matrices for tests, sweeps and the CLI's `random` helper.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Mat;
use crate::ring::{IntElem, PolyElem, Ring};
use crate::solver::precondition_permute;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Elements that can be drawn at random with coefficients in `[−bound, bound]`.
pub trait Sample: Ring {
    fn sample<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> Self;
}

impl Sample for IntElem {
    fn sample<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> Self {
        IntElem::from(rng.random_range(-bound..=bound))
    }
}

/// Degree at most 2.
impl Sample for PolyElem {
    fn sample<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> Self {
        PolyElem::new((0..3).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect())
    }
}

pub fn random_matrix<R: Sample, G: Rng + ?Sized>(rows: usize, cols: usize, bound: i64, rng: &mut G) -> Mat<R> {
    Mat::from_fn(rows, cols, |_, _| R::sample(rng, bound))
}

/// A random `n × m` matrix whose leading `n × n` block is nonsingular (corner minors may still
/// vanish; see [`precondition_permute`]).
pub fn random_system<R: Sample, G: Rng + ?Sized>(n: usize, m: usize, bound: i64, rng: &mut G) -> Mat<R> {
    assert!(m >= n && bound > 0, "random_system needs m >= n and a positive bound");
    loop {
        let a = random_matrix(n, m, bound, rng);
        if precondition_permute(&a).is_ok() {
            return a;
        }
    }
}
