#![allow(dead_code)]

use ffblock::oracle::{bordered_minor, laplace_det, substituted_minor};
use ffblock::{IntElem, Mat, MulBackend, PartitionStrategy, Ring, Trace, TraceEvent};
use num_bigint::BigInt;
use num_rational::BigRational;

pub type IMat = Mat<IntElem>;

pub fn int(v: i64) -> IntElem {
    IntElem::from(v)
}

pub fn m(rows: &[&[i64]]) -> IMat {
    IMat::from_i64(rows).unwrap()
}

/// The 4×5 worked example: four equations, right-hand side in the last column.
pub fn example() -> IMat {
    m(&[&[3, 1, 1, -1, 4], &[1, 2, 0, 1, 4], &[0, 1, 2, 0, -2], &[1, 0, 0, 2, -1]])
}

pub fn every_strategy() -> Vec<PartitionStrategy> {
    vec![
        PartitionStrategy::Dichotomous,
        PartitionStrategy::OnePass,
        PartitionStrategy::ForwardBackUp,
        PartitionStrategy::Fixed(1),
        PartitionStrategy::Fixed(2),
        PartitionStrategy::Fixed(3),
        // lower third, rounded down, but at least one row on each side
        PartitionStrategy::Custom(|k, l| l - ((l - k) / 3).max(1)),
    ]
}

pub fn every_backend() -> Vec<MulBackend> {
    vec![
        MulBackend::Classical,
        MulBackend::Strassen { cutoff: 1 },
        MulBackend::Strassen { cutoff: 2 },
    ]
}

pub fn rat(x: &IntElem) -> BigRational {
    BigRational::from_integer(x.0.clone())
}

/// Checks `Σ_{j<m−1} a_ij x_j = a_{i,m−1}` over the rationals.
pub fn satisfies(a_ext: &IMat, x: &[BigRational]) -> bool {
    let last = a_ext.cols() - 1;
    (0..a_ext.rows()).all(|i| {
        let lhs: BigRational = (0..last).map(|j| rat(a_ext.get(i, j)) * &x[j]).sum();
        lhs == rat(a_ext.get(i, last))
    })
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Compares every block recorded in `trace` with minors of `a` computed by cofactor expansion.
/// Returns a description of the first mismatch.
pub fn check_minor_semantics<R: Ring>(a: &Mat<R>, trace: &Trace<R>) -> Result<(), String> {
    let fail = |what: &str, i: usize, j: usize| Err(format!("{what} mismatch at ({i}, {j})"));
    for ev in &trace.events {
        match ev {
            TraceEvent::Reduced { k, l, delta, g_hat, .. } => {
                let d = laplace_det(&a.block(0..*l, 0..*l).unwrap()).unwrap();
                if &d != delta {
                    return Err(format!("δ^{l} mismatch"));
                }
                for i in 0..g_hat.rows() {
                    for j in 0..g_hat.cols() {
                        if &substituted_minor(a, *l, k + i + 1, l + j + 1).unwrap() != g_hat.get(i, j) {
                            return fail("Ĝ", k + i, l + j);
                        }
                    }
                }
            }
            TraceEvent::Eliminated { s, block, .. } => {
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        if &bordered_minor(a, s + 1, s + i + 1, s + j + 1).unwrap() != block.get(i, j) {
                            return fail("Â", s + i, s + j);
                        }
                    }
                }
            }
            TraceEvent::BackSubstituted { k, l, block, .. } => {
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        if &substituted_minor(a, *l, k + i + 1, l + j + 1).unwrap() != block.get(i, j) {
                            return fail("Ĝ₂″¹", k + i, l + j);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
