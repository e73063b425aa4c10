//! Exact linear algebra over commutative integral domains by recursive fraction-free block
//! reduction.
//!
//! An `n × m` extended matrix `A` is reduced to `(δⁿ Iₙ, G)`, where `δⁿ` is the leading minor and
//! `G` holds the Cramer numerators. Splitting the rows in half at every level makes the cost that
//! of matrix multiplication; splitting off one row at a time recovers classical one-pass
//! elimination. Determinants and adjugates fall out of the same reduction.
//!
//! ```
//! use ffblock::{IntElem, Mat, OpCounts, Solver};
//!
//! let a = Mat::<IntElem>::from_i64(&[&[2, 1, 5], &[1, 3, 10]]).unwrap();
//! let mut ops = OpCounts::default();
//! let sol = Solver::default().solve(&a, &mut ops).unwrap();
//! assert_eq!(sol.delta_n, IntElem::from(5));
//! assert_eq!(sol.numerators(&[]).unwrap(), vec![IntElem::from(5), IntElem::from(15)]);
//! ```

pub mod error;
pub mod matrix;
pub mod metrics;
pub mod oracle;
pub mod random;
pub mod ring;
pub mod solver;

pub use error::{Error, ParseError, Result, SingularReport};
pub use matrix::{mat_add, mat_div_scalar, mat_mul, mat_scale, mat_sub, Divisor, Mat, MulBackend};
pub use metrics::{OpCounts, PredictedCounts};
pub use ring::{DomainKind, IntElem, PolyElem, Ring};
pub use solver::{
    precondition_permute, step2_eliminate, step4_backsubstitute, ParametricSolution, PartitionStrategy,
    ReduceResult, Solver, Trace, TraceEvent,
};
