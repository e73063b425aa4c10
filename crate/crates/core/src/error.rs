use std::fmt;

use thiserror::Error;

/// Failure to read an element or a matrix from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

/// Details of a vanishing corner minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularReport {
    /// Order `k` of the first corner minor found to be zero (1-based, as in `δ^k`).
    pub failing_order: usize,
    /// Row permutation (and its sign) that had been applied to the input, if any.
    pub permutation_applied: Option<(Vec<usize>, i8)>,
}

impl fmt::Display for SingularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corner minor of order {} is zero", self.failing_order)?;
        if let Some((perm, sign)) = &self.permutation_applied {
            write!(f, " (after row permutation {:?}, sign {})", perm, sign)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("division by zero")]
    DivisionByZero,

    /// `dividend / divisor` left a remainder. Either the operands are not minors of a common
    /// matrix, or there is a bug upstream.
    #[error("inexact division: {dividend} / {divisor} leaves remainder {remainder}")]
    NonzeroRemainder {
        dividend: String,
        divisor: String,
        remainder: String,
    },

    #[error("inexact division at entry ({row}, {col}): {source}")]
    InexactEntry {
        row: usize,
        col: usize,
        source: Box<Error>,
    },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{0}")]
    SingularMinor(SingularReport),

    #[error("matrix is structurally singular: leading block has rank < {0} under every row order")]
    StructurallySingular(usize),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("partition chose s = {s} outside ({k}, {l})")]
    InvalidSplit { k: usize, l: usize, s: usize },

    #[error("outside formula domain: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
