//! Slow, independent references for the solver: a row-at-a-time fraction-free elimination,
//! cofactor-expansion determinants, and brute-force minors.
//!
//! Nothing here calls into [`crate::solver`] or the block kernels in [`crate::matrix`]; the only
//! shared pieces are the element type and [`Mat`] storage.

use crate::error::{Error, Result, SingularReport};
use crate::matrix::Mat;
use crate::metrics::OpCounts;
use crate::ring::Ring;

/// Largest order accepted by [`laplace_det`].
pub const LAPLACE_MAX: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<R> {
    /// `δ¹ … δⁿ`.
    pub delta_seq: Vec<R>,
    /// `n × (m−n)`, same layout as [`ParametricSolution::minors`](crate::solver::ParametricSolution).
    pub g: Mat<R>,
}

/// One-pass fraction-free elimination over an `n × m` extended matrix (`m ≥ n`).
///
/// Row `k` is first brought to order `k+1` against the already reduced rows (no division, the
/// divisor is `δ⁰`), then every earlier row is lifted from order `k` to `k+1` with an exact
/// division by `δ^k`. For `k = 1` the lifted minor is the plain 2×2 determinant, which needs no
/// division at all.
pub fn bareiss_one_pass<R: Ring>(a_ext: &Mat<R>, ops: &mut OpCounts) -> Result<OracleResult<R>> {
    let (n, m) = a_ext.shape();
    if n == 0 || m < n {
        return Err(Error::Shape(format!("one-pass elimination needs 1 <= n <= m, got {n}x{m}")));
    }
    let singular = |order| {
        Error::SingularMinor(SingularReport { failing_order: order, permutation_applied: None })
    };
    let a = |i: usize, j: usize| a_ext.get(i, j);

    // upper[i][j] = δ^k_{i+1, j+1}, meaningful for j >= k once k rows are reduced
    let mut upper: Vec<Vec<R>> = vec![a_ext.row(0).to_vec()];
    let mut delta = a(0, 0).clone();
    if delta.is_zero() {
        return Err(singular(1));
    }
    let mut delta_seq = vec![delta.clone()];

    for k in 1..n {
        let mut row = vec![R::zero(); m];
        for j in k..m {
            let mut acc = ops.mul(&delta, a(k, j));
            for (p, up) in upper.iter().enumerate() {
                let t = ops.mul(a(k, p), &up[j]);
                acc = ops.sub(&acc, &t);
            }
            ops.elided_divs += 1;
            row[j] = acc;
        }
        let pivot = row[k].clone();
        if pivot.is_zero() {
            return Err(singular(k + 1));
        }

        for up in upper.iter_mut() {
            for j in k + 1..m {
                up[j] = if k == 1 {
                    let t1 = ops.mul(a(0, j), a(1, 1));
                    let t2 = ops.mul(a(0, 1), a(1, j));
                    ops.sub(&t1, &t2)
                } else {
                    let t1 = ops.mul(&pivot, &up[j]);
                    let t2 = ops.mul(&up[k], &row[j]);
                    let num = ops.sub(&t1, &t2);
                    ops.exact_div(&num, &delta)?
                };
            }
        }
        upper.push(row);
        delta = pivot;
        delta_seq.push(delta.clone());
    }

    let g = Mat::from_fn(n, m - n, |i, j| upper[i][n + j].clone());
    Ok(OracleResult { delta_seq, g })
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det<R: Ring>(a: &Mat<R>) -> Result<R> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape(format!("laplace_det needs a square matrix, got {}x{}", n, a.cols())));
    }
    if n > LAPLACE_MAX {
        return Err(Error::Shape(format!("laplace_det limited to order {LAPLACE_MAX}, got {n}")));
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(a, 0, &cols))
}

fn expand<R: Ring>(a: &Mat<R>, row: usize, cols: &[usize]) -> R {
    if cols.is_empty() {
        return R::one();
    }
    let mut total = R::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = a.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&expand(a, row + 1, &rest));
        total = if idx % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// `δ^k_{ij}`: the leading `k×k` minor with column `i` replaced by column `j` (1-based).
///
/// `j ≤ k` is allowed; in particular `δ^k_{ii} = δ^k`.
pub fn substituted_minor<R: Ring>(a: &Mat<R>, k: usize, i: usize, j: usize) -> Result<R> {
    if k == 0 || k > a.rows() || k > a.cols() || i == 0 || i > k || j == 0 || j > a.cols() {
        return Err(Error::Index(format!(
            "substituted minor (k={k}, i={i}, j={j}) outside {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let sub = Mat::from_fn(k, k, |r, c| {
        let src = if c == i - 1 { j - 1 } else { c };
        a.get(r, src).clone()
    });
    laplace_det(&sub)
}

/// `a^k_{ij}`: the leading `(k−1)×(k−1)` block bordered by row `i` and column `j` (1-based).
pub fn bordered_minor<R: Ring>(a: &Mat<R>, k: usize, i: usize, j: usize) -> Result<R> {
    if k == 0 || k > a.rows() || k > a.cols() || i == 0 || i > a.rows() || j == 0 || j > a.cols() {
        return Err(Error::Index(format!(
            "bordered minor (k={k}, i={i}, j={j}) outside {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let sub = Mat::from_fn(k, k, |r, c| {
        let rr = if r == k - 1 { i - 1 } else { r };
        let cc = if c == k - 1 { j - 1 } else { c };
        a.get(rr, cc).clone()
    });
    laplace_det(&sub)
}
