//! Recursive fraction-free block reduction.
//!
//! Given an `n×m` extended matrix `A` over an integral domain, the reduction produces
//! `A → (δⁿ Iₙ, G)` where `δⁿ` is the leading `n×n` minor and `G[j][p]` is `δⁿ` with column `j`
//! replaced by column `n+p`. Every intermediate value is a minor of `A`, so all divisions are
//! exact.
//!
//! # Indexing
//!
//! Code is 0-based with half-open ranges; the minor notation in docs is 1-based.
//!
//! | quantity                | code                              | minor notation            |
//! |-------------------------|-----------------------------------|---------------------------|
//! | block rows              | `k..l`                            | rows `k+1 ..= l`          |
//! | block columns           | `k..c`                            | columns `k+1 ..= c`       |
//! | input block `Ã`         | entry `(i, j)`                    | `a^{k+1}_{k+1+i, k+1+j}`  |
//! | output `Ĝ`              | entry `(i, j)`, columns `l..c`    | `δ^l_{k+1+i, l+1+j}`      |
//! | split point             | `s`, `k < s < l`                  | same                      |
//!
//! The recursive invariant: [`Solver::reduce`] receives the block of order-`(k+1)` surrounding
//! minors over rows `k..l`, columns `k..c`, together with `δ^k` (the structural unit at the top).
//!
//! One step, for a split `s`:
//!
//! 1. reduce the upper `s−k` rows: `A¹ → (δ^s I, G₂¹)`;
//! 2. eliminate: `Â₂² = (δ^s·A₂² − A₁²·G₂¹) / δ^k`;
//! 3. reduce the lower block: `Â₂² → (δ^l I, Ĝ₂″²)` with `δ^s` as its divisor;
//! 4. back-substitute: `Ĝ₂″¹ = (δ^l·G₂″¹ − G₂′¹·Ĝ₂″²) / δ^s`.
//!
//! The result is `δ^l` and `Ĝ = [Ĝ₂″¹; Ĝ₂″²]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, SingularReport};
use crate::matrix::{mat_div_scalar, mat_mul, mat_scale, mat_sub, Divisor, Mat, MulBackend};
use crate::metrics::OpCounts;
use crate::ring::Ring;

/// How a block of rows `k..l` is split into an upper and a lower part.
#[derive(Debug, Clone, Copy, Default)]
pub enum PartitionStrategy {
    /// Upper part gets `ceil((l−k)/2)` rows.
    #[default]
    Dichotomous,
    /// Lower part is a single row (row-at-a-time elimination with immediate back-substitution).
    OnePass,
    /// Upper part is a single row.
    ForwardBackUp,
    /// Upper part gets `min(u, l−k−1)` rows, at least one.
    Fixed(usize),
    /// Arbitrary choice `s = f(k, l)`; must satisfy `k < s < l`.
    Custom(fn(usize, usize) -> usize),
}

impl PartitionStrategy {
    /// Split point for rows `k..l`; requires `l − k ≥ 2`.
    pub fn split(&self, k: usize, l: usize) -> Result<usize> {
        let h = l.saturating_sub(k);
        if h < 2 {
            return Err(Error::Shape(format!("cannot split {h} row(s)")));
        }
        let s = match *self {
            PartitionStrategy::Dichotomous => k + h.div_ceil(2),
            PartitionStrategy::OnePass => l - 1,
            PartitionStrategy::ForwardBackUp => k + 1,
            PartitionStrategy::Fixed(u) => k + u.clamp(1, h - 1),
            PartitionStrategy::Custom(f) => f(k, l),
        };
        if s <= k || s >= l {
            return Err(Error::InvalidSplit { k, l, s });
        }
        Ok(s)
    }

    pub fn name(&self) -> String {
        match self {
            PartitionStrategy::Dichotomous => "dichotomous".into(),
            PartitionStrategy::OnePass => "onepass".into(),
            PartitionStrategy::ForwardBackUp => "forward".into(),
            PartitionStrategy::Fixed(u) => format!("fixed={u}"),
            PartitionStrategy::Custom(_) => "custom".into(),
        }
    }
}

impl fmt::Display for PartitionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PartitionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dichotomous" => Ok(PartitionStrategy::Dichotomous),
            "onepass" => Ok(PartitionStrategy::OnePass),
            "forward" => Ok(PartitionStrategy::ForwardBackUp),
            _ => match s.strip_prefix("fixed=") {
                Some(u) => u
                    .parse()
                    .ok()
                    .filter(|&u| u >= 1)
                    .map(PartitionStrategy::Fixed)
                    .ok_or_else(|| Error::Config(format!("bad fixed split `{u}`"))),
                None => Err(Error::Config(format!("unknown strategy `{s}`"))),
            },
        }
    }
}

/// Output of one reduction `Ã → (δ^l I, Ĝ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceResult<R> {
    pub delta_l: R,
    /// `(l−k) × (c−l)`; zero-width when `c = l`.
    pub g_hat: Mat<R>,
}

/// Intermediate blocks recorded by [`Solver::reduce_traced`]. Indices are absolute, 0-based,
/// half-open, relative to the matrix handed to the traced call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent<R> {
    /// Rows `k..l` reduced; `g_hat[i][j] = δ^l_{k+1+i, l+1+j}`.
    Reduced { k: usize, l: usize, c: usize, delta: R, g_hat: Mat<R> },
    /// Step 2 output for rows `s..l`, columns `s..c`: `block[i][j] = a^{s+1}_{s+1+i, s+1+j}`.
    Eliminated { s: usize, l: usize, c: usize, block: Mat<R> },
    /// Step 4 output for rows `k..s`, columns `l..c`: `block[i][j] = δ^l_{k+1+i, l+1+j}`.
    BackSubstituted { k: usize, s: usize, l: usize, c: usize, block: Mat<R> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<R> {
    pub events: Vec<TraceEvent<R>>,
}

impl<R> Default for Trace<R> {
    fn default() -> Self {
        Trace { events: Vec::new() }
    }
}

impl<R: Ring> Trace<R> {
    /// `δ¹ … δⁿ`, one per single-row leaf of the recursion.
    pub fn delta_sequence(&self) -> Vec<R> {
        let mut leaves: Vec<(usize, R)> = self
            .events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Reduced { k, l, delta, .. } if *l == k + 1 => Some((*l, delta.clone())),
                _ => None,
            })
            .collect();
        leaves.sort_by_key(|(l, _)| *l);
        leaves.into_iter().map(|(_, d)| d).collect()
    }

    pub fn eliminated(&self, s: usize) -> Option<&Mat<R>> {
        self.events.iter().find_map(|e| match e {
            TraceEvent::Eliminated { s: es, block, .. } if *es == s => Some(block),
            _ => None,
        })
    }
}

/// Cramer-form solution of `Σ_{j<m} a_ij x_j = a_im`.
///
/// With `x_{n+1} … x_{m−1}` free, `x_j = (δⁿ_{j,m} − Σ_p x_p δⁿ_{j,p}) / δⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSolution<R> {
    pub n: usize,
    pub m: usize,
    pub delta_n: R,
    /// `n × (m−n)`; column `q` corresponds to original column `n+q`.
    pub minors: Mat<R>,
    /// Row permutation applied before reducing, with its sign.
    pub permutation: Option<(Vec<usize>, i8)>,
}

impl<R: Ring> ParametricSolution<R> {
    pub fn is_square(&self) -> bool {
        self.m == self.n + 1
    }

    pub fn free_count(&self) -> usize {
        self.m - self.n - 1
    }

    /// Numerators of `x_1 … x_n` (all over `δⁿ`) for the given free-variable values.
    pub fn numerators(&self, free: &[R]) -> Result<Vec<R>> {
        if free.len() != self.free_count() {
            return Err(Error::Shape(format!(
                "{} free values given, system has {}",
                free.len(),
                self.free_count()
            )));
        }
        let rhs = self.m - self.n - 1;
        Ok((0..self.n)
            .map(|j| {
                free.iter().enumerate().fold(self.minors.get(j, rhs).clone(), |acc, (p, x)| {
                    acc.sub(&x.mul(self.minors.get(j, p)))
                })
            })
            .collect())
    }
}

/// Recursive reduction with a fixed partition strategy and multiplication backend.
#[derive(Debug, Clone, Copy, Default)]
pub struct Solver {
    pub strategy: PartitionStrategy,
    pub backend: MulBackend,
    /// Apply [`precondition_permute`] before reducing instead of failing on a zero corner minor.
    pub permute: bool,
}

impl Solver {
    pub fn new(strategy: PartitionStrategy, backend: MulBackend) -> Self {
        Solver { strategy, backend, permute: false }
    }

    pub fn with_permute(mut self, permute: bool) -> Self {
        self.permute = permute;
        self
    }

    /// Reduces `a_tilde → (δ^l I, Ĝ)`. Singular orders are reported relative to `a_tilde`.
    pub fn reduce<R: Ring>(
        &self,
        a_tilde: &Mat<R>,
        delta_k: Divisor<'_, R>,
        ops: &mut OpCounts,
    ) -> Result<ReduceResult<R>> {
        self.reduce_at(a_tilde, delta_k, 0, ops, None)
    }

    pub fn reduce_traced<R: Ring>(
        &self,
        a_tilde: &Mat<R>,
        delta_k: Divisor<'_, R>,
        ops: &mut OpCounts,
        trace: &mut Trace<R>,
    ) -> Result<ReduceResult<R>> {
        self.reduce_at(a_tilde, delta_k, 0, ops, Some(trace))
    }

    fn reduce_at<R: Ring>(
        &self,
        a: &Mat<R>,
        delta_k: Divisor<'_, R>,
        k: usize,
        ops: &mut OpCounts,
        mut trace: Option<&mut Trace<R>>,
    ) -> Result<ReduceResult<R>> {
        let (h, w) = a.shape();
        if h == 0 || w < h {
            return Err(Error::Shape(format!("cannot reduce a {h}x{w} block")));
        }
        let (l, c) = (k + h, k + w);

        if h == 1 {
            // a^{k+1}_{k+1,j} = δ^{k+1}_{k+1,j}
            let delta = a.get(0, 0).clone();
            if delta.is_zero() {
                return Err(Error::SingularMinor(SingularReport {
                    failing_order: k + 1,
                    permutation_applied: None,
                }));
            }
            let g_hat = a.block(0..1, 1..w)?;
            if let Some(t) = trace {
                t.events.push(TraceEvent::Reduced { k, l, c, delta: delta.clone(), g_hat: g_hat.clone() });
            }
            return Ok(ReduceResult { delta_l: delta, g_hat });
        }

        let s = self.strategy.split(k, l)?;
        let u = s - k;

        let upper = a.block(0..u, 0..w)?;
        let step1 = self.reduce_at(&upper, delta_k, k, ops, trace.as_deref_mut())?;
        let delta_s = &step1.delta_l;

        let a1_2 = a.block(u..h, 0..u)?;
        let a2_2 = a.block(u..h, u..w)?;
        let a_hat = step2_eliminate(&a1_2, &a2_2, &step1.g_hat, delta_s, delta_k, self.backend, ops)?;
        if let Some(t) = trace.as_deref_mut() {
            t.events.push(TraceEvent::Eliminated { s, l, c, block: a_hat.clone() });
        }

        let step3 = self.reduce_at(&a_hat, Divisor::By(delta_s), s, ops, trace.as_deref_mut())?;

        let g2p = step1.g_hat.block(0..u, 0..l - s)?;
        let g2pp = step1.g_hat.block(0..u, l - s..w - u)?;
        let g_hat_upper =
            step4_backsubstitute(&g2p, &g2pp, &step3.g_hat, &step3.delta_l, delta_s, self.backend, ops)?;

        let g_hat = Mat::vconcat(&[&g_hat_upper, &step3.g_hat])?;
        if let Some(t) = trace {
            t.events.push(TraceEvent::BackSubstituted { k, s, l, c, block: g_hat_upper });
            t.events.push(TraceEvent::Reduced {
                k,
                l,
                c,
                delta: step3.delta_l.clone(),
                g_hat: g_hat.clone(),
            });
        }
        Ok(ReduceResult { delta_l: step3.delta_l, g_hat })
    }

    /// Solves the system whose extended matrix is `a_ext` (`n × m`, `m > n`).
    pub fn solve<R: Ring>(&self, a_ext: &Mat<R>, ops: &mut OpCounts) -> Result<ParametricSolution<R>> {
        self.solve_inner(a_ext, ops, None)
    }

    pub fn solve_traced<R: Ring>(
        &self,
        a_ext: &Mat<R>,
        ops: &mut OpCounts,
        trace: &mut Trace<R>,
    ) -> Result<ParametricSolution<R>> {
        self.solve_inner(a_ext, ops, Some(trace))
    }

    fn solve_inner<R: Ring>(
        &self,
        a_ext: &Mat<R>,
        ops: &mut OpCounts,
        trace: Option<&mut Trace<R>>,
    ) -> Result<ParametricSolution<R>> {
        let (n, m) = a_ext.shape();
        if n == 0 || m <= n {
            return Err(Error::Shape(format!(
                "extended matrix must be n x m with m > n >= 1, got {n}x{m}"
            )));
        }
        let (work, permutation) = self.precondition(a_ext)?;
        let r = self
            .reduce_at(&work, Divisor::Unit, 0, ops, trace)
            .map_err(|e| with_permutation(e, &permutation))?;
        Ok(ParametricSolution { n, m, delta_n: r.delta_l, minors: r.g_hat, permutation })
    }

    /// Determinant of a square matrix. With `permute`, a rank-deficient input yields zero.
    pub fn determinant<R: Ring>(&self, a: &Mat<R>, ops: &mut OpCounts) -> Result<R> {
        let n = square_size(a)?;
        if n == 0 {
            return Ok(R::one());
        }
        let (work, permutation) = match self.precondition(a) {
            Err(Error::StructurallySingular(_)) => return Ok(R::zero()),
            other => other?,
        };
        let r = self
            .reduce_at(&work, Divisor::Unit, 0, ops, None)
            .map_err(|e| with_permutation(e, &permutation))?;
        Ok(apply_sign(r.delta_l, &permutation))
    }

    /// Adjugate via `(A | Iₙ) → (δⁿ Iₙ, adj A)`. Requires `det A ≠ 0`.
    pub fn adjugate<R: Ring>(&self, a: &Mat<R>, ops: &mut OpCounts) -> Result<Mat<R>> {
        let n = square_size(a)?;
        if n == 0 {
            return Ok(Mat::zeros(0, 0));
        }
        let ext = Mat::hconcat(&[a, &Mat::identity(n)])?;
        // Permuting (A | I) gives (PA | P), whose reduction yields sign·adj(A).
        let (work, permutation) = self.precondition(&ext)?;
        let r = self
            .reduce_at(&work, Divisor::Unit, 0, ops, None)
            .map_err(|e| with_permutation(e, &permutation))?;
        Ok(match &permutation {
            Some((_, -1)) => r.g_hat.map(R::neg),
            _ => r.g_hat,
        })
    }

    fn precondition<R: Ring>(&self, a: &Mat<R>) -> Result<(Mat<R>, Option<(Vec<usize>, i8)>)> {
        if !self.permute {
            return Ok((a.clone(), None));
        }
        let (perm, sign) = precondition_permute(a)?;
        Ok((a.permute_rows(&perm)?, Some((perm, sign))))
    }
}

fn square_size<R: Ring>(a: &Mat<R>) -> Result<usize> {
    if a.rows() != a.cols() {
        return Err(Error::Shape(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    Ok(a.rows())
}

fn apply_sign<R: Ring>(v: R, permutation: &Option<(Vec<usize>, i8)>) -> R {
    match permutation {
        Some((_, -1)) => v.neg(),
        _ => v,
    }
}

fn with_permutation(e: Error, permutation: &Option<(Vec<usize>, i8)>) -> Error {
    match e {
        Error::SingularMinor(mut report) => {
            report.permutation_applied = permutation.clone();
            Error::SingularMinor(report)
        }
        other => other,
    }
}

/// Step 2: `Â₂² = (δ^s·A₂² − A₁²·G₂¹) / δ^k`, the order-`(s+1)` surrounding minors of the lower
/// rows.
///
/// `a1_2` is `(l−s)×(s−k)`, `a2_2` is `(l−s)×(c−s)`, `g2_1` is `(s−k)×(c−s)`.
pub fn step2_eliminate<R: Ring>(
    a1_2: &Mat<R>,
    a2_2: &Mat<R>,
    g2_1: &Mat<R>,
    delta_s: &R,
    delta_k: Divisor<'_, R>,
    backend: MulBackend,
    ops: &mut OpCounts,
) -> Result<Mat<R>> {
    let scaled = mat_scale(delta_s, a2_2, ops);
    let product = mat_mul(a1_2, g2_1, backend, ops)?;
    let numerator = mat_sub(&scaled, &product, ops)?;
    mat_div_scalar(&numerator, delta_k, ops)
}

/// Step 4: `Ĝ₂″¹ = (δ^l·G₂″¹ − G₂′¹·Ĝ₂″²) / δ^s`, bringing the upper rows' minors from order `s`
/// to order `l`.
///
/// `g2p_1` is `(s−k)×(l−s)`, `g2pp_1` is `(s−k)×(c−l)`, `g_hat_2pp_2` is `(l−s)×(c−l)`.
pub fn step4_backsubstitute<R: Ring>(
    g2p_1: &Mat<R>,
    g2pp_1: &Mat<R>,
    g_hat_2pp_2: &Mat<R>,
    delta_l: &R,
    delta_s: &R,
    backend: MulBackend,
    ops: &mut OpCounts,
) -> Result<Mat<R>> {
    let scaled = mat_scale(delta_l, g2pp_1, ops);
    let product = mat_mul(g2p_1, g_hat_2pp_2, backend, ops)?;
    let numerator = mat_sub(&scaled, &product, ops)?;
    mat_div_scalar(&numerator, Divisor::By(delta_s), ops)
}

/// Finds a row order under which every leading minor of the first `n` columns is nonzero, using
/// fraction-free elimination with row pivoting. Returns `perm` (row `i` of the result is row
/// `perm[i]` of the input) and its sign; the identity when the input already qualifies.
pub fn precondition_permute<R: Ring>(a_ext: &Mat<R>) -> Result<(Vec<usize>, i8)> {
    let n = a_ext.rows();
    if a_ext.cols() < n {
        return Err(Error::Shape(format!("{}x{} matrix is taller than wide", n, a_ext.cols())));
    }
    let mut work: Vec<Vec<R>> = (0..n).map(|i| a_ext.row(i)[..n].to_vec()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i8;
    let mut prev = R::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !work[r][k].is_zero())
            .ok_or(Error::StructurallySingular(n))?;
        if pivot_row != k {
            work.swap(pivot_row, k);
            perm.swap(pivot_row, k);
            sign = -sign;
        }
        let (done, rest) = work.split_at_mut(k + 1);
        let pivot = &done[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let num = pivot[k].mul(&row[j]).sub(&row[k].mul(&pivot[j]));
                row[j] = num.exact_div(&prev)?;
            }
            row[k] = R::zero();
        }
        prev = work[k][k].clone();
    }
    Ok((perm, sign))
}
