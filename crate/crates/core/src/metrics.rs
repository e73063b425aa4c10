//! Operation counting and exact operation-count predictors.
//!
//! # Counting convention
//!
//! Every addition/subtraction, multiplication and exact division performed on ring elements is
//! tallied, with one exception: a division whose divisor is the structural unit `δ⁰` is not
//! performed at all and is tallied in [`OpCounts::elided_divs`] instead of [`OpCounts::divs`].
//! `δ⁰` only ever appears as a divisor, so no multiplication is skipped. Under this convention the
//! dichotomous classical reduction reproduces `A_{nm}`, `M_{nm}`, `D_{nm}` exactly, and
//! `muls + divs + elided_divs` under Strassen reproduces `MD^S_{n,n+1}`.

use std::fmt;
use std::io::Write;
use std::ops::{Add, AddAssign, Range};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::matrix::MulBackend;
use crate::random::{random_system, seeded};
use crate::ring::{IntElem, Ring};
use crate::solver::{PartitionStrategy, Solver};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    /// Additions and subtractions.
    pub adds: u64,
    pub muls: u64,
    /// Exact divisions actually performed.
    pub divs: u64,
    /// Divisions by the structural unit `δ⁰`, skipped.
    pub elided_divs: u64,
}

impl OpCounts {
    pub fn add<R: Ring>(&mut self, a: &R, b: &R) -> R {
        self.adds += 1;
        a.add(b)
    }

    pub fn sub<R: Ring>(&mut self, a: &R, b: &R) -> R {
        self.adds += 1;
        a.sub(b)
    }

    pub fn mul<R: Ring>(&mut self, a: &R, b: &R) -> R {
        self.muls += 1;
        a.mul(b)
    }

    pub fn exact_div<R: Ring>(&mut self, a: &R, b: &R) -> Result<R> {
        self.divs += 1;
        a.exact_div(b)
    }

    /// Multiplications plus performed divisions.
    pub fn mul_div(&self) -> u64 {
        self.muls + self.divs
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(mut self, rhs: OpCounts) -> OpCounts {
        self += rhs;
        self
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        self.adds += rhs.adds;
        self.muls += rhs.muls;
        self.divs += rhs.divs;
        self.elided_divs += rhs.elided_divs;
    }
}

impl fmt::Display for OpCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "adds={} muls={} divs={}", self.adds, self.muls, self.divs)
    }
}

/// Closed-form operation counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictedCounts {
    pub a_nm: u64,
    pub m_nm: u64,
    pub d_nm: u64,
    /// Strassen multiplications plus divisions; only for `m = n + 1`.
    pub md_strassen: Option<u64>,
}

fn log2_exact(n: usize, min: usize) -> Result<i128> {
    if n < min || !n.is_power_of_two() {
        return Err(Error::Domain(format!("n = {n} is not a power of two >= {min}")));
    }
    Ok(n.trailing_zeros() as i128)
}

/// `num / den`, insisting that it is a non-negative integer.
fn integral(num: i128, den: i128, what: &str) -> Result<u64> {
    if num % den != 0 || num < 0 {
        return Err(Error::Domain(format!("{what} evaluates to {num}/{den}, not a count")));
    }
    Ok((num / den) as u64)
}

/// `A_{nm}`, `M_{nm}`, `D_{nm}` for the dichotomous reduction with classical products
/// (`n = 2^p`, `m > n`), plus `MD^S_{n,n+1}` when `m = n + 1` and `n ≥ 2`.
pub fn predict_classical(n: usize, m: usize) -> Result<PredictedCounts> {
    let p = log2_exact(n, 1)?;
    if m <= n {
        return Err(Error::Domain(format!("need m > n, got n = {n}, m = {m}")));
    }
    let (n_, m_) = (n as i128, m as i128);
    let a = 6 * n_ * n_ * m_ - 4 * n_.pow(3) - 6 * n_ * m_ + 3 * n_ * n_ + n_;
    let mm = 6 * n_ * n_ * m_ - 4 * n_.pow(3) + (6 * n_ * m_ - 3 * n_ * n_) * p - 6 * n_ * m_ + 4 * n_;
    let d = (6 * n_ * m_ - 3 * n_ * n_) * p - 6 * n_ * m_ - n_ * n_ + 6 * m_ + 3 * n_ - 2;
    let md_strassen = if m == n + 1 && n >= 2 { Some(predict_strassen_md(n)?) } else { None };
    Ok(PredictedCounts {
        a_nm: integral(a, 6, "A_nm")?,
        m_nm: integral(mm, 6, "M_nm")?,
        d_nm: integral(d, 6, "D_nm")?,
        md_strassen,
    })
}

/// `A^O`, `M^O`, `D^O` of the one-pass method for an `n × (n+1)` system.
pub fn predict_one_pass(n: usize) -> Result<PredictedCounts> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let n_ = n as i128;
    Ok(PredictedCounts {
        a_nm: integral(2 * n_.pow(3) + 3 * n_ * n_ - 5 * n_, 6, "A^O")?,
        m_nm: integral(n_.pow(3) + 2 * n_ * n_ - n_ - 2, 2, "M^O")?,
        d_nm: integral(n_.pow(3) - 7 * n_ + 6, 6, "D^O")?,
        md_strassen: None,
    })
}

/// `MD^S_{n,n+1} = 7/15·n^{log₂7} + n²(log₂n − 2/3) + n(2·log₂n + 1/5)` for `n = 2^p ≥ 2`,
/// evaluated over a common denominator of 15.
pub fn predict_strassen_md(n: usize) -> Result<u64> {
    let p = log2_exact(n, 2)?;
    let n_ = n as i128;
    let seven_pow = 7i128.pow(p as u32); // n^{log₂7}
    let num = 7 * seven_pow + 15 * n_ * n_ * p - 10 * n_ * n_ + 30 * n_ * p + 3 * n_;
    integral(num, 15, "MD^S")
}

/// Cost of one `l×n · n×c` product under `backend`, mirroring [`crate::matrix::mat_mul`].
pub fn predict_mul(l: usize, n: usize, c: usize, backend: MulBackend) -> OpCounts {
    match backend {
        MulBackend::Classical => classical_cost(l, n, c),
        MulBackend::Strassen { cutoff } => strassen_cost(l, n, c, cutoff.max(1)),
    }
}

fn classical_cost(l: usize, n: usize, c: usize) -> OpCounts {
    if l == 0 || n == 0 || c == 0 {
        return OpCounts::default();
    }
    let (l, n, c) = (l as u64, n as u64, c as u64);
    OpCounts { adds: l * (n - 1) * c, muls: l * n * c, ..OpCounts::default() }
}

fn strassen_cost(l: usize, n: usize, c: usize, cutoff: usize) -> OpCounts {
    if l == 0 || n == 0 || c == 0 {
        return OpCounts::default();
    }
    let t = l.min(n).min(c);
    if t <= cutoff {
        return classical_cost(l, n, c);
    }
    if l == n && n == c {
        let s = l + l % 2;
        let h = s / 2;
        let mut sub = strassen_cost(h, h, h, cutoff);
        sub.adds *= 7;
        sub.muls *= 7;
        sub.adds += 18 * (h * h) as u64;
        return sub;
    }
    let chunks = |len: usize| -> Vec<Range<usize>> {
        (0..len).step_by(t).map(|s| s..(s + t).min(len)).collect()
    };
    let (rl, rn, rc) = (chunks(l), chunks(n), chunks(c));
    let mut total = OpCounts::default();
    for ri in &rl {
        for rj in &rc {
            for rk in &rn {
                total += strassen_cost(ri.len(), rk.len(), rj.len(), cutoff);
            }
            total.adds += ((rn.len() - 1) * ri.len() * rj.len()) as u64;
        }
    }
    total
}

/// Walks the reduction's recursion tree for an `n × m` system without touching ring elements and
/// returns the counts instrumentation would report.
pub fn predict_tree(n: usize, m: usize, strategy: PartitionStrategy, backend: MulBackend) -> Result<OpCounts> {
    if n == 0 || m < n {
        return Err(Error::Shape(format!("cannot predict a {n}x{m} reduction")));
    }
    let mut acc = OpCounts::default();
    tree_cost(0, n, m, true, strategy, backend, &mut acc)?;
    Ok(acc)
}

fn tree_cost(
    k: usize,
    h: usize,
    w: usize,
    unit_divisor: bool,
    strategy: PartitionStrategy,
    backend: MulBackend,
    acc: &mut OpCounts,
) -> Result<()> {
    if h == 1 {
        return Ok(());
    }
    let s = strategy.split(k, k + h)?;
    let (u, d) = (s - k, k + h - s);
    tree_cost(k, u, w, unit_divisor, strategy, backend, acc)?;

    let cells = (d * (w - u)) as u64;
    *acc += predict_mul(d, u, w - u, backend);
    acc.muls += cells;
    acc.adds += cells;
    if unit_divisor {
        acc.elided_divs += cells;
    } else {
        acc.divs += cells;
    }

    tree_cost(s, d, w - u, false, strategy, backend, acc)?;

    let cells = (u * (w - h)) as u64;
    *acc += predict_mul(u, d, w - h, backend);
    acc.muls += cells;
    acc.adds += cells;
    acc.divs += cells;
    Ok(())
}

/// One size of a complexity sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub strategy: String,
    pub backend: String,
    /// Instrumented counts, or the solver error for this row.
    pub outcome: std::result::Result<OpCounts, String>,
    pub predicted: Option<OpCounts>,
    pub wall_ns: u128,
    /// `log(muls_i / muls_{i−1}) / log(n_i / n_{i−1})` against the previous successful row.
    pub mul_exponent: Option<f64>,
}

/// Solves one random `n × (n+1)` integer system per size (entries in `[−9, 9]`, permuted when a
/// corner minor vanishes) and records instrumented and predicted counts.
pub fn sweep(sizes: &[usize], strategy: PartitionStrategy, backend: MulBackend, seed: u64) -> Result<Vec<SweepRow>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes.first() == Some(&0) {
        return Err(Error::Config("sweep sizes must be positive and strictly ascending".into()));
    }
    let solver = Solver::new(strategy, backend).with_permute(true);
    let mut rng = seeded(seed);
    let mut rows = Vec::with_capacity(sizes.len());
    let mut prev: Option<(usize, u64)> = None;
    for &n in sizes {
        let m = n + 1;
        let system = random_system::<IntElem, _>(n, m, 9, &mut rng);
        let mut ops = OpCounts::default();
        let start = Instant::now();
        let outcome = solver.solve(&system, &mut ops).map(|_| ops).map_err(|e| e.to_string());
        let wall_ns = start.elapsed().as_nanos();
        let mul_exponent = match (&outcome, prev) {
            (Ok(c), Some((pn, pm))) if pm > 0 && c.muls > 0 => {
                Some((c.muls as f64 / pm as f64).ln() / (n as f64 / pn as f64).ln())
            }
            _ => None,
        };
        if let Ok(c) = &outcome {
            prev = Some((n, c.muls));
        }
        rows.push(SweepRow {
            n,
            m,
            strategy: strategy.name(),
            backend: backend.name(),
            outcome,
            predicted: predict_tree(n, m, strategy, backend).ok(),
            wall_ns,
            mul_exponent,
        });
    }
    Ok(rows)
}

pub const SWEEP_CSV_HEADER: [&str; 11] = [
    "size_n",
    "size_m",
    "strategy",
    "backend",
    "adds",
    "muls",
    "divs",
    "predicted_adds",
    "predicted_muls",
    "predicted_divs",
    "wall_ns",
];

/// Writes the sweep as CSV; failed rows leave the count columns empty.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_CSV_HEADER)?;
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        let got = r.outcome.as_ref().ok();
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.strategy.clone(),
            r.backend.clone(),
            opt(got.map(|c| c.adds)),
            opt(got.map(|c| c.muls)),
            opt(got.map(|c| c.divs)),
            opt(r.predicted.map(|c| c.adds)),
            opt(r.predicted.map(|c| c.muls)),
            opt(r.predicted.map(|c| c.divs)),
            r.wall_ns.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
