//! Dense rectangular matrices over a [`Ring`], block slicing, and counted arithmetic.
//!
//! Blocks are materialized copies. Zero-height and zero-width matrices are valid everywhere and
//! act as identities for concatenation, which lets the reduction treat empty `G` blocks uniformly.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::OpCounts;
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(Mat { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers; `rows` must be rectangular.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| R::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn into_data(self) -> Vec<R> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map(&self, f: impl FnMut(&R) -> R) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Copies out the sub-block at the given half-open ranges.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Self> {
        if rows.start > rows.end || cols.start > cols.end || rows.end > self.rows || cols.end > self.cols
        {
            return Err(Error::Shape(format!(
                "block {rows:?} x {cols:?} outside {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        }))
    }

    pub fn hconcat(parts: &[&Mat<R>]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("hconcat of no parts".into()))?;
        let rows = first.rows;
        if let Some(p) = parts.iter().find(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch { op: "hconcat", left: first.shape(), right: p.shape() });
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                data.extend_from_slice(p.row(i));
            }
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn vconcat(parts: &[&Mat<R>]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("vconcat of no parts".into()))?;
        let cols = first.cols;
        if let Some(p) = parts.iter().find(|p| p.cols != cols) {
            return Err(Error::DimensionMismatch { op: "vconcat", left: first.shape(), right: p.shape() });
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let data = parts.iter().flat_map(|p| p.data.iter().cloned()).collect();
        Ok(Mat { rows, cols, data })
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rows {
            return Err(Error::Shape(format!(
                "permutation of length {} for {} rows",
                perm.len(),
                self.rows
            )));
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &src in perm {
            if src >= self.rows {
                return Err(Error::Index(format!("row {src} out of range")));
            }
            data.extend_from_slice(self.row(src));
        }
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    /// Writes `src` into `self` with its top-left corner at `(r0, c0)`.
    fn place(&mut self, r0: usize, c0: usize, src: &Mat<R>) {
        for i in 0..src.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + src.cols].clone_from_slice(src.row(i));
        }
    }
}

impl<R: fmt::Debug> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, v) in self.data[i * self.cols..(i + 1) * self.cols].iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v:?}")?;
            }
        }
        f.write_str("]")
    }
}

/// One row per line, entries separated by single spaces.
impl<R: fmt::Display> fmt::Display for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// How [`mat_mul`] multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MulBackend {
    #[default]
    Classical,
    /// Strassen recursion; products whose smallest dimension is at most `cutoff` are done
    /// classically.
    Strassen { cutoff: usize },
}

impl MulBackend {
    pub fn strassen(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::Config("strassen cutoff must be at least 1".into()));
        }
        Ok(MulBackend::Strassen { cutoff })
    }

    pub fn name(&self) -> String {
        match self {
            MulBackend::Classical => "classical".into(),
            MulBackend::Strassen { cutoff } => format!("strassen:{cutoff}"),
        }
    }
}

impl fmt::Display for MulBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Accepts `classical`, `strassen` (cutoff 8) and `strassen:<cutoff>`.
impl FromStr for MulBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "classical" => Ok(MulBackend::Classical),
            None if s == "strassen" => MulBackend::strassen(8),
            Some(("strassen", c)) => {
                let cutoff = c
                    .parse()
                    .map_err(|_| Error::Config(format!("bad strassen cutoff `{c}`")))?;
                MulBackend::strassen(cutoff)
            }
            _ => Err(Error::Config(format!("unknown multiplication backend `{s}`"))),
        }
    }
}

/// A scalar divisor that may be the structural unit `δ⁰`.
///
/// Dividing by [`Divisor::Unit`] is a no-op whose entries are tallied in
/// [`OpCounts::elided_divs`] instead of [`OpCounts::divs`]. Whether a divisor is the unit is a
/// property of where it came from, not of its value.
#[derive(Debug)]
pub enum Divisor<'a, R> {
    Unit,
    By(&'a R),
}

impl<R> Clone for Divisor<'_, R> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<R> Copy for Divisor<'_, R> {}

impl<R: Ring> Divisor<'_, R> {
    pub fn value(&self) -> R {
        match self {
            Divisor::Unit => R::one(),
            Divisor::By(d) => (*d).clone(),
        }
    }
}

pub fn mat_mul<R: Ring>(a: &Mat<R>, b: &Mat<R>, backend: MulBackend, ops: &mut OpCounts) -> Result<Mat<R>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch { op: "mat_mul", left: a.shape(), right: b.shape() });
    }
    Ok(match backend {
        MulBackend::Classical => classical(a, b, ops),
        MulBackend::Strassen { cutoff } => strassen(a, b, cutoff.max(1), ops),
    })
}

pub fn mat_add<R: Ring>(a: &Mat<R>, b: &Mat<R>, ops: &mut OpCounts) -> Result<Mat<R>> {
    entrywise(a, b, "mat_add", |x, y| ops.add(x, y))
}

pub fn mat_sub<R: Ring>(a: &Mat<R>, b: &Mat<R>, ops: &mut OpCounts) -> Result<Mat<R>> {
    entrywise(a, b, "mat_sub", |x, y| ops.sub(x, y))
}

pub fn mat_scale<R: Ring>(s: &R, a: &Mat<R>, ops: &mut OpCounts) -> Mat<R> {
    a.map(|x| ops.mul(s, x))
}

pub fn mat_div_scalar<R: Ring>(a: &Mat<R>, d: Divisor<'_, R>, ops: &mut OpCounts) -> Result<Mat<R>> {
    let d = match d {
        Divisor::Unit => {
            ops.elided_divs += a.data.len() as u64;
            return Ok(a.clone());
        }
        Divisor::By(d) => d,
    };
    let mut data = Vec::with_capacity(a.data.len());
    for (idx, x) in a.data.iter().enumerate() {
        let q = ops.exact_div(x, d).map_err(|e| Error::InexactEntry {
            row: idx / a.cols.max(1),
            col: idx % a.cols.max(1),
            source: Box::new(e),
        })?;
        data.push(q);
    }
    Ok(Mat { rows: a.rows, cols: a.cols, data })
}

fn entrywise<R: Ring>(
    a: &Mat<R>,
    b: &Mat<R>,
    op: &'static str,
    mut f: impl FnMut(&R, &R) -> R,
) -> Result<Mat<R>> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { op, left: a.shape(), right: b.shape() });
    }
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect();
    Ok(Mat { rows: a.rows, cols: a.cols, data })
}

/// Row-by-column inner products: `l·n·c` multiplications and `l·(n−1)·c` additions.
fn classical<R: Ring>(a: &Mat<R>, b: &Mat<R>, ops: &mut OpCounts) -> Mat<R> {
    let (l, n, c) = (a.rows, a.cols, b.cols);
    if n == 0 {
        return Mat::zeros(l, c);
    }
    Mat::from_fn(l, c, |i, j| {
        let row = a.row(i);
        let mut acc = ops.mul(&row[0], b.get(0, j));
        for p in 1..n {
            let t = ops.mul(&row[p], b.get(p, j));
            acc = ops.add(&acc, &t);
        }
        acc
    })
}

fn strassen<R: Ring>(a: &Mat<R>, b: &Mat<R>, cutoff: usize, ops: &mut OpCounts) -> Mat<R> {
    let (l, n, c) = (a.rows, a.cols, b.cols);
    if l == 0 || n == 0 || c == 0 {
        return Mat::zeros(l, c);
    }
    let t = l.min(n).min(c);
    if t <= cutoff {
        return classical(a, b, ops);
    }
    if l == n && n == c {
        return strassen_square(a, b, cutoff, ops);
    }
    // Rectangular: tile every dimension by the smallest one. Full t×t×t tiles recurse as squares,
    // edge tiles recurse with their own (smaller) shape.
    let chunks = |len: usize| -> Vec<Range<usize>> {
        (0..len).step_by(t).map(|s| s..(s + t).min(len)).collect()
    };
    let (rl, rn, rc) = (chunks(l), chunks(n), chunks(c));
    let mut out = Mat::zeros(l, c);
    for ri in &rl {
        for rj in &rc {
            let mut acc: Option<Mat<R>> = None;
            for rk in &rn {
                let ab = a.block(ri.clone(), rk.clone()).expect("tile in range");
                let bb = b.block(rk.clone(), rj.clone()).expect("tile in range");
                let p = strassen(&ab, &bb, cutoff, ops);
                acc = Some(match acc {
                    None => p,
                    Some(s) => mat_add(&s, &p, ops).expect("tile shapes agree"),
                });
            }
            out.place(ri.start, rj.start, &acc.expect("at least one inner tile"));
        }
    }
    out
}

/// One Strassen level on an `s×s` product; odd `s` is padded by a zero row and column.
fn strassen_square<R: Ring>(a: &Mat<R>, b: &Mat<R>, cutoff: usize, ops: &mut OpCounts) -> Mat<R> {
    let s = a.rows;
    if s % 2 == 1 {
        let pad = |m: &Mat<R>| {
            let mut p = Mat::zeros(s + 1, s + 1);
            p.place(0, 0, m);
            p
        };
        let full = strassen_square(&pad(a), &pad(b), cutoff, ops);
        return full.block(0..s, 0..s).expect("unpad in range");
    }
    let h = s / 2;
    let q = |m: &Mat<R>, i: usize, j: usize| {
        m.block(i * h..(i + 1) * h, j * h..(j + 1) * h).expect("quadrant in range")
    };
    let (a11, a12, a21, a22) = (q(a, 0, 0), q(a, 0, 1), q(a, 1, 0), q(a, 1, 1));
    let (b11, b12, b21, b22) = (q(b, 0, 0), q(b, 0, 1), q(b, 1, 0), q(b, 1, 1));

    let add = |x: &Mat<R>, y: &Mat<R>, ops: &mut OpCounts| mat_add(x, y, ops).expect("same shape");
    let sub = |x: &Mat<R>, y: &Mat<R>, ops: &mut OpCounts| mat_sub(x, y, ops).expect("same shape");

    let t1 = add(&a11, &a22, ops);
    let t2 = add(&b11, &b22, ops);
    let m1 = strassen(&t1, &t2, cutoff, ops);
    let t = add(&a21, &a22, ops);
    let m2 = strassen(&t, &b11, cutoff, ops);
    let t = sub(&b12, &b22, ops);
    let m3 = strassen(&a11, &t, cutoff, ops);
    let t = sub(&b21, &b11, ops);
    let m4 = strassen(&a22, &t, cutoff, ops);
    let t = add(&a11, &a12, ops);
    let m5 = strassen(&t, &b22, cutoff, ops);
    let t1 = sub(&a21, &a11, ops);
    let t2 = add(&b11, &b12, ops);
    let m6 = strassen(&t1, &t2, cutoff, ops);
    let t1 = sub(&a12, &a22, ops);
    let t2 = add(&b21, &b22, ops);
    let m7 = strassen(&t1, &t2, cutoff, ops);

    let c11 = add(&sub(&add(&m1, &m4, ops), &m5, ops), &m7, ops);
    let c12 = add(&m3, &m5, ops);
    let c21 = add(&m2, &m4, ops);
    let c22 = add(&add(&sub(&m1, &m2, ops), &m3, ops), &m6, ops);

    let mut out = Mat::zeros(s, s);
    out.place(0, 0, &c11);
    out.place(0, h, &c12);
    out.place(h, 0, &c21);
    out.place(h, h, &c22);
    out
}
