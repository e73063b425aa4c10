//! The problem file format:
//!
//! ```text
//! domain: int
//! 4 5
//! 3 1 1 -1 4
//! 1 2 0 1 4
//! 0 1 2 0 -2
//! 1 0 0 2 -1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Polynomial entries use the ring grammar
//! (`[c0,c1,...]`) and may not contain spaces.

use std::fmt::Write as _;

use ffblock::{DomainKind, Error, IntElem, Mat, ParseError, PolyElem, Ring};

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Int(Mat<IntElem>),
    Poly(Mat<PolyElem>),
}

impl Problem {
    pub fn kind(&self) -> DomainKind {
        match self {
            Problem::Int(_) => DomainKind::Int,
            Problem::Poly(_) => DomainKind::Poly,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            Problem::Int(a) => a.shape(),
            Problem::Poly(a) => a.shape(),
        }
    }
}

/// Parses a problem file. `domain` overrides the header's domain when given.
pub fn parse_problem(text: &str, domain: Option<DomainKind>) -> Result<Problem, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, offset_of(text, l), l))
        .filter(|(_, _, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (no, off, header) = lines.next().ok_or_else(|| ParseError::new(0, "empty problem file"))?;
    let kind_text = header
        .trim()
        .strip_prefix("domain:")
        .ok_or_else(|| ParseError::new(off, format!("line {no}: expected `domain: int|poly`")))?;
    let declared: DomainKind = kind_text
        .trim()
        .parse()
        .map_err(|_| ParseError::new(off, format!("line {no}: unknown domain `{}`", kind_text.trim())))?;

    let (no, off, dims) = lines.next().ok_or_else(|| ParseError::new(text.len(), "missing `n m` line"))?;
    let nums: Vec<&str> = dims.split_whitespace().collect();
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| ParseError::new(off, format!("line {no}: `{s}` is not a dimension")))
    };
    let (n, m) = match nums.as_slice() {
        [a, b] => (parse_dim(a)?, parse_dim(b)?),
        _ => return Err(ParseError::new(off, format!("line {no}: expected `n m`")).into()),
    };

    let rows: Vec<(usize, usize, &str)> = lines.collect();
    if rows.len() != n {
        return Err(ParseError::new(text.len(), format!("expected {n} matrix rows, found {}", rows.len())).into());
    }

    match (declared, domain.unwrap_or(declared)) {
        (_, DomainKind::Int) => Ok(Problem::Int(parse_rows(text, &rows, m)?)),
        // integers embed as constant polynomials
        (DomainKind::Int, DomainKind::Poly) => {
            let a: Mat<IntElem> = parse_rows(text, &rows, m)?;
            Ok(Problem::Poly(Mat::from_fn(a.rows(), a.cols(), |i, j| PolyElem::new(vec![a.get(i, j).0.clone()]))))
        }
        (DomainKind::Poly, DomainKind::Poly) => Ok(Problem::Poly(parse_rows(text, &rows, m)?)),
    }
}

fn parse_rows<R: Ring>(text: &str, rows: &[(usize, usize, &str)], m: usize) -> Result<Mat<R>, Error> {
    let mut data = Vec::with_capacity(rows.len() * m);
    for &(no, off, line) in rows {
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != m {
            return Err(ParseError::new(off, format!("line {no}: expected {m} entries, found {}", entries.len())).into());
        }
        for e in entries {
            let at = offset_of(text, e);
            let v = R::parse(e).map_err(|err| ParseError::new(at + err.pos, format!("line {no}: {}", err.msg)))?;
            data.push(v);
        }
    }
    Mat::new(rows.len(), m, data)
}

/// Byte offset of `part` (a subslice of `whole`) within `whole`.
fn offset_of(whole: &str, part: &str) -> usize {
    part.as_ptr() as usize - whole.as_ptr() as usize
}

/// Serialises a matrix in the problem file format.
pub fn render_problem<R: Ring>(a: &Mat<R>) -> String {
    let mut out = format!("domain: {}\n{} {}\n", R::KIND, a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(ToString::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}
