//! Commutative integral domains with exact division.
//!
//! The reduction only ever needs `+`, `-`, `*` and an *exact* division whose quotient is known to
//! lie in the domain. [`Ring`] captures that contract; [`IntElem`] (arbitrary-precision integers)
//! and [`PolyElem`] (dense polynomials in `Z[t]`) are the two shipped domains.
//!
//! Elements are immutable values. The arithmetic here is uncounted; the counted entry points live
//! on [`OpCounts`](crate::metrics::OpCounts).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};

/// Which concrete domain a matrix or problem file uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Int,
    Poly,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::Int => "int",
            DomainKind::Poly => "poly",
        })
    }
}

impl FromStr for DomainKind {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "int" => Ok(DomainKind::Int),
            "poly" => Ok(DomainKind::Poly),
            other => Err(ParseError::new(0, format!("unknown domain `{other}`"))),
        }
    }
}

/// An element of a commutative integral domain.
///
/// Implementations must satisfy the ring axioms, have no zero divisors, and make
/// `a.mul(b).exact_div(b) == Ok(a)` for every `b != 0`. `Display` is the canonical text form and
/// must round-trip through [`Ring::parse`].
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: DomainKind;

    fn zero() -> Self;
    fn one() -> Self;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_i64(v: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Returns `q` with `q * divisor == self`, or an error if no such `q` exists in the domain.
    fn exact_div(&self, divisor: &Self) -> Result<Self>;

    fn parse(text: &str) -> std::result::Result<Self, ParseError>;
}

/// Parses an optionally signed decimal integer, reporting offsets relative to `base`.
fn parse_bigint(text: &str, base: usize) -> std::result::Result<BigInt, ParseError> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() {
        return Err(ParseError::new(base + text.len(), "expected digits"));
    }
    if let Some(bad) = digits.find(|c: char| !c.is_ascii_digit()) {
        let off = base + (text.len() - digits.len()) + bad;
        return Err(ParseError::new(off, format!("unexpected character in integer `{text}`")));
    }
    text.parse::<BigInt>()
        .map_err(|e| ParseError::new(base, e.to_string()))
}

/// Arbitrary-precision integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntElem(pub BigInt);

impl IntElem {
    pub fn value(&self) -> &BigInt {
        &self.0
    }
}

impl From<BigInt> for IntElem {
    fn from(v: BigInt) -> Self {
        IntElem(v)
    }
}

impl From<i64> for IntElem {
    fn from(v: i64) -> Self {
        IntElem(BigInt::from(v))
    }
}

impl fmt::Debug for IntElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for IntElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for IntElem {
    const KIND: DomainKind = DomainKind::Int;

    fn zero() -> Self {
        IntElem(BigInt::zero())
    }

    fn one() -> Self {
        IntElem(BigInt::one())
    }

    fn from_i64(v: i64) -> Self {
        IntElem(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        IntElem(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        IntElem(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        IntElem(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        IntElem(-&self.0)
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if !r.is_zero() {
            return Err(Error::NonzeroRemainder {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
                remainder: r.to_string(),
            });
        }
        Ok(IntElem(q))
    }

    fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        parse_bigint(text, 0).map(IntElem)
    }
}

/// Dense univariate polynomial with integer coefficients, lowest degree first.
///
/// Invariant: no trailing zero coefficient, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyElem {
    coeffs: Vec<BigInt>,
}

impl PolyElem {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyElem { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True when the leading coefficient is negative.
    pub fn is_negative(&self) -> bool {
        self.coeffs.last().is_some_and(Signed::is_negative)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn remainder_error(&self, divisor: &Self, rem: Vec<BigInt>) -> Error {
        Error::NonzeroRemainder {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
            remainder: PolyElem::new(rem).to_string(),
        }
    }
}

impl fmt::Debug for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("[0]");
        }
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Ring for PolyElem {
    const KIND: DomainKind = DomainKind::Poly;

    fn zero() -> Self {
        PolyElem { coeffs: Vec::new() }
    }

    fn one() -> Self {
        PolyElem { coeffs: vec![BigInt::one()] }
    }

    fn from_i64(v: i64) -> Self {
        PolyElem::new(vec![BigInt::from(v)])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (&self.coeffs, &rhs.coeffs)
        } else {
            (&rhs.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o += s;
        }
        PolyElem::new(out)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); len];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o += c;
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        PolyElem::new(out)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyElem::new(out)
    }

    fn neg(&self) -> Self {
        PolyElem { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Coefficient-wise long division from the top degree down. Fails as soon as a leading
    /// coefficient is not divisible, or if anything is left over at the end.
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < dd {
            return Err(self.remainder_error(divisor, self.coeffs.clone()));
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - dd + 1];
        for shift in (0..=da - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(self.remainder_error(divisor, rem));
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * d;
            }
            quot[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(self.remainder_error(divisor, rem));
        }
        Ok(PolyElem::new(quot))
    }

    /// Grammar: `[c0,c1,...,ck]`, ascending degree, no trailing zero except `[0]`.
    fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let inner = text
            .strip_prefix('[')
            .ok_or_else(|| ParseError::new(0, "polynomial must start with `[`"))?;
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| ParseError::new(text.len(), "polynomial must end with `]`"))?;
        if inner.is_empty() {
            return Err(ParseError::new(1, "empty coefficient list; write [0] for zero"));
        }
        let mut coeffs = Vec::new();
        let mut pos = 1;
        for part in inner.split(',') {
            coeffs.push(parse_bigint(part, pos)?);
            pos += part.len() + 1;
        }
        if coeffs.len() == 1 && coeffs[0].is_zero() {
            return Ok(Self::zero());
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(ParseError::new(text.len() - 1, "trailing zero coefficient"));
        }
        Ok(PolyElem { coeffs })
    }
}
