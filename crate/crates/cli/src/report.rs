//! Text rendering of solutions.

use std::fmt::Write as _;

use ffblock::{IntElem, Mat, ParametricSolution, PolyElem, Ring};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Variable name for 0-based column `j`.
pub fn var(j: usize) -> String {
    format!("x{}", j + 1)
}

pub fn matrix_block<R: Ring>(title: &str, a: &Mat<R>) -> String {
    let mut out = format!("{title}:\n");
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(ToString::to_string).collect();
        writeln!(out, "  {}", row.join(" ")).unwrap();
    }
    out
}

fn ratio(num: &IntElem, den: &IntElem) -> BigRational {
    BigRational::new(num.0.clone(), den.0.clone())
}

/// Solution report over the integers: reduced rationals, or an affine formula per bound variable.
pub fn int_solution(sol: &ParametricSolution<IntElem>) -> String {
    let mut out = String::new();
    let d = &sol.delta_n;
    if sol.is_square() {
        let x: Vec<String> = sol.minors.column(0).iter().map(|v| ratio(v, d).to_string()).collect();
        writeln!(out, "delta = {d}; x = ({})", x.join(", ")).unwrap();
        out.push_str(&matrix_block("minors", &sol.minors));
        return out;
    }
    let rhs = sol.free_count();
    let free: Vec<String> = (sol.n..sol.m - 1).map(var).collect();
    writeln!(out, "delta = {d}; free: {}", free.join(", ")).unwrap();
    for j in 0..sol.n {
        let mut terms = Vec::new();
        let constant = ratio(sol.minors.get(j, rhs), d);
        if !constant.is_zero() {
            terms.push((constant, String::new()));
        }
        for (p, name) in free.iter().enumerate() {
            let c = -ratio(sol.minors.get(j, p), d);
            if !c.is_zero() {
                terms.push((c, name.clone()));
            }
        }
        writeln!(out, "{} = {}", var(j), affine(&terms)).unwrap();
    }
    out.push_str(&matrix_block("minors", &sol.minors));
    out
}

/// `c0 + c1*x4 - c2*x5`, with unit coefficients left implicit.
fn affine(terms: &[(BigRational, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (c, name)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (idx, c.is_negative()) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if name.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(name);
        } else {
            write!(s, "{mag}*{name}").unwrap();
        }
    }
    s
}

/// Solution report over Z[t]: numerators over `δⁿ`, no field arithmetic.
pub fn poly_solution(sol: &ParametricSolution<PolyElem>) -> String {
    let mut out = String::new();
    let d = &sol.delta_n;
    let rhs = sol.free_count();
    if sol.is_square() {
        let x: Vec<String> = sol.minors.column(0).iter().map(|v| format!("{v}/{d}")).collect();
        writeln!(out, "delta = {d}; x = ({})", x.join(", ")).unwrap();
    } else {
        let free: Vec<String> = (sol.n..sol.m - 1).map(var).collect();
        writeln!(out, "delta = {d}; free: {}", free.join(", ")).unwrap();
        for j in 0..sol.n {
            let mut num = sol.minors.get(j, rhs).to_string();
            for (p, name) in free.iter().enumerate() {
                let c = sol.minors.get(j, p);
                if !c.is_zero() {
                    write!(num, " - {c}*{name}").unwrap();
                }
            }
            writeln!(out, "{} = ({num})/{d}", var(j)).unwrap();
        }
    }
    out.push_str(&matrix_block("minors", &sol.minors));
    out
}
