//! Textual polynomial syntax shared by the printers and the CLI.
//!
//! Grammar (whitespace ignored, case-sensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | 'T' | 'X' | 'u' | 'z' | 'g1' .. 'g9' | '(' expr ')'
//! ```
//!
//! Integers are read modulo `p`. `u` is the generator of `F_q` over `F_p`
//! (the class of `x` modulo the canonical modulus); `z` is the generator of
//! an explicit extension of `F_q`.

use std::collections::BTreeMap;

use crate::algebra::{APoly, ExtElem, ExtField, FiniteField, FqElem, FqField, MPoly};
use crate::error::{Error, Result};

const VAR_T: usize = 0;
const VAR_Z: usize = 10;
const VAR_X: usize = 11;
const NVARS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Int(u64),
    Var(usize),
    U,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?} at offset {}", self.src, self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().map_err(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some('T') => {
                self.pos += 1;
                Ok(Expr::Var(VAR_T))
            }
            Some('X') => {
                self.pos += 1;
                Ok(Expr::Var(VAR_X))
            }
            Some('z') => {
                self.pos += 1;
                Ok(Expr::Var(VAR_Z))
            }
            Some('u') => {
                self.pos += 1;
                Ok(Expr::U)
            }
            Some('g') => {
                self.pos += 1;
                match self.peek() {
                    Some(d @ '1'..='9') => {
                        self.pos += 1;
                        Ok(Expr::Var(d as usize - '0' as usize))
                    }
                    _ => Err(self.err("expected g1..g9")),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

fn eval(f: &FqField, e: &Expr) -> MPoly {
    match e {
        Expr::Int(n) => MPoly::constant(f, NVARS, f.from_int((n % f.p()) as i64)),
        Expr::Var(i) => MPoly::var(f, NVARS, *i),
        Expr::U => MPoly::constant(f, NVARS, f.generator()),
        Expr::Add(a, b) => eval(f, a).add(&eval(f, b)),
        Expr::Sub(a, b) => eval(f, a).sub(&eval(f, b)),
        Expr::Mul(a, b) => eval(f, a).mul(&eval(f, b)),
        Expr::Pow(a, k) => {
            let base = eval(f, a);
            let mut acc = MPoly::one(f, NVARS);
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            acc
        }
    }
}

fn parse_full(f: &FqField, src: &str) -> Result<MPoly> {
    if f.e() == 1 && src.contains('u') {
        return Err(Error::Parse(format!("'u' is undefined over the prime field F_{}", f.p())));
    }
    Ok(eval(f, &parse_expr(src)?))
}

fn only_vars(m: &MPoly, allowed: &[usize], src: &str) -> Result<()> {
    for (e, _) in m.terms_desc() {
        for (i, &k) in e.iter().enumerate() {
            if k > 0 && !allowed.contains(&i) {
                return Err(Error::Parse(format!("unexpected variable in {src:?}")));
            }
        }
    }
    Ok(())
}

/// Parses an element of `A = F_q[T]`.
pub fn parse_apoly(f: &FqField, src: &str) -> Result<APoly> {
    let m = parse_full(f, src)?;
    only_vars(&m, &[VAR_T], src)?;
    let deg = m.degree_in(VAR_T).unwrap_or(0) as usize;
    let mut coeffs = vec![f.zero(); deg + 1];
    for (e, c) in m.terms_desc() {
        coeffs[e[VAR_T] as usize] = *c;
    }
    Ok(APoly::from_coeffs(f, coeffs))
}

/// Parses an element of `F_q[T, g1, ..., g_{nvars-1}]`.
pub fn parse_mpoly(f: &FqField, nvars: usize, src: &str) -> Result<MPoly> {
    let m = parse_full(f, src)?;
    let allowed: Vec<usize> = (0..nvars).collect();
    only_vars(&m, &allowed, src)?;
    let mut out = MPoly::zero(f, nvars);
    for (e, c) in m.terms_desc() {
        out = out.add(&MPoly::monomial(f, e[..nvars].to_vec(), *c));
    }
    Ok(out)
}

/// Parses a polynomial in `z` and evaluates it at the generator of `field`.
pub fn parse_ext_elem(field: &ExtField, src: &str) -> Result<ExtElem> {
    let f = field.fq();
    let m = parse_full(f, src)?;
    only_vars(&m, &[VAR_Z], src)?;
    let z = field.generator();
    let mut out = field.zero();
    for (e, c) in m.terms_desc() {
        let term = field.scale(*c, &field.pow_u64(&z, e[VAR_Z]));
        out = field.add(&out, &term);
    }
    Ok(out)
}

/// Parses a comma-separated list of `name=POLY` assignments.
pub fn parse_assignments(f: &FqField, src: &str) -> Result<BTreeMap<String, APoly>> {
    let mut out = BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=POLY, got {part:?}")))?;
        let name = name.trim();
        let valid = name.len() == 2 && name.starts_with('g') && name.as_bytes()[1].is_ascii_digit() && name != "g0";
        if !valid {
            return Err(Error::Parse(format!("unknown generator {name:?}")));
        }
        out.insert(name.to_string(), parse_apoly(f, value)?);
    }
    Ok(out)
}

/// A scalar of `F_q`: an integer for prime fields, a polynomial in `u` otherwise.
pub fn format_fq(f: &FqField, c: FqElem) -> String {
    if f.e() == 1 {
        return c.value().to_string();
    }
    let digits = f.digits(c);
    let terms: Vec<(String, String)> = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, d)| **d != 0)
        .map(|(k, d)| (d.to_string(), power("u", k as u64)))
        .collect();
    join_terms(&terms, "")
}

fn power(var: &str, k: u64) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Joins `(coefficient, monomial)` pairs. Coefficients equal to `1` are
/// dropped in front of a monomial; sums are parenthesized.
fn join_terms(terms: &[(String, String)], sep: &str) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(c, m)| {
            if m.is_empty() {
                c.clone()
            } else if c == "1" {
                m.clone()
            } else if c.contains('+') {
                format!("({c})*{m}")
            } else {
                format!("{c}*{m}")
            }
        })
        .collect();
    parts.join(&format!("{sep}+{sep}"))
}

/// An element of `A`, highest power first, e.g. `T^2+T`.
pub fn format_apoly(a: &APoly) -> String {
    let f = a.field();
    let terms: Vec<(String, String)> = a
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.value() != 0)
        .map(|(k, c)| (format_fq(f, *c), power("T", k as u64)))
        .collect();
    join_terms(&terms, "")
}

/// A polynomial in `X` over `A/NA` from constant-first coefficients,
/// e.g. `X^2 + (T+1)*X + 1`.
pub fn format_char_poly(coeffs: &[APoly]) -> String {
    let terms: Vec<(String, String)> =
        coeffs.iter().enumerate().rev().map(|(k, c)| (format_apoly(c), power("X", k as u64))).collect();
    format_operator(&terms)
}

/// An element of `F_q[T, g1, ...]`, terms in descending lexicographic order.
pub fn format_mpoly(m: &MPoly) -> String {
    let f = m.field();
    let terms: Vec<(String, String)> = m
        .terms_desc()
        .map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| power(&crate::algebra::mpoly::generator_name(i), *k))
                .collect();
            (format_fq(f, *c), mono.join("*"))
        })
        .collect();
    join_terms(&terms, "")
}

/// An element of a finite field given by `F_q`-coordinates: a polynomial
/// in `z` when the coordinates are on the power basis, else a vector.
pub fn format_field_coords(f: &FqField, coords: &[FqElem], power_basis: bool) -> String {
    if coords.len() == 1 {
        return format_fq(f, coords[0]);
    }
    if !power_basis {
        let parts: Vec<String> = coords.iter().map(|c| format_fq(f, *c)).collect();
        return format!("[{}]", parts.join(","));
    }
    let terms: Vec<(String, String)> = coords
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| c.value() != 0)
        .map(|(k, c)| (format_fq(f, *c), power("z", k as u64)))
        .collect();
    join_terms(&terms, "")
}

/// Formats `sum c_i * var_i` given already formatted coefficients and
/// monomials; terms are separated by ` + `.
pub fn format_operator(terms: &[(String, String)]) -> String {
    let nonzero: Vec<(String, String)> = terms.iter().filter(|(c, _)| c != "0").cloned().collect();
    join_terms(&nonzero, " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apoly_round_trip() {
        let f = FqField::new(3, 1).unwrap();
        for src in ["T^2+T", "2*T^3+1", "0", "T", "1"] {
            let a = parse_apoly(&f, src).unwrap();
            assert_eq!(format_apoly(&a), src);
        }
        assert_eq!(parse_apoly(&f, "(T+1)*(T+2)").unwrap(), APoly::from_ints(&f, &[2, 0, 1]));
        assert_eq!(parse_apoly(&f, "T - 1").unwrap(), APoly::from_ints(&f, &[2, 1]));
        assert_eq!(parse_apoly(&f, " T ^ 2 + 4 ").unwrap(), APoly::from_ints(&f, &[1, 0, 1]));
    }

    #[test]
    fn extension_scalars() {
        let f = FqField::new(2, 2).unwrap();
        let a = parse_apoly(&f, "u*T + u^2").unwrap();
        // u^2 = u + 1 in F_4
        assert_eq!(format_apoly(&a), "u*T+u+1");
        assert_eq!(parse_apoly(&f, &format_apoly(&a)).unwrap(), a);
        let f2 = FqField::new(2, 1).unwrap();
        assert!(parse_apoly(&f2, "u").is_err());
    }

    #[test]
    fn mpoly_printing() {
        let f = FqField::new(2, 1).unwrap();
        let m = parse_mpoly(&f, 3, "T*g1 + g2^2 + T^2 + 1").unwrap();
        assert_eq!(format_mpoly(&m), "T^2+T*g1+g2^2+1");
        assert!(parse_mpoly(&f, 2, "g2").is_err());
    }

    #[test]
    fn char_poly_printing() {
        let f = FqField::new(2, 1).unwrap();
        let cp = [APoly::one(&f), APoly::from_ints(&f, &[1, 1]), APoly::one(&f)];
        assert_eq!(format_char_poly(&cp), "X^2 + (T+1)*X + 1");
        let cp = [APoly::one(&f), APoly::zero(&f), APoly::one(&f)];
        assert_eq!(format_char_poly(&cp), "X^2 + 1");
    }

    #[test]
    fn rejects_malformed_input() {
        let f = FqField::new(2, 1).unwrap();
        for bad in ["", "T+", "(T", "T^", "Y", "g0", "T)"] {
            assert!(matches!(parse_apoly(&f, bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(parse_apoly(&f, "X").is_err());
    }

    #[test]
    fn assignments() {
        let f = FqField::new(2, 1).unwrap();
        let a = parse_assignments(&f, "g1=T+1, g2=0").unwrap();
        assert_eq!(a["g1"], APoly::from_ints(&f, &[1, 1]));
        assert!(parse_assignments(&f, "h=1").is_err());
    }

    #[test]
    fn operator_layout() {
        let terms = vec![
            ("T^2".to_string(), "X".to_string()),
            ("T^2+T".to_string(), "X^2".to_string()),
            ("1".to_string(), "X^4".to_string()),
        ];
        assert_eq!(format_operator(&terms), "T^2*X + (T^2+T)*X^2 + X^4");
    }

    #[test]
    fn extension_elements() {
        let fq = FqField::new(2, 1).unwrap();
        let f8 = ExtField::new(&fq, 3).unwrap();
        let z = parse_ext_elem(&f8, "z").unwrap();
        assert_eq!(z, f8.generator());
        let w = parse_ext_elem(&f8, "z^2+1").unwrap();
        assert_eq!(format_field_coords(&fq, &f8.to_fq_coords(&w), true), "z^2+1");
    }
}
