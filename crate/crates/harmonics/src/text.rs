//! The canonical textual polynomial format.
//!
//! Terms are sorted by the canonical monomial order and joined with ` + `.
//! Each term is `<rational> x<i>^<e> ... t<j> ...` with trivial pieces
//! elided: exponent-0 factors are dropped, `^1` is dropped, and a ±1
//! coefficient in front of a nonempty monomial prints as bare sign, so
//! `-1 x1^0 t1` prints as `-t1`. The zero polynomial prints as `0`.

use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::monomial::Monomial;
use crate::poly::SuperPolynomial;

pub fn render(p: &SuperPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        parts.push(render_term(m, c));
    }
    parts.join(" + ")
}

fn render_term(m: &Monomial, c: &BigRational) -> String {
    let mut factors = Vec::new();
    for (i, &e) in m.xexp.iter().enumerate() {
        if e == 1 {
            factors.push(format!("x{}", i + 1));
        } else if e > 1 {
            factors.push(format!("x{}^{}", i + 1, e));
        }
    }
    for j in m.theta_indices() {
        factors.push(format!("t{}", j));
    }
    let abs = c.abs();
    let sign = if c.is_negative() { "-" } else { "" };
    if factors.is_empty() {
        format!("{}{}", sign, abs)
    } else if abs.is_one() {
        format!("{}{}", sign, factors.join(" "))
    } else {
        format!("{}{} {}", sign, abs, factors.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { msg: msg.into() })
}

/// Parses the canonical textual format back into a polynomial over `n`
/// variables. Accepts any term order and repeated monomials (summed).
pub fn parse(n: usize, input: &str) -> Result<SuperPolynomial, ParseError> {
    let input = input.trim();
    if input.is_empty() {
        return err("empty input");
    }
    let mut p = SuperPolynomial::zero(n);
    if input == "0" {
        return Ok(p);
    }
    for raw in input.split(" + ") {
        let (m, c) = parse_term(n, raw.trim())?;
        p.add_term(m, c);
    }
    Ok(p)
}

fn parse_term(n: usize, raw: &str) -> Result<(Monomial, BigRational), ParseError> {
    if raw.is_empty() {
        return err("empty term");
    }
    let (negative, rest) = match raw.strip_prefix('-') {
        Some(r) => (true, r.trim_start()),
        None => (false, raw),
    };
    let mut coeff = BigRational::one();
    let mut mono = Monomial::one(n);
    let mut saw_factor = false;
    let mut saw_coeff = false;
    let mut last_theta = 0usize;
    for tok in rest.split_whitespace() {
        if let Some(body) = tok.strip_prefix('x') {
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (parse_usize(i)?, parse_u32(e)?),
                None => (parse_usize(body)?, 1),
            };
            if idx < 1 || idx > n {
                return err(format!("x index {} out of range for n={}", idx, n));
            }
            mono.xexp[idx - 1] = mono.xexp[idx - 1]
                .checked_add(exp)
                .ok_or_else(|| ParseError { msg: "exponent overflow".into() })?;
            saw_factor = true;
        } else if let Some(body) = tok.strip_prefix('t') {
            let idx = parse_usize(body)?;
            if idx < 1 || idx > n {
                return err(format!("theta index {} out of range for n={}", idx, n));
            }
            if idx <= last_theta {
                return err(format!("theta indices not strictly increasing at t{}", idx));
            }
            if mono.has_theta(idx) {
                return err(format!("repeated theta index {}", idx));
            }
            mono.thetas |= 1 << (idx - 1);
            last_theta = idx;
            saw_factor = true;
        } else {
            if saw_factor || saw_coeff {
                return err(format!("unexpected token `{}`", tok));
            }
            coeff = parse_rational(tok)?;
            saw_coeff = true;
        }
    }
    if !saw_factor && !saw_coeff {
        return err(format!("term `{}` has no coefficient or factors", raw));
    }
    if negative {
        coeff = -coeff;
    }
    Ok((mono, coeff))
}

fn parse_usize(s: &str) -> Result<usize, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return err(format!("bad index `{}`", s));
    }
    s.parse().map_err(|_| ParseError { msg: format!("bad index `{}`", s) })
}

fn parse_u32(s: &str) -> Result<u32, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return err(format!("bad exponent `{}`", s));
    }
    s.parse().map_err(|_| ParseError { msg: format!("bad exponent `{}`", s) })
}

fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let parse_int = |t: &str| -> Result<BigInt, ParseError> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return err(format!("bad number `{}`", t));
        }
        BigInt::from_str(t).map_err(|_| ParseError { msg: format!("bad number `{}`", t) })
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}
