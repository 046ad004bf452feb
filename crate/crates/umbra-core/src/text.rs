//! Textual rendering and parsing.
//!
//! The machine grammar spells the field parameter as `L` and renders a
//! scalar as `num/den` with both sides expanded, e.g.
//! `(L+1)/(L^2-2*L+1)`; polynomials in `x` render high degree first with
//! non-rational coefficients parenthesized, e.g. `(L+1)*x`. The parser
//! accepts the full expression grammar (`+ - * / ^`, parentheses, `L`, `x`,
//! integers) with ordinary precedence, so everything rendered here — machine
//! or pretty — parses back to the same value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{perfect_power, IntPoly, LambdaRat};
use crate::series::Series;

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn render_intpoly_var(p: &IntPoly, var: &str, spaced: bool) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    let deg = p.degree().unwrap();
    for k in (0..=deg).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.magnitude().to_string();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if spaced {
            out.push_str(if neg { " - " } else { " + " });
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mag_one = c.magnitude().is_one();
        match k {
            0 => out.push_str(&mag),
            _ => {
                if !mag_one {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    out
}

fn term_count(p: &IntPoly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// True when the rendered form needs no parentheses as a factor of `/` or `*`:
/// a single term with coefficient +-1 or a bare nonnegative integer.
fn is_simple_factor(p: &IntPoly) -> bool {
    if term_count(p) != 1 {
        return false;
    }
    let deg = p.degree().unwrap();
    if deg == 0 {
        return !p.leading().is_negative();
    }
    p.leading().magnitude().is_one() && !p.leading().is_negative()
}

/// Machine rendering of an integer polynomial in `L`.
pub fn render_intpoly(p: &IntPoly) -> String {
    render_intpoly_var(p, "L", false)
}

/// Machine rendering of a scalar: `num/den` with both sides expanded.
pub fn render_lambdarat(r: &LambdaRat) -> String {
    render_lambdarat_with(r, false)
}

/// Pretty rendering: denominators that are exact powers collapse, e.g.
/// `(L+1)/(L-1)^2` instead of `(L+1)/(L^2-2*L+1)`.
pub fn render_lambdarat_pretty(r: &LambdaRat) -> String {
    render_lambdarat_with(r, true)
}

fn render_lambdarat_with(r: &LambdaRat, pretty: bool) -> String {
    let num_str = render_intpoly(r.num());
    if r.den().is_one() {
        return num_str;
    }
    let num_part = if is_simple_factor(r.num()) {
        num_str
    } else {
        format!("({num_str})")
    };
    let den_part = match perfect_power(r.den()) {
        Some((base, k)) if pretty => format!("({})^{k}", render_intpoly(&base)),
        _ => {
            let den_str = render_intpoly(r.den());
            if is_simple_factor(r.den()) {
                den_str
            } else {
                format!("({den_str})")
            }
        }
    };
    format!("{num_part}/{den_part}")
}

impl core::fmt::Display for LambdaRat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&render_lambdarat(self))
    }
}

/// Splits a coefficient into a display sign and its magnitude. The sign is
/// taken from the numerator's leading coefficient, which is well defined
/// because denominators are normalized positive.
fn split_sign(c: &LambdaRat) -> (bool, LambdaRat) {
    if c.num().leading().is_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn render_poly_with(p: &Poly, pretty: bool) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let spaced = pretty;
    let mut out = String::new();
    let deg = p.degree().unwrap();
    for k in (0..=deg).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = split_sign(&c);
        let body = if let Some(q) = mag.as_rational() {
            let mag_str = if q.denom().is_one() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            };
            match k {
                0 => mag_str,
                _ if q.is_one() => String::new(),
                _ => format!("{mag_str}*"),
            }
        } else {
            let rendered = if pretty {
                render_lambdarat_pretty(&mag)
            } else {
                render_lambdarat(&mag)
            };
            match k {
                0 if mag.den().is_one() && term_count(mag.num()) == 1 => rendered,
                0 if mag.den().is_one() => format!("({rendered})"),
                0 => rendered,
                _ => format!("({rendered})*"),
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if spaced {
            out.push_str(if neg { " - " } else { " + " });
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&body);
        if k >= 1 {
            out.push('x');
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
    }
    out
}

/// Machine rendering of a polynomial in `x`, high degree first.
pub fn render_poly(p: &Poly) -> String {
    render_poly_with(p, false)
}

/// Pretty rendering with spaces around `+`/`-` and power-form denominators.
pub fn render_poly_pretty(p: &Poly) -> String {
    render_poly_with(p, true)
}

impl core::fmt::Display for Poly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&render_poly(self))
    }
}

/// Rendering of a truncated series: `c0 + c1*t + ... (+O(t^{N+1}))`.
pub fn render_series(s: &Series) -> String {
    let mut out = String::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = split_sign(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = render_lambdarat(&mag);
        match k {
            0 => out.push_str(&coeff),
            _ => {
                if mag.is_one() {
                    out.push('t');
                } else {
                    let wrapped = if is_simple_factor(mag.num()) || mag.as_rational().is_some() {
                        coeff
                    } else {
                        format!("({coeff})")
                    };
                    out.push_str(&wrapped);
                    out.push_str("*t");
                }
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(&format!(" (+O(t^{}))", s.trunc() + 1));
    out
}

impl core::fmt::Display for Series {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&render_series(self))
    }
}

// ---------------------------------------------------------------------------
// LaTeX rendering
// ---------------------------------------------------------------------------

fn latex_intpoly(p: &IntPoly) -> String {
    render_intpoly_var(p, "\\lambda", true).replace('*', " ")
}

/// LaTeX form of a scalar, as `\frac{..}{..}` when there is a denominator.
pub fn latex_lambdarat(r: &LambdaRat) -> String {
    if r.den().is_one() {
        return latex_intpoly(r.num());
    }
    match perfect_power(r.den()) {
        Some((base, k)) => format!(
            "\\frac{{{}}}{{({})^{{{k}}}}}",
            latex_intpoly(r.num()),
            latex_intpoly(&base)
        ),
        None => format!(
            "\\frac{{{}}}{{{}}}",
            latex_intpoly(r.num()),
            latex_intpoly(r.den())
        ),
    }
}

/// LaTeX form of a polynomial in `x`.
pub fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    let deg = p.degree().unwrap();
    for k in (0..=deg).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = split_sign(&c);
        let body = if let Some(q) = mag.as_rational() {
            if q.denom().is_one() {
                if q.numer().is_one() && k > 0 {
                    String::new()
                } else {
                    q.numer().to_string()
                }
            } else {
                format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
            }
        } else {
            format!("\\left({}\\right)", latex_lambdarat(&mag))
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
        match k {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{{{k}}}")),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Int(BigInt),
    Lambda,
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            'L' => {
                tokens.push(Token::Lambda);
                i += 1;
            }
            'x' => {
                tokens.push(Token::X);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &input[start..i];
                let value = digits
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer '{digits}'")))?;
                tokens.push(Token::Int(value));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

/// Recursive-descent parser over polynomials in `x` with Q(L) coefficients.
struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Token::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Token::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    let scalar = rhs
                        .degree()
                        .map_or(Some(LambdaRat::zero()), |d| (d == 0).then(|| rhs.coeff(0)));
                    let scalar = scalar.ok_or_else(|| {
                        Error::Parse(String::from("division by a polynomial in x"))
                    })?;
                    let inv = scalar
                        .inv()
                        .map_err(|_| Error::Parse(String::from("division by zero")))?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let mut negative = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negative = true;
        }
        let exp = match self.bump() {
            Some(Token::Int(n)) => n,
            _ => return Err(Error::Parse(String::from("exponent must be an integer"))),
        };
        let exp: i64 = exp
            .try_into()
            .map_err(|_| Error::Parse(String::from("exponent too large")))?;
        let exp = if negative { -exp } else { exp };
        if exp < 0 {
            let scalar = base
                .degree()
                .map_or(Some(LambdaRat::zero()), |d| (d == 0).then(|| base.coeff(0)))
                .ok_or_else(|| Error::Parse(String::from("negative power of a polynomial in x")))?;
            let value = scalar
                .pow(exp)
                .map_err(|_| Error::Parse(String::from("negative power of zero")))?;
            return Ok(Poly::constant(value));
        }
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(Poly::constant(LambdaRat::from_integer(n))),
            Some(Token::Lambda) => Ok(Poly::constant(LambdaRat::lambda())),
            Some(Token::X) => Ok(Poly::x()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::Parse(String::from("missing closing parenthesis"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial in `x` over Q(L).
pub fn parse_poly(input: &str) -> Result<Poly> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse(String::from("empty input")));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(String::from("trailing input")));
    }
    Ok(poly)
}

/// Parses a scalar in Q(L); rejects inputs that mention `x`.
pub fn parse_lambdarat(input: &str) -> Result<LambdaRat> {
    let poly = parse_poly(input)?;
    match poly.degree() {
        None => Ok(LambdaRat::zero()),
        Some(0) => Ok(poly.coeff(0)),
        Some(_) => Err(Error::Parse(String::from(
            "expected a scalar, found a polynomial in x",
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn machine_rendering_examples() {
        let r = LambdaRat::from_i64(&[1, 1], &[1, -2, 1]);
        assert_eq!(render_lambdarat(&r), "(L+1)/(L^2-2*L+1)");
        assert_eq!(render_lambdarat_pretty(&r), "(L+1)/(L-1)^2");
        assert_eq!(
            render_lambdarat(&LambdaRat::from_i64(&[1], &[-1, 1])),
            "1/(L-1)"
        );
        assert_eq!(render_lambdarat(&LambdaRat::from_int(-3)), "-3");
        assert_eq!(render_lambdarat(&LambdaRat::zero()), "0");
    }

    #[test]
    fn poly_rendering_examples() {
        let p = Poly::from_coeffs(vec![
            LambdaRat::zero(),
            LambdaRat::from_int(-2),
            LambdaRat::one(),
        ]);
        assert_eq!(render_poly(&p), "x^2-2*x");
        assert_eq!(render_poly_pretty(&p), "x^2 - 2*x");
        let q = Poly::from_coeffs(vec![LambdaRat::from_i64(&[1], &[-1, 1]), LambdaRat::one()]);
        assert_eq!(render_poly_pretty(&q), "x + 1/(L-1)");
        let t1 = Poly::monomial(LambdaRat::from_i64(&[1, 1], &[1]), 1);
        assert_eq!(render_poly(&t1), "(L+1)*x");
    }

    #[test]
    fn series_rendering() {
        let s = Series::exp_t(2);
        assert_eq!(render_series(&s), "1 + t + 1/2*t^2 (+O(t^3))");
    }

    #[test]
    fn latex_examples() {
        let r = LambdaRat::from_i64(&[1, 1], &[1, -2, 1]);
        assert_eq!(
            latex_lambdarat(&r),
            "\\frac{\\lambda + 1}{(\\lambda - 1)^{2}}"
        );
        let p = Poly::from_coeffs(vec![
            LambdaRat::zero(),
            LambdaRat::from_int(-2),
            LambdaRat::one(),
        ]);
        assert_eq!(latex_poly(&p), "x^{2} - 2x");
    }

    #[test]
    fn parse_round_trips() {
        for input in [
            "(L+1)/(L^2-2*L+1)",
            "(L+1)/(L-1)^2",
            "1/(L-1)",
            "-3",
            "0",
            "L",
            "2*L^3-L",
        ] {
            let r = parse_lambdarat(input).unwrap();
            let rendered = render_lambdarat(&r);
            assert_eq!(parse_lambdarat(&rendered).unwrap(), r, "input {input}");
        }
        let p = parse_poly("x^2 - 2*x").unwrap();
        assert_eq!(render_poly(&p), "x^2-2*x");
        let q = parse_poly("(L+1)*x + 1/(L-1)").unwrap();
        assert_eq!(parse_poly(&render_poly(&q)).unwrap(), q);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_lambdarat("x+1").is_err());
        assert!(parse_lambdarat("L+").is_err());
        assert!(parse_lambdarat("(L").is_err());
        assert!(parse_lambdarat("1/0").is_err());
        assert!(parse_poly("y").is_err());
        assert!(parse_poly("1/x").is_err());
        assert!(parse_poly("x^L").is_err());
    }
}
