//! Text syntax for constant-coefficient forms on ℝ⁸.
//!
//! Terms look like `-3/2*dq1^dp2`, `(1+2i)*dz1^du2^dzb1^dub2` or
//! `0.25 * dq1^dq2^dq3^dq4`. `^` and `*` both wedge, `/` divides by a
//! scalar, `i` is the imaginary unit and `2i` is shorthand for `2*i`.

use std::fmt;
use std::str::FromStr;

use mongeampere::exterior::{p, q, Blade};
use mongeampere::scalar::format_exact;
use mongeampere::{Cq, ExactForm, Field, Form};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Which covector names are understood.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `dq1..dq4`, `dp1..dp4`.
    Real,
    /// `dz1, du1, dz2, du2` and the conjugates `dzb1, dub1, dzb2, dub2`.
    Chart,
}

impl Basis {
    fn index(self, name: &str, dim: usize) -> Option<usize> {
        let (stem, k) = name.split_at(name.len().checked_sub(1)?);
        let k: usize = k.parse().ok().filter(|k| (1..=dim / 2).contains(k))?;
        match (self, stem) {
            (Basis::Real, "dq") => Some(q(k)),
            (Basis::Real, "dp") => Some(p(k)),
            (Basis::Chart, _) if k > 2 => None,
            (Basis::Chart, "dz") => Some(2 * (k - 1)),
            (Basis::Chart, "du") => Some(2 * (k - 1) + 1),
            (Basis::Chart, "dzb") => Some(2 * (k - 1) + 4),
            (Basis::Chart, "dub") => Some(2 * (k - 1) + 5),
            _ => None,
        }
    }

    pub fn label(self, i: usize) -> String {
        match self {
            Basis::Real => format!("d{}{}", if i % 2 == 0 { "q" } else { "p" }, i / 2 + 1),
            Basis::Chart => {
                let stem = if i % 2 == 0 { "dz" } else { "du" };
                format!("{stem}{}{}", if i >= 4 { "b" } else { "" }, (i % 4) / 2 + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyntaxError {
    Syntax { position: usize, message: String },
    UnknownSymbol { position: usize, symbol: String },
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxError::Syntax { position, message } => write!(f, "syntax error at position {position}: {message}"),
            SyntaxError::UnknownSymbol { position, symbol } => {
                write!(f, "unknown basis symbol '{symbol}' at position {position}")
            }
        }
    }
}

impl std::error::Error for SyntaxError {}

pub fn parse_form(text: &str) -> Result<ExactForm, SyntaxError> {
    parse_form_in(text, Basis::Real)
}

pub fn parse_form_in(text: &str, basis: Basis) -> Result<ExactForm, SyntaxError> {
    parse_form_on(text, basis, 8)
}

/// Parses on ℝ^dim (`dq1..dq{dim/2}`); the chart basis needs `dim = 8`.
pub fn parse_form_on(text: &str, basis: Basis, dim: usize) -> Result<ExactForm, SyntaxError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, basis, dim };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.syntax("unexpected input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    basis: Basis,
    dim: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> SyntaxError {
        SyntaxError::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, ch: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<ExactForm, SyntaxError> {
        let mut acc = self.product()?;
        loop {
            let at = self.pos;
            let neg = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                return Ok(acc);
            };
            let t = self.product()?;
            let t = if neg { t.scale(&Cq::from_i64(-1)) } else { t };
            acc = acc.checked_add(&t).map_err(|_| SyntaxError::Syntax {
                position: at,
                message: "terms of different degree".into(),
            })?;
        }
    }

    fn product(&mut self) -> Result<ExactForm, SyntaxError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') || self.eat(b'^') {
                acc = acc.wedge(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if d.degree() != 0 || d.scalar_value() == Cq::from_i64(0) {
                    return Err(SyntaxError::Syntax { position: at, message: "division by a form or by zero".into() });
                }
                acc = acc.scale(&(Cq::from_i64(1) / d.scalar_value()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactForm, SyntaxError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.scale(&Cq::from_i64(-1)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExactForm, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        match self.s.get(self.pos).copied() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == b'.') {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                let r = decimal(text).ok_or(SyntaxError::Syntax { position: start, message: format!("bad number '{text}'") })?;
                let mut c = Cq::new(r, BigRational::from_integer(0.into()));
                if self.s.get(self.pos) == Some(&b'i') && !self.s.get(self.pos + 1).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                    c = c * Cq::i();
                }
                Ok(Form::scalar(self.dim, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.s.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                if word == "i" {
                    return Ok(Form::scalar(self.dim, Cq::i()));
                }
                match self.basis.index(word, self.dim) {
                    Some(k) => Ok(Form::term(self.dim, Blade::single(k), Cq::from_i64(1))),
                    None => Err(SyntaxError::UnknownSymbol { position: start, symbol: word.into() }),
                }
            }
            _ => Err(self.syntax("expected a coefficient, a basis symbol or '('")),
        }
    }
}

/// Exact value of a decimal literal such as `12`, `0.25` or `.5`.
fn decimal(text: &str) -> Option<BigRational> {
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(&digits).ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(num, den))
}

/// Canonical text: blades in basis order, explicit signs, parseable by
/// [`parse_form_in`] with the same basis.
pub fn print_form(form: &ExactForm, basis: Basis) -> String {
    if form.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (b, c)) in form.terms().enumerate() {
        let text = format_exact(c);
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.starts_with('(') => (true, rest.to_string()),
            _ => (false, text),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let blade: Vec<String> = b.indices().map(|i| basis.label(i)).collect();
        match (body.as_str(), blade.is_empty()) {
            (_, true) => out.push_str(&body),
            ("1", false) => out.push_str(&blade.join("^")),
            _ => out.push_str(&format!("{body}*{}", blade.join("^"))),
        }
    }
    out
}
