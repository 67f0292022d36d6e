//! Immutable expression trees over complex doubles with symbolic
//! differentiation.
//!
//! Variables are indexed; whether they are read as complex (holomorphic
//! functions) or real (functions on ℝⁿ) is up to the caller. `re(·)` is only
//! differentiable along real variables.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::Cf;

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Const(Cf),
    Var(usize),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    Powi(Expr, i32),
    Fun(Fun, Expr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fun {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Asin,
    Re,
}

impl Fun {
    fn name(self) -> &'static str {
        match self {
            Fun::Exp => "exp",
            Fun::Sin => "sin",
            Fun::Cos => "cos",
            Fun::Sqrt => "sqrt",
            Fun::Asin => "asin",
            Fun::Re => "re",
        }
    }

    fn from_name(s: &str) -> Option<Fun> {
        Some(match s {
            "exp" => Fun::Exp,
            "sin" => Fun::Sin,
            "cos" => Fun::Cos,
            "sqrt" => Fun::Sqrt,
            "asin" | "arcsin" => Fun::Asin,
            "re" | "Re" => Fun::Re,
            _ => return None,
        })
    }

    fn apply(self, x: Cf) -> Cf {
        match self {
            Fun::Exp => x.exp(),
            Fun::Sin => x.sin(),
            Fun::Cos => x.cos(),
            Fun::Sqrt => x.sqrt(),
            Fun::Asin => x.asin(),
            Fun::Re => Cf::new(x.re, 0.0),
        }
    }
}

/// Shared, immutable expression.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr(Arc<Node>);

fn c(re: f64) -> Cf {
    Cf::new(re, 0.0)
}

impl Expr {
    fn node(n: Node) -> Expr {
        Expr(Arc::new(n))
    }

    pub fn constant(v: Cf) -> Expr {
        Expr::node(Node::Const(v))
    }

    pub fn real(v: f64) -> Expr {
        Expr::constant(c(v))
    }

    pub fn var(i: usize) -> Expr {
        Expr::node(Node::Var(i))
    }

    fn as_const(&self) -> Option<Cf> {
        match &*self.0 {
            Node::Const(v) => Some(*v),
            _ => None,
        }
    }

    fn is_const(&self, v: f64) -> bool {
        self.as_const() == Some(c(v))
    }

    pub fn add(&self, o: &Expr) -> Expr {
        match (self.as_const(), o.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a + b),
            _ if self.is_const(0.0) => o.clone(),
            _ if o.is_const(0.0) => self.clone(),
            _ => Expr::node(Node::Add(self.clone(), o.clone())),
        }
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        match (self.as_const(), o.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a - b),
            _ if o.is_const(0.0) => self.clone(),
            _ if self.is_const(0.0) => o.neg(),
            _ => Expr::node(Node::Sub(self.clone(), o.clone())),
        }
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        match (self.as_const(), o.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a * b),
            _ if self.is_const(0.0) || o.is_const(0.0) => Expr::real(0.0),
            _ if self.is_const(1.0) => o.clone(),
            _ if o.is_const(1.0) => self.clone(),
            _ => Expr::node(Node::Mul(self.clone(), o.clone())),
        }
    }

    pub fn div(&self, o: &Expr) -> Expr {
        match (self.as_const(), o.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a / b),
            _ if self.is_const(0.0) => Expr::real(0.0),
            _ if o.is_const(1.0) => self.clone(),
            _ => Expr::node(Node::Div(self.clone(), o.clone())),
        }
    }

    pub fn neg(&self) -> Expr {
        match &*self.0 {
            Node::Const(v) => Expr::constant(-v),
            Node::Neg(e) => e.clone(),
            _ => Expr::node(Node::Neg(self.clone())),
        }
    }

    pub fn powi(&self, k: i32) -> Expr {
        match (k, self.as_const()) {
            (0, _) => Expr::real(1.0),
            (1, _) => self.clone(),
            (_, Some(v)) => Expr::constant(v.powi(k)),
            _ => Expr::node(Node::Powi(self.clone(), k)),
        }
    }

    pub fn apply(&self, f: Fun) -> Expr {
        match self.as_const() {
            Some(v) => Expr::constant(f.apply(v)),
            None => Expr::node(Node::Fun(f, self.clone())),
        }
    }

    pub fn exp(&self) -> Expr {
        self.apply(Fun::Exp)
    }
    pub fn sin(&self) -> Expr {
        self.apply(Fun::Sin)
    }
    pub fn cos(&self) -> Expr {
        self.apply(Fun::Cos)
    }
    pub fn sqrt(&self) -> Expr {
        self.apply(Fun::Sqrt)
    }
    pub fn asin(&self) -> Expr {
        self.apply(Fun::Asin)
    }
    pub fn re(&self) -> Expr {
        self.apply(Fun::Re)
    }

    pub fn eval(&self, x: &[Cf]) -> Cf {
        match &*self.0 {
            Node::Const(v) => *v,
            Node::Var(i) => x[*i],
            Node::Add(a, b) => a.eval(x) + b.eval(x),
            Node::Sub(a, b) => a.eval(x) - b.eval(x),
            Node::Mul(a, b) => a.eval(x) * b.eval(x),
            Node::Div(a, b) => a.eval(x) / b.eval(x),
            Node::Neg(a) => -a.eval(x),
            Node::Powi(a, k) => a.eval(x).powi(*k),
            Node::Fun(f, a) => f.apply(a.eval(x)),
        }
    }

    /// Evaluation at a real point.
    pub fn eval_real(&self, x: &[f64]) -> Cf {
        let xs: Vec<Cf> = x.iter().map(|&v| c(v)).collect();
        self.eval(&xs)
    }

    /// Largest variable index used, plus one.
    pub fn arity(&self) -> usize {
        match &*self.0 {
            Node::Const(_) => 0,
            Node::Var(i) => i + 1,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => a.arity().max(b.arity()),
            Node::Neg(a) | Node::Powi(a, _) | Node::Fun(_, a) => a.arity(),
        }
    }

    pub fn diff(&self, v: usize) -> Expr {
        match &*self.0 {
            Node::Const(_) => Expr::real(0.0),
            Node::Var(i) => Expr::real(if *i == v { 1.0 } else { 0.0 }),
            Node::Add(a, b) => a.diff(v).add(&b.diff(v)),
            Node::Sub(a, b) => a.diff(v).sub(&b.diff(v)),
            Node::Mul(a, b) => a.diff(v).mul(b).add(&a.mul(&b.diff(v))),
            Node::Div(a, b) => a.diff(v).mul(b).sub(&a.mul(&b.diff(v))).div(&b.powi(2)),
            Node::Neg(a) => a.diff(v).neg(),
            Node::Powi(a, k) => Expr::real(*k as f64).mul(&a.powi(k - 1)).mul(&a.diff(v)),
            Node::Fun(f, a) => {
                let da = a.diff(v);
                if da.is_const(0.0) {
                    return da;
                }
                let outer = match f {
                    Fun::Exp => a.exp(),
                    Fun::Sin => a.cos(),
                    Fun::Cos => a.sin().neg(),
                    Fun::Sqrt => Expr::real(0.5).div(&a.sqrt()),
                    Fun::Asin => Expr::real(1.0).div(&Expr::real(1.0).sub(&a.powi(2)).sqrt()),
                    // d Re g = Re dg along real variables
                    Fun::Re => return da.re(),
                };
                outer.mul(&da)
            }
        }
    }

    /// Replaces variable `i` by `vals[i]`.
    pub fn substitute(&self, vals: &[Expr]) -> Expr {
        match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::Var(i) => vals[*i].clone(),
            Node::Add(a, b) => a.substitute(vals).add(&b.substitute(vals)),
            Node::Sub(a, b) => a.substitute(vals).sub(&b.substitute(vals)),
            Node::Mul(a, b) => a.substitute(vals).mul(&b.substitute(vals)),
            Node::Div(a, b) => a.substitute(vals).div(&b.substitute(vals)),
            Node::Neg(a) => a.substitute(vals).neg(),
            Node::Powi(a, k) => a.substitute(vals).powi(*k),
            Node::Fun(f, a) => a.substitute(vals).apply(*f),
        }
    }

    /// Parses `text` with the given variable names. Grammar: `+ - * / ^`
    /// (integer exponents), parentheses, decimals, `i`, and the functions
    /// exp, sin, cos, sqrt, asin (or arcsin), re.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Expr, Error> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, vars };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(e)
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, names: Option<&[&str]>, prec: u8) -> fmt::Result {
        let open = |f: &mut fmt::Formatter<'_>, p: u8| if prec > p { write!(f, "(") } else { Ok(()) };
        let close = |f: &mut fmt::Formatter<'_>, p: u8| if prec > p { write!(f, ")") } else { Ok(()) };
        match &*self.0 {
            Node::Const(v) => {
                if v.im == 0.0 {
                    if v.re < 0.0 && prec > 0 {
                        write!(f, "({})", v.re)
                    } else {
                        write!(f, "{}", v.re)
                    }
                } else if v.re == 0.0 {
                    write!(f, "{}{}*i{}", if prec > 1 { "(" } else { "" }, v.im, if prec > 1 { ")" } else { "" })
                } else {
                    write!(f, "({} + {}*i)", v.re, v.im)
                }
            }
            Node::Var(i) => match names {
                Some(n) if *i < n.len() => write!(f, "{}", n[*i]),
                _ => write!(f, "x{}", i + 1),
            },
            Node::Add(a, b) | Node::Sub(a, b) => {
                open(f, 0)?;
                a.fmt_prec(f, names, 0)?;
                write!(f, " {} ", if matches!(&*self.0, Node::Add(..)) { "+" } else { "-" })?;
                b.fmt_prec(f, names, 1)?;
                close(f, 0)
            }
            Node::Mul(a, b) | Node::Div(a, b) => {
                open(f, 1)?;
                a.fmt_prec(f, names, 1)?;
                write!(f, "{}", if matches!(&*self.0, Node::Mul(..)) { "*" } else { "/" })?;
                b.fmt_prec(f, names, 2)?;
                close(f, 1)
            }
            Node::Neg(a) => {
                open(f, 1)?;
                write!(f, "-")?;
                a.fmt_prec(f, names, 2)?;
                close(f, 1)
            }
            Node::Powi(a, k) => {
                open(f, 2)?;
                a.fmt_prec(f, names, 3)?;
                if *k < 0 {
                    write!(f, "^({k})")?;
                } else {
                    write!(f, "^{k}")?;
                }
                close(f, 2)
            }
            Node::Fun(g, a) => {
                write!(f, "{}(", g.name())?;
                a.fmt_prec(f, names, 0)?;
                write!(f, ")")
            }
        }
    }

    /// Printer with variable names.
    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        struct Named<'a>(&'a Expr, &'a [&'a str]);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_prec(f, Some(self.1), 0)
            }
        }
        Named(self, names)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, None, 0)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Evaluation(format!("{what} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, Error> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let k: i32 = std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error("expected integer exponent"))?;
        if paren && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(base.powi(if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(ch) if ch.is_ascii_digit() || ch == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                t.parse::<f64>().map(Expr::real).map_err(|_| self.error("bad number"))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                if let Some(k) = self.vars.iter().position(|v| *v == word) {
                    return Ok(Expr::var(k));
                }
                if word == "i" {
                    return Ok(Expr::constant(Cf::new(0.0, 1.0)));
                }
                if let Some(f) = Fun::from_name(word) {
                    if !self.eat(b'(') {
                        return Err(self.error("expected '(' after function name"));
                    }
                    let arg = self.sum()?;
                    if !self.eat(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    return Ok(arg.apply(f));
                }
                self.pos = start;
                Err(self.error(&format!("unknown symbol '{word}'")))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Largest discrepancy, relative to `1 + |symbolic|`, between the symbolic
/// first and second derivatives and central differences with step `h` along
/// the real directions of each variable.
pub fn central_difference_defect(e: &Expr, x: &[Cf], h: f64) -> f64 {
    let n = x.len();
    let shifted = |moves: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(k, s) in moves {
            y[k] += c(s * h);
        }
        e.eval(&y)
    };
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let d = e.diff(i);
        let fd = (shifted(&[(i, 1.0)]) - shifted(&[(i, -1.0)])) / c(2.0 * h);
        let s = d.eval(x);
        worst = worst.max((s - fd).norm() / (1.0 + s.norm()));
        for j in i..n {
            let s2 = d.diff(j).eval(x);
            let fd2 = (shifted(&[(i, 1.0), (j, 1.0)]) - shifted(&[(i, 1.0), (j, -1.0)]) - shifted(&[(i, -1.0), (j, 1.0)])
                + shifted(&[(i, -1.0), (j, -1.0)]))
                / c(4.0 * h * h);
            worst = worst.max((s2 - fd2).norm() / (1.0 + s2.norm()));
        }
    }
    worst
}
