//! Arithmetic expression syntax shared by the hyperreal and germ front ends.
//!
//! ```text
//! expr    ::= term { ('+' | '-') term }
//! term    ::= factor { ('*' | '/') factor }
//! factor  ::= ('-' | '+') factor | power
//! power   ::= atom [ '^' exponent ]
//! atom    ::= NUMBER | IDENT | '(' expr ')'
//! exponent::= ['-'] INT | '(' ['-'] INT [ '/' INT ] ')'
//! ```
//!
//! Numbers may carry a decimal point (`0.25`) and are read exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Num(BigRational),
    Ident(String),
    /// Punctuation and operators, longest match (`<=>`, `=>`, `<`, `(` ...).
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Sym(s) => f.write_str(s),
        }
    }
}

const SYMBOLS: &[&str] = &[
    "<=>", "=>", "<=", ">=", "!=", "+", "-", "*", "/", "^", "(", ")", "[", "]", "{", "}", ",", ";",
    "=", "<", ">",
];

/// Unicode spellings folded onto their ASCII equivalents.
const ALIASES: &[(char, &str)] = &[
    ('∀', "forall"),
    ('∃', "exists"),
    ('∈', "in"),
    ('¬', "not"),
    ('∧', "and"),
    ('∨', "or"),
    ('⇒', "=>"),
    ('→', "=>"),
    ('⇔', "<=>"),
    ('↔', "<=>"),
    ('⟨', "<"),
    ('⟩', ">"),
    ('·', "*"),
    ('ε', "e"),
    ('≤', "<="),
    ('≥', ">="),
    ('≠', "!="),
];

pub fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if let Some((_, alias)) = ALIASES.iter().find(|(a, _)| *a == c) {
            let tok = match SYMBOLS.iter().find(|s| **s == *alias) {
                Some(sym) => Tok::Sym(sym),
                None => Tok::Ident(alias.to_string()),
            };
            out.push((pos, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let mut frac = String::new();
            if i + 1 < chars.len() && chars[i].1 == '.' && chars[i + 1].1.is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    frac.push(chars[i].1);
                    i += 1;
                }
            }
            let whole: String = chars[start..i]
                .iter()
                .map(|(_, c)| *c)
                .take_while(|c| *c != '.')
                .collect();
            let digits = format!("{whole}{frac}");
            let n: BigInt = digits.parse().expect("ascii digits");
            let d = num_traits::pow(BigInt::from(10), frac.len());
            out.push((pos, Tok::Num(BigRational::new(n, d))));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Ident(word)));
            continue;
        }
        let rest = &src[pos..];
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                out.push((pos, Tok::Sym(sym)));
                i += sym.chars().count();
            }
            None => return Err(SyntaxError::new(pos, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// Token cursor with position-aware errors.
pub struct Cursor {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Cursor {
            toks: tokenize(src)?,
            idx: 0,
            end: src.len(),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.idx + k).map(|(_, t)| t)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    pub fn mark(&self) -> usize {
        self.idx
    }

    pub fn reset(&mut self, mark: usize) {
        self.idx = mark;
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    pub fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(t)) if t == w)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    /// Like [`Cursor::eat_sym`], but also consumes `s` when it is a proper
    /// prefix of the current symbol token (`>` from `>=`), leaving the rest.
    pub fn eat_sym_prefix(&mut self, s: &str) -> bool {
        if self.eat_sym(s) {
            return true;
        }
        if let Some((pos, Tok::Sym(t))) = self.toks.get(self.idx) {
            if let Some(rest) = t.strip_prefix(s) {
                if let Some(sym) = SYMBOLS.iter().find(|x| **x == rest) {
                    self.toks[self.idx] = (pos + s.len(), Tok::Sym(sym));
                    return true;
                }
            }
        }
        false
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        if self.at_word(w) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.idx += 1;
                Ok(s)
            }
            _ => Err(self.error("expected identifier")),
        }
    }

    pub fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected trailing '{t}'"))),
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let found = match self.peek() {
            Some(t) => format!("'{t}'"),
            None => "end of input".to_string(),
        };
        SyntaxError::new(self.pos(), format!("{}, found {found}", msg.into()))
    }

    /// Signed rational literal: `3`, `-1/2`, `0.25`.
    pub fn rational_literal(&mut self) -> Result<BigRational, SyntaxError> {
        let neg = self.eat_sym("-");
        let mut r = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return Err(self.error("expected number")),
        };
        self.idx += 1;
        if self.at_sym("/") && matches!(self.peek_at(1), Some(Tok::Num(_))) {
            self.idx += 1;
            if let Some(Tok::Num(d)) = self.next() {
                if d.is_zero() {
                    return Err(self.error("zero denominator in literal"));
                }
                r /= d;
            }
        }
        Ok(if neg { -r } else { r })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `base ^ (p / q)` with `q > 0`.
    Pow(Box<Expr>, i64, u32),
}

/// Evaluation target for [`Expr`]: a field that may reject some operations.
pub trait ExprAlgebra: Sized {
    type Error;
    fn constant(c: &BigRational) -> Self;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn div(self, rhs: Self) -> Result<Self, Self::Error>;
    fn neg(self) -> Self;
    fn pow(self, p: i64, q: u32) -> Result<Self, Self::Error>;
}

impl Expr {
    /// Evaluate with `var` resolving identifiers.
    pub fn eval<A, F>(&self, var: &F) -> Result<A, A::Error>
    where
        A: ExprAlgebra,
        F: Fn(&str) -> Result<A, A::Error>,
    {
        Ok(match self {
            Expr::Num(c) => A::constant(c),
            Expr::Var(v) => var(v)?,
            Expr::Neg(a) => a.eval(var)?.neg(),
            Expr::Add(a, b) => a.eval(var)?.add(b.eval(var)?),
            Expr::Sub(a, b) => a.eval(var)?.sub(b.eval(var)?),
            Expr::Mul(a, b) => a.eval(var)?.mul(b.eval(var)?),
            Expr::Div(a, b) => a.eval(var)?.div(b.eval(var)?)?,
            Expr::Pow(a, p, q) => a.eval(var)?.pow(*p, *q)?,
        })
    }

    /// Identifiers occurring in the expression, in order of first use.
    pub fn variables(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Num(_) => {}
                Expr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    walk(a, out);
                    walk(b, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => f.write_str(&crate::poly::render_rational(c)),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, p, 1) => write!(f, "({a})^({p})"),
            Expr::Pow(a, p, q) => write!(f, "({a})^({p}/{q})"),
        }
    }
}

pub fn parse_expr(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    let mut lhs = parse_term(cur)?;
    loop {
        if cur.eat_sym("+") {
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_term(cur)?));
        } else if cur.eat_sym("-") {
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_term(cur)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    let mut lhs = parse_factor(cur)?;
    loop {
        if cur.eat_sym("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(parse_factor(cur)?));
        } else if cur.eat_sym("/") {
            lhs = Expr::Div(Box::new(lhs), Box::new(parse_factor(cur)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_factor(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    if cur.eat_sym("-") {
        return Ok(Expr::Neg(Box::new(parse_factor(cur)?)));
    }
    if cur.eat_sym("+") {
        return parse_factor(cur);
    }
    let base = parse_atom(cur)?;
    if cur.eat_sym("^") {
        let (p, q) = parse_exponent(cur)?;
        return Ok(Expr::Pow(Box::new(base), p, q));
    }
    Ok(base)
}

fn parse_atom(cur: &mut Cursor) -> Result<Expr, SyntaxError> {
    match cur.peek().cloned() {
        Some(Tok::Num(n)) => {
            cur.next();
            Ok(Expr::Num(n))
        }
        Some(Tok::Ident(v)) => {
            cur.next();
            Ok(Expr::Var(v))
        }
        Some(Tok::Sym("(")) => {
            cur.next();
            let e = parse_expr(cur)?;
            cur.expect_sym(")")?;
            Ok(e)
        }
        _ => Err(cur.error("expected number, variable or '('")),
    }
}

fn small_int(cur: &mut Cursor) -> Result<i64, SyntaxError> {
    let pos = cur.pos();
    match cur.next() {
        Some(Tok::Num(n)) if n.is_integer() => {
            i64::try_from(n.to_integer()).map_err(|_| SyntaxError::new(pos, "exponent too large"))
        }
        _ => Err(SyntaxError::new(pos, "expected integer exponent")),
    }
}

fn parse_exponent(cur: &mut Cursor) -> Result<(i64, u32), SyntaxError> {
    if cur.eat_sym("(") {
        let neg = cur.eat_sym("-");
        let p = small_int(cur)?;
        let mut q = 1i64;
        if cur.eat_sym("/") {
            let pos = cur.pos();
            q = small_int(cur)?;
            if q <= 0 || q > u32::MAX as i64 {
                return Err(SyntaxError::new(
                    pos,
                    "exponent denominator must be positive",
                ));
            }
        }
        cur.expect_sym(")")?;
        Ok((if neg { -p } else { p }, q as u32))
    } else {
        let neg = cur.eat_sym("-");
        let p = small_int(cur)?;
        Ok((if neg { -p } else { p }, 1))
    }
}

/// Parse a complete expression.
pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let mut cur = Cursor::new(src)?;
    let e = parse_expr(&mut cur)?;
    cur.expect_end()?;
    Ok(e)
}
