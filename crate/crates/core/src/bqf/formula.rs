//! Bounded-quantifier formulas.
//!
//! ```text
//! formula ::= imp { '<=>' imp }
//! imp     ::= or [ '=>' imp ]
//! or      ::= and { 'or' and }
//! and     ::= unary { 'and' unary }
//! unary   ::= 'not' unary | quant unary | '(' formula ')' | atom
//! quant   ::= '(' ('forall' | 'exists') IDENT 'in' term ')'
//! atom    ::= term ('=' | 'in') term
//! term    ::= IDENT | '<' term ',' term '>' | '{' [ term { ',' term } ] '}'
//! ```
//!
//! Unicode spellings (`∀ ∃ ∈ ¬ ∧ ∨ ⇒ ⇔ ⟨ ⟩`) are accepted. Printing fully
//! parenthesizes binary connectives, so `parse(print(f)) == f`.

use std::collections::BTreeSet;
use std::fmt;

use super::BqfError;
use crate::expr::{Cursor, Tok};

const KEYWORDS: &[&str] = &["forall", "exists", "in", "and", "or", "not"];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Name(String),
    Pair(Box<Term>, Box<Term>),
    SetLit(Vec<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    In(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Term, Box<Formula>),
}

impl Term {
    pub fn name(s: &str) -> Self {
        Term::Name(s.to_string())
    }

    fn names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Name(n) => {
                out.insert(n.clone());
            }
            Term::Pair(a, b) => {
                a.names(out);
                b.names(out);
            }
            Term::SetLit(ts) => ts.iter().for_each(|t| t.names(out)),
        }
    }
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: &str, range: Term, body: Formula) -> Self {
        Formula::Quant(Quantifier::Forall, var.to_string(), range, Box::new(body))
    }

    pub fn exists(var: &str, range: Term, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, var.to_string(), range, Box::new(body))
    }

    /// Names not bound by an enclosing quantifier.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        match self {
            Formula::Eq(a, b) | Formula::In(a, b) => {
                a.names(&mut out);
                b.names(&mut out);
            }
            Formula::Not(a) => out = a.free_names(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                out = a.free_names();
                out.extend(b.free_names());
            }
            Formula::Quant(_, v, range, body) => {
                out = body.free_names();
                out.remove(v);
                range.names(&mut out);
            }
        }
        out
    }

    /// Nesting depth of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::In(..) => 0,
            Formula::Not(a) => a.quantifier_depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Quant(_, _, _, body) => 1 + body.quantifier_depth(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Name(n) => f.write_str(n),
            Term::Pair(a, b) => write!(f, "<{a}, {b}>"),
            Term::SetLit(ts) => {
                f.write_str("{")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::In(a, b) => write!(f, "{a} in {b}"),
            Formula::Not(a) => write!(f, "not {a}"),
            Formula::And(a, b) => write!(f, "({a} and {b})"),
            Formula::Or(a, b) => write!(f, "({a} or {b})"),
            Formula::Implies(a, b) => write!(f, "({a} => {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <=> {b})"),
            Formula::Quant(q, v, r, body) => {
                let kw = match q {
                    Quantifier::Forall => "forall",
                    Quantifier::Exists => "exists",
                };
                write!(f, "({kw} {v} in {r}) {body}")
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = BqfError;

    fn from_str(s: &str) -> Result<Self, BqfError> {
        parse(s)
    }
}

pub fn parse(src: &str) -> Result<Formula, BqfError> {
    let mut cur = Cursor::new(src)?;
    let f = iff(&mut cur)?;
    cur.expect_end()?;
    Ok(f)
}

/// Parse a term on its own, e.g. an entity literal `{a, <a, b>}`.
pub fn parse_term(src: &str) -> Result<Term, BqfError> {
    let mut cur = Cursor::new(src)?;
    let t = term(&mut cur)?;
    cur.expect_end()?;
    Ok(t)
}

fn iff(cur: &mut Cursor) -> Result<Formula, BqfError> {
    let mut f = implies(cur)?;
    while cur.eat_sym("<=>") {
        f = Formula::iff(f, implies(cur)?);
    }
    Ok(f)
}

fn implies(cur: &mut Cursor) -> Result<Formula, BqfError> {
    let f = or(cur)?;
    if cur.eat_sym("=>") {
        return Ok(Formula::implies(f, implies(cur)?));
    }
    Ok(f)
}

fn or(cur: &mut Cursor) -> Result<Formula, BqfError> {
    let mut f = and(cur)?;
    while cur.eat_word("or") {
        f = Formula::or(f, and(cur)?);
    }
    Ok(f)
}

fn and(cur: &mut Cursor) -> Result<Formula, BqfError> {
    let mut f = unary(cur)?;
    while cur.eat_word("and") {
        f = Formula::and(f, unary(cur)?);
    }
    Ok(f)
}

fn quantifier_word(t: Option<&Tok>) -> Option<Quantifier> {
    match t {
        Some(Tok::Ident(w)) if w == "forall" => Some(Quantifier::Forall),
        Some(Tok::Ident(w)) if w == "exists" => Some(Quantifier::Exists),
        _ => None,
    }
}

fn unary(cur: &mut Cursor) -> Result<Formula, BqfError> {
    if cur.eat_word("not") {
        return Ok(Formula::not(unary(cur)?));
    }
    if cur.at_sym("(") {
        if let Some(q) = quantifier_word(cur.peek_at(1)) {
            let pos = cur.pos();
            cur.next();
            cur.next();
            let (var, range) = binder(cur, pos)?;
            cur.expect_sym(")")?;
            return Ok(Formula::Quant(q, var, range, Box::new(unary(cur)?)));
        }
        cur.next();
        let f = iff(cur)?;
        cur.expect_sym(")")?;
        return Ok(f);
    }
    if let Some(q) = quantifier_word(cur.peek()) {
        let pos = cur.pos();
        cur.next();
        let (var, range) = binder(cur, pos)?;
        return Ok(Formula::Quant(q, var, range, Box::new(unary(cur)?)));
    }
    atom(cur)
}

fn binder(cur: &mut Cursor, pos: usize) -> Result<(String, Term), BqfError> {
    let var = identifier(cur)?;
    if !cur.eat_word("in") {
        return Err(BqfError::UnboundedQuantifier { pos, var });
    }
    Ok((var, term(cur)?))
}

fn identifier(cur: &mut Cursor) -> Result<String, BqfError> {
    match cur.peek() {
        Some(Tok::Ident(w)) if !KEYWORDS.contains(&w.as_str()) => Ok(cur.expect_ident()?),
        _ => Err(cur.error("expected name").into()),
    }
}

fn atom(cur: &mut Cursor) -> Result<Formula, BqfError> {
    let lhs = term(cur)?;
    if cur.eat_sym("=") {
        Ok(Formula::Eq(lhs, term(cur)?))
    } else if cur.eat_word("in") {
        Ok(Formula::In(lhs, term(cur)?))
    } else {
        Err(cur.error("expected '=' or 'in'").into())
    }
}

fn term(cur: &mut Cursor) -> Result<Term, BqfError> {
    if cur.eat_sym("<") {
        let a = term(cur)?;
        cur.expect_sym(",")?;
        let b = term(cur)?;
        if !cur.eat_sym_prefix(">") {
            return Err(cur.error("expected '>'").into());
        }
        return Ok(Term::Pair(Box::new(a), Box::new(b)));
    }
    if cur.eat_sym("{") {
        let mut items = Vec::new();
        if !cur.eat_sym("}") {
            loop {
                items.push(term(cur)?);
                if cur.eat_sym("}") {
                    break;
                }
                cur.expect_sym(",")?;
            }
        }
        return Ok(Term::SetLit(items));
    }
    if let Some(Tok::Num(_)) = cur.peek() {
        // numerals name atoms too (`0`, `1`, `2` in small spaces)
        let pos = cur.pos();
        let Some(Tok::Num(n)) = cur.next() else {
            unreachable!()
        };
        if !n.is_integer() {
            return Err(BqfError::Syntax {
                pos,
                message: "atom names must be identifiers or integers".into(),
            });
        }
        return Ok(Term::Name(n.to_string()));
    }
    Ok(Term::Name(identifier(cur)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f = parse("(forall x in A)(x in B)").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Term::name("A"),
                Formula::In(Term::name("x"), Term::name("B"))
            )
        );
        let g = parse("(exists y in B) y = a").unwrap();
        assert!(matches!(g, Formula::Quant(Quantifier::Exists, ..)));
        assert_eq!(
            parse("(forall x)(x = x)"),
            Err(BqfError::UnboundedQuantifier {
                pos: 0,
                var: "x".into()
            })
        );
    }

    #[test]
    fn unicode_and_pairs() {
        let f = parse("(⟨a,b⟩ = ⟨c,d⟩) ⇔ (a=c ∧ b=d)").unwrap();
        let g = parse("(<a, b> = <c, d>) <=> (a = c and b = d)").unwrap();
        assert_eq!(f, g);
        let h = parse("<a,b>=<c,d>").unwrap();
        assert!(matches!(h, Formula::Eq(Term::Pair(..), Term::Pair(..))));
        assert!(matches!(
            parse("∀ x ∈ A ¬(x ∈ x)").unwrap(),
            Formula::Quant(Quantifier::Forall, ..)
        ));
    }

    #[test]
    fn quantifier_body_binds_tightly() {
        let f = parse("(forall x in A) x in B and c in A").unwrap();
        assert!(matches!(f, Formula::And(..)));
        assert_eq!(f.free_names(), ["A", "B", "c"].map(String::from).into());
    }

    #[test]
    fn print_round_trip() {
        for src in [
            "(forall x in A)(exists y in B)(<x, y> in f)",
            "not x = y or {a, {b}} in C => a = a <=> {} = {}",
            "(exists z in {a, b}) not (z = a and z in {a})",
        ] {
            let f = parse(src).unwrap();
            assert_eq!(parse(&f.to_string()).unwrap(), f, "{f}");
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("(forall x in A) x ==") {
            Err(BqfError::Syntax { pos, .. }) => assert_eq!(pos, 19),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("a in"),
            Err(BqfError::Syntax { pos: 4, .. })
        ));
    }
}
