//! Quantifier-free formulas over germs.
//!
//! ```text
//! formula ::= imp { '<=>' imp }
//! imp     ::= or [ '=>' imp ]
//! or      ::= and { 'or' and }
//! and     ::= unary { 'and' unary }
//! unary   ::= 'not' unary | '(' formula ')' | expr REL expr
//! REL     ::= '=' | '!=' | '<' | '<=' | '>' | '>='
//! ```
//!
//! A formula's truth set is periodic from some index on; the verdict reads
//! that pattern over one period.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{AeVerdict, Germ, GermError};
use crate::expr::{parse_expr, Cursor, Expr, Tok};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    /// Whether `lhs REL rhs` holds given the sign of `lhs - rhs`.
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Relation::Eq => sign == 0,
            Relation::Ne => sign != 0,
            Relation::Lt => sign < 0,
            Relation::Le => sign <= 0,
            Relation::Gt => sign > 0,
            Relation::Ge => sign >= 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "=" => Relation::Eq,
            "!=" => Relation::Ne,
            "<" => Relation::Lt,
            "<=" => Relation::Le,
            ">" => Relation::Gt,
            ">=" => Relation::Ge,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QfFormula {
    Atom(Expr, Relation, Expr),
    Not(Box<QfFormula>),
    And(Box<QfFormula>, Box<QfFormula>),
    Or(Box<QfFormula>, Box<QfFormula>),
    Implies(Box<QfFormula>, Box<QfFormula>),
    Iff(Box<QfFormula>, Box<QfFormula>),
}

impl QfFormula {
    pub fn atom(lhs: Expr, rel: Relation, rhs: Expr) -> Self {
        QfFormula::Atom(lhs, rel, rhs)
    }

    pub fn variables(&self) -> Vec<String> {
        fn walk(f: &QfFormula, out: &mut Vec<String>) {
            match f {
                QfFormula::Atom(a, _, b) => {
                    for v in a.variables().into_iter().chain(b.variables()) {
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
                QfFormula::Not(a) => walk(a, out),
                QfFormula::And(a, b)
                | QfFormula::Or(a, b)
                | QfFormula::Implies(a, b)
                | QfFormula::Iff(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for QfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QfFormula::Atom(a, r, b) => write!(f, "{a} {} {b}", r.symbol()),
            QfFormula::Not(a) => write!(f, "not ({a})"),
            QfFormula::And(a, b) => write!(f, "({a}) and ({b})"),
            QfFormula::Or(a, b) => write!(f, "({a}) or ({b})"),
            QfFormula::Implies(a, b) => write!(f, "({a}) => ({b})"),
            QfFormula::Iff(a, b) => write!(f, "({a}) <=> ({b})"),
        }
    }
}

impl std::str::FromStr for QfFormula {
    type Err = GermError;

    fn from_str(s: &str) -> Result<Self, GermError> {
        parse_qf(s)
    }
}

pub fn parse_qf(src: &str) -> Result<QfFormula, GermError> {
    let mut cur = Cursor::new(src)?;
    let mut k = 0;
    while let Some(t) = cur.peek_at(k) {
        if matches!(t, Tok::Ident(w) if w == "forall" || w == "exists") {
            return Err(GermError::QuantifierPresent);
        }
        k += 1;
    }
    let f = iff(&mut cur)?;
    cur.expect_end()?;
    Ok(f)
}

fn iff(cur: &mut Cursor) -> Result<QfFormula, GermError> {
    let mut f = implies(cur)?;
    while cur.eat_sym("<=>") {
        f = QfFormula::Iff(Box::new(f), Box::new(implies(cur)?));
    }
    Ok(f)
}

fn implies(cur: &mut Cursor) -> Result<QfFormula, GermError> {
    let f = or(cur)?;
    if cur.eat_sym("=>") {
        return Ok(QfFormula::Implies(Box::new(f), Box::new(implies(cur)?)));
    }
    Ok(f)
}

fn or(cur: &mut Cursor) -> Result<QfFormula, GermError> {
    let mut f = and(cur)?;
    while cur.eat_word("or") {
        f = QfFormula::Or(Box::new(f), Box::new(and(cur)?));
    }
    Ok(f)
}

fn and(cur: &mut Cursor) -> Result<QfFormula, GermError> {
    let mut f = unary(cur)?;
    while cur.eat_word("and") {
        f = QfFormula::And(Box::new(f), Box::new(unary(cur)?));
    }
    Ok(f)
}

fn unary(cur: &mut Cursor) -> Result<QfFormula, GermError> {
    if cur.eat_word("not") {
        return Ok(QfFormula::Not(Box::new(unary(cur)?)));
    }
    // `(` opens either a term or a subformula; try the atom reading first.
    let mark = cur.mark();
    match atom(cur) {
        Ok(f) => Ok(f),
        Err(e) => {
            cur.reset(mark);
            if cur.eat_sym("(") {
                let f = iff(cur)?;
                cur.expect_sym(")")?;
                Ok(f)
            } else {
                Err(e)
            }
        }
    }
}

fn atom(cur: &mut Cursor) -> Result<QfFormula, GermError> {
    let lhs = parse_expr(cur)?;
    let rel = match cur.peek() {
        Some(Tok::Sym(s)) => Relation::from_symbol(s),
        _ => None,
    }
    .ok_or_else(|| cur.error("expected relation"))?;
    cur.next();
    let rhs = parse_expr(cur)?;
    Ok(QfFormula::Atom(lhs, rel, rhs))
}

/// Eventual truth pattern indexed by residue modulo its length.
type Pattern = Vec<bool>;

fn combine(a: &Pattern, b: &Pattern, f: impl Fn(bool, bool) -> bool) -> Pattern {
    let m = a.len().lcm(&b.len());
    (0..m).map(|i| f(a[i % a.len()], b[i % b.len()])).collect()
}

/// Where every subterm is defined and every atom's sign has settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Stabilization {
    index: u64,
    period: usize,
}

impl Stabilization {
    fn record(&mut self, g: &Germ) {
        match g {
            Germ::RationalFunctionOfN(r) => self.index = self.index.max(r.stabilization_index()),
            Germ::EventuallyPeriodic(p) => {
                self.index = self.index.max(p.preperiod().len() as u64);
                self.period = self.period.lcm(&p.period().len());
            }
        }
    }
}

struct Evaluator<'a> {
    assignment: &'a BTreeMap<String, Germ>,
    stab: Stabilization,
}

impl Evaluator<'_> {
    fn term(&mut self, e: &Expr) -> Result<Germ, GermError> {
        let g = match e {
            Expr::Num(c) => Germ::embed_constant(c.clone()),
            Expr::Var(v) => self
                .assignment
                .get(v)
                .cloned()
                .ok_or_else(|| GermError::UnboundVariable(v.clone()))?,
            Expr::Neg(a) => self.term(a)?.neg(),
            Expr::Add(a, b) => self.term(a)?.add(&self.term(b)?)?,
            Expr::Sub(a, b) => self.term(a)?.sub(&self.term(b)?)?,
            Expr::Mul(a, b) => self.term(a)?.mul(&self.term(b)?)?,
            Expr::Div(a, b) => self.term(a)?.div(&self.term(b)?)?,
            Expr::Pow(a, p, 1) => self.term(a)?.pow(*p)?,
            Expr::Pow(..) => return Err(GermError::FractionalPower),
        };
        self.stab.record(&g);
        Ok(g)
    }

    fn pattern(&mut self, f: &QfFormula) -> Result<Pattern, GermError> {
        Ok(match f {
            QfFormula::Atom(a, rel, b) => {
                let d = self.term(a)?.sub(&self.term(b)?)?;
                self.stab.record(&d);
                d.sign_pattern().into_iter().map(|s| rel.holds(s)).collect()
            }
            QfFormula::Not(a) => self.pattern(a)?.into_iter().map(|b| !b).collect(),
            QfFormula::And(a, b) => combine(&self.pattern(a)?, &self.pattern(b)?, |x, y| x && y),
            QfFormula::Or(a, b) => combine(&self.pattern(a)?, &self.pattern(b)?, |x, y| x || y),
            QfFormula::Implies(a, b) => {
                combine(&self.pattern(a)?, &self.pattern(b)?, |x, y| !x || y)
            }
            QfFormula::Iff(a, b) => combine(&self.pattern(a)?, &self.pattern(b)?, |x, y| x == y),
        })
    }
}

fn check_classes(f: &QfFormula, assignment: &BTreeMap<String, Germ>) -> Result<(), GermError> {
    let (mut rf, mut ep) = (false, false);
    for v in f.variables() {
        let g = assignment
            .get(&v)
            .ok_or_else(|| GermError::UnboundVariable(v.clone()))?;
        if g.ae_constant().is_none() {
            match g {
                Germ::RationalFunctionOfN(_) => rf = true,
                Germ::EventuallyPeriodic(_) => ep = true,
            }
        }
    }
    if rf && ep {
        Err(GermError::MixedClasses)
    } else {
        Ok(())
    }
}

/// Almost-everywhere truth of `formula` under `assignment`.
pub fn los_check_qf(
    formula: &QfFormula,
    assignment: &BTreeMap<String, Germ>,
) -> Result<AeVerdict, GermError> {
    check_classes(formula, assignment)?;
    let mut ev = Evaluator {
        assignment,
        stab: Stabilization {
            index: 0,
            period: 1,
        },
    };
    let p = ev.pattern(formula)?;
    Ok(AeVerdict::from_pattern(&p))
}

/// Pointwise evaluation of a formula over a window of indices past the
/// stabilization bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseCheck {
    pub start: u64,
    pub truths: Vec<bool>,
    pub verdict: AeVerdict,
}

fn value_at(e: &Expr, assignment: &BTreeMap<String, Germ>, n: u64) -> Option<BigRational> {
    Some(match e {
        Expr::Num(c) => c.clone(),
        Expr::Var(v) => assignment.get(v)?.value_at(n)?,
        Expr::Neg(a) => -value_at(a, assignment, n)?,
        Expr::Add(a, b) => value_at(a, assignment, n)? + value_at(b, assignment, n)?,
        Expr::Sub(a, b) => value_at(a, assignment, n)? - value_at(b, assignment, n)?,
        Expr::Mul(a, b) => value_at(a, assignment, n)? * value_at(b, assignment, n)?,
        Expr::Div(a, b) => {
            let d = value_at(b, assignment, n)?;
            if d.is_zero() {
                return None;
            }
            value_at(a, assignment, n)? / d
        }
        Expr::Pow(a, p, 1) => {
            let v = value_at(a, assignment, n)?;
            if *p < 0 && v.is_zero() {
                return None;
            }
            let r = num_traits::pow(v, p.unsigned_abs() as usize);
            if *p < 0 {
                r.recip()
            } else {
                r
            }
        }
        Expr::Pow(..) => return None,
    })
}

fn truth_at(f: &QfFormula, assignment: &BTreeMap<String, Germ>, n: u64) -> Option<bool> {
    Some(match f {
        QfFormula::Atom(a, rel, b) => {
            let d = value_at(a, assignment, n)? - value_at(b, assignment, n)?;
            let s = if d.is_zero() {
                0
            } else if d.is_positive() {
                1
            } else {
                -1
            };
            rel.holds(s)
        }
        QfFormula::Not(a) => !truth_at(a, assignment, n)?,
        QfFormula::And(a, b) => truth_at(a, assignment, n)? && truth_at(b, assignment, n)?,
        QfFormula::Or(a, b) => truth_at(a, assignment, n)? || truth_at(b, assignment, n)?,
        QfFormula::Implies(a, b) => !truth_at(a, assignment, n)? || truth_at(b, assignment, n)?,
        QfFormula::Iff(a, b) => truth_at(a, assignment, n)? == truth_at(b, assignment, n)?,
    })
}

/// Evaluate `formula` index by index on two full periods past the point
/// where every subterm is defined and every atom's sign has settled.
pub fn los_pointwise(
    formula: &QfFormula,
    assignment: &BTreeMap<String, Germ>,
) -> Result<PointwiseCheck, GermError> {
    check_classes(formula, assignment)?;
    let mut ev = Evaluator {
        assignment,
        stab: Stabilization {
            index: 0,
            period: 1,
        },
    };
    ev.pattern(formula)?;
    let start = ev.stab.index;
    let len = (2 * ev.stab.period).max(3) as u64;
    let truths = (start..start + len)
        .map(|n| truth_at(formula, assignment, n))
        .collect::<Option<Vec<bool>>>()
        .ok_or(GermError::AlmostEverywhereZeroDivisor)?;
    let verdict = AeVerdict::from_pattern(&truths);
    Ok(PointwiseCheck {
        start,
        truths,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assign(pairs: &[(&str, &str)]) -> BTreeMap<String, Germ> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
            .collect()
    }

    fn check(src: &str, pairs: &[(&str, &str)]) -> AeVerdict {
        let f = parse_qf(src).unwrap();
        let a = assign(pairs);
        let v = los_check_qf(&f, &a).unwrap();
        assert_eq!(los_pointwise(&f, &a).unwrap().verdict, v, "{src}");
        v
    }

    #[test]
    fn examples() {
        assert_eq!(
            check("x·y = 1", &[("x", "rf(n/(n+1))"), ("y", "rf((n+1)/n)")]),
            AeVerdict::TrueAe
        );
        assert_eq!(check("x < x·x", &[("x", "rf(n)")]), AeVerdict::TrueAe);
        assert_eq!(
            check("x = 0", &[("x", "ep([];[0,1])")]),
            AeVerdict::UltrafilterDependent
        );
    }

    #[test]
    fn connectives() {
        let x = [("x", "ep([];[0,1])")];
        assert_eq!(check("x = 0 or x = 1", &x), AeVerdict::TrueAe);
        assert_eq!(check("x = 0 and x = 1", &x), AeVerdict::FalseAe);
        assert_eq!(check("not (x = 0)", &x), AeVerdict::UltrafilterDependent);
        assert_eq!(check("x = 0 => x < 1", &x), AeVerdict::TrueAe);
        assert_eq!(check("(x = 0) <=> (x != 1)", &x), AeVerdict::TrueAe);
        let xy = [("x", "ep([];[0,1])"), ("y", "ep([];[1,0,0])")];
        assert_eq!(check("x + y = 1", &xy), AeVerdict::UltrafilterDependent);
        assert_eq!(check("x*y <= 1", &xy), AeVerdict::TrueAe);
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse_qf("(x+1)*(x-1) = x^2 - 1").unwrap();
        assert!(matches!(f, QfFormula::Atom(..)));
        let f = parse_qf("((x = 1))").unwrap();
        assert!(matches!(f, QfFormula::Atom(..)));
        let g = parse_qf(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_qf("forall x x = x"),
            Err(GermError::QuantifierPresent)
        );
        assert_eq!(parse_qf("∃ x (x = 0)"), Err(GermError::QuantifierPresent));
        let f = parse_qf("x < y").unwrap();
        assert_eq!(
            los_check_qf(&f, &assign(&[("x", "rf(n)"), ("y", "ep([];[0,1])")])),
            Err(GermError::MixedClasses)
        );
        assert_eq!(
            los_check_qf(&f, &assign(&[("x", "rf(n)")])),
            Err(GermError::UnboundVariable("y".into()))
        );
        assert!(matches!(parse_qf("x +"), Err(GermError::Parse { .. })));
    }

    #[test]
    fn stabilization_skips_early_indices() {
        // n^2 > 10 n fails for n <= 10
        let f = parse_qf("x*x > 10*x").unwrap();
        let a = assign(&[("x", "rf(n)")]);
        let p = los_pointwise(&f, &a).unwrap();
        assert!(p.start >= 11);
        assert_eq!(p.verdict, AeVerdict::TrueAe);
    }
}
