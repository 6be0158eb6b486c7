//! Bounded-quantifier formulas over finite entities.
//!
//! Quantifiers range over the members of explicitly constructed sets, so
//! the superstructure is never materialized. At finite scale the star map
//! is the identity, and transfer becomes an identity check.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

mod entity;
mod formula;

pub use entity::{make_pair, superstructure_level, unpair, Entity};
pub use formula::{parse, parse_term, Formula, Quantifier, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BqfError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("quantifier over '{var}' at {pos} has no bounding set")]
    UnboundedQuantifier { pos: usize, var: String },
    #[error("unbound constant '{0}'")]
    UnboundConstant(String),
    #[error("quantifier over '{var}' ranges over the atom '{atom}'")]
    QuantifierOverAtom { var: String, atom: String },
    #[error("comprehension bound must be a set, got '{0}'")]
    BoundNotASet(String),
    #[error("expected exactly one free variable, found {0:?}")]
    FreeVariable(Vec<String>),
    #[error("audit failure: {0}")]
    AuditFailure(String),
}

impl From<crate::expr::SyntaxError> for BqfError {
    fn from(e: crate::expr::SyntaxError) -> Self {
        BqfError::Syntax {
            pos: e.pos,
            message: e.message,
        }
    }
}

pub type Bindings = BTreeMap<String, Entity>;

/// Bindings in which every atom of `names` denotes itself.
pub fn atom_bindings<'a>(names: impl IntoIterator<Item = &'a str>) -> Bindings {
    names
        .into_iter()
        .map(|n| (n.to_string(), Entity::atom(n)))
        .collect()
}

/// Read an entity from JSON (`[["a"],["a","b"]]`) or from term syntax
/// (`{{a},{a,b}}`, `<a,b>`), where bare names are atoms.
pub fn parse_entity(src: &str) -> Result<Entity, BqfError> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('"') {
        let v: serde_json::Value = serde_json::from_str(src).map_err(|e| BqfError::Syntax {
            pos: e.column().saturating_sub(1),
            message: e.to_string(),
        })?;
        return Entity::from_json(&v).map_err(|e| BqfError::Syntax {
            pos: 0,
            message: format!("not an entity: {e}"),
        });
    }
    let t = parse_term(src)?;
    Ok(literal(&t))
}

fn literal(t: &Term) -> Entity {
    match t {
        Term::Name(n) => Entity::atom(n.as_str()),
        Term::Pair(a, b) => make_pair(literal(a), literal(b)),
        Term::SetLit(ts) => Entity::set(ts.iter().map(literal)),
    }
}

struct Env<'a> {
    bindings: &'a Bindings,
    locals: Vec<(String, Entity)>,
}

impl Env<'_> {
    fn lookup(&self, name: &str) -> Result<Entity, BqfError> {
        if let Some((_, e)) = self.locals.iter().rev().find(|(n, _)| n == name) {
            return Ok(e.clone());
        }
        self.bindings
            .get(name)
            .cloned()
            .ok_or_else(|| BqfError::UnboundConstant(name.to_string()))
    }

    fn term(&self, t: &Term) -> Result<Entity, BqfError> {
        Ok(match t {
            Term::Name(n) => self.lookup(n)?,
            Term::Pair(a, b) => make_pair(self.term(a)?, self.term(b)?),
            Term::SetLit(ts) => Entity::set(
                ts.iter()
                    .map(|t| self.term(t))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        })
    }

    fn eval(&mut self, f: &Formula) -> Result<bool, BqfError> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)? == self.term(b)?,
            Formula::In(a, b) => self.term(b)?.contains(&self.term(a)?),
            Formula::Not(a) => !self.eval(a)?,
            Formula::And(a, b) => self.eval(a)? && self.eval(b)?,
            Formula::Or(a, b) => self.eval(a)? || self.eval(b)?,
            Formula::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Formula::Iff(a, b) => self.eval(a)? == self.eval(b)?,
            Formula::Quant(q, var, range, body) => {
                let members = match self.term(range)? {
                    Entity::Set(m) => m,
                    Entity::Atom(a) => {
                        return Err(BqfError::QuantifierOverAtom {
                            var: var.clone(),
                            atom: a,
                        })
                    }
                };
                let want = *q == Quantifier::Exists;
                let mut result = !want;
                for m in members {
                    self.locals.push((var.clone(), m));
                    let r = self.eval(body);
                    self.locals.pop();
                    if r? == want {
                        result = want;
                        break;
                    }
                }
                result
            }
        })
    }
}

/// Truth of `f` with its free names taken from `bindings`.
pub fn eval(f: &Formula, bindings: &Bindings) -> Result<bool, BqfError> {
    Env {
        bindings,
        locals: Vec::new(),
    }
    .eval(f)
}

/// `{x in bound : f(x)}` for the designated variable `var`.
pub fn define_set_with(
    bound: &Entity,
    var: &str,
    f: &Formula,
    bindings: &Bindings,
) -> Result<Entity, BqfError> {
    let members = bound
        .members()
        .ok_or_else(|| BqfError::BoundNotASet(bound.to_string()))?;
    let mut env = Env {
        bindings,
        locals: Vec::new(),
    };
    let mut out = Vec::new();
    for m in members {
        env.locals.push((var.to_string(), m.clone()));
        let keep = env.eval(f);
        env.locals.pop();
        if keep? {
            out.push(m.clone());
        }
    }
    Ok(Entity::set(out))
}

/// Comprehension over the one free name of `f` not bound in `bindings`.
pub fn define_set(bound: &Entity, f: &Formula, bindings: &Bindings) -> Result<Entity, BqfError> {
    let free: Vec<String> = f
        .free_names()
        .into_iter()
        .filter(|n| !bindings.contains_key(n))
        .collect();
    match free.as_slice() {
        [v] => define_set_with(bound, v, f, bindings),
        _ => Err(BqfError::FreeVariable(free)),
    }
}

/// Relation, domain and single-valuedness conjuncts for a function graph
/// `F : D -> C`.
pub fn function_graph_formula() -> Formula {
    parse(
        "(forall p in F)(exists x in D)(exists y in C) p = <x, y> \
         and (forall x in D)(exists y in C) <x, y> in F \
         and (forall x in D)(forall y in C)(forall z in C) \
             ((<x, y> in F and <x, z> in F) => y = z)",
    )
    .expect("fixed formula parses")
}

/// Whether `f` is the graph of a total function `domain -> codomain`.
pub fn is_function_graph(f: &Entity, domain: &Entity, codomain: &Entity) -> bool {
    let b: Bindings = [("F", f), ("D", domain), ("C", codomain)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    eval(&function_graph_formula(), &b).unwrap_or(false)
}

type SetOp = fn(&Entity, &Entity) -> Option<Entity>;

/// The star map at finite scale: identity on atoms, elementwise on sets.
pub fn star(e: &Entity) -> Entity {
    match e {
        Entity::Atom(a) => Entity::Atom(a.clone()),
        Entity::Set(m) => Entity::set(m.iter().map(star)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub formula: String,
    pub standard: bool,
    pub transferred: bool,
    pub boolean_checks: usize,
    pub product_checks: usize,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.standard == self.transferred
    }
}

/// Evaluate `f` on the bindings and on their star images, then audit that
/// star commutes with union, intersection, difference, pairing and product
/// on the supplied entities.
pub fn check_transfer_finite(f: &Formula, bindings: &Bindings) -> Result<TransferReport, BqfError> {
    let standard = eval(f, bindings)?;
    let starred: Bindings = bindings.iter().map(|(k, v)| (k.clone(), star(v))).collect();
    let transferred = eval(f, &starred)?;
    if standard != transferred {
        return Err(BqfError::AuditFailure(format!(
            "'{f}' is {standard} but its transfer is {transferred}"
        )));
    }
    let entities: Vec<(&String, &Entity)> = bindings.iter().collect();
    let mut boolean_checks = 0;
    let mut product_checks = 0;
    for (na, a) in &entities {
        for (nb, b) in &entities {
            let pair = make_pair((*a).clone(), (*b).clone());
            if star(&pair) != make_pair(star(a), star(b)) {
                return Err(BqfError::AuditFailure(format!(
                    "*<{na},{nb}> != <*{na},*{nb}>"
                )));
            }
            product_checks += 1;
            if a.is_atom() || b.is_atom() {
                continue;
            }
            let ops: [(&str, SetOp); 4] = [
                ("union", Entity::union),
                ("intersection", Entity::intersection),
                ("difference", Entity::difference),
                ("product", Entity::product),
            ];
            for (name, op) in ops {
                let lhs = star(&op(a, b).unwrap());
                let rhs = op(&star(a), &star(b)).unwrap();
                if lhs != rhs {
                    return Err(BqfError::AuditFailure(format!(
                        "star does not commute with {name} on {na}, {nb}"
                    )));
                }
                if name == "product" {
                    product_checks += 1;
                } else {
                    boolean_checks += 1;
                }
            }
        }
    }
    Ok(TransferReport {
        formula: f.to_string(),
        standard,
        transferred,
        boolean_checks,
        product_checks,
    })
}
