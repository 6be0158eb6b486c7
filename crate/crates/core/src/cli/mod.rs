//! Command-line front end. [`run`] returns the exit code and the text for
//! stdout and stderr so that callers and tests never touch the process.
//!
//! Exit codes: 0 success, 1 a false verdict or failed audit (a witness is
//! printed), 2 malformed input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bqf::{self, Bindings, Entity};
use crate::fintop::{self, FinSpace, Property, TopoError};
use crate::germs::{self, los::Relation, AeVerdict, GermClassification};
use crate::hull::{self, RationalFunctionFamily};
use crate::hyperreal::{parse_hyperreal, Hyperreal};
use crate::poly::render_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "nonstd",
    version,
    about = "Exact infinitesimals, germs, bounded formulas and finite topology"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hyperreal expressions in `e`.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Sequence germs.
    #[command(subcommand)]
    Germ(GermCmd),
    /// Bounded-quantifier formulas over finite sets.
    #[command(subcommand)]
    Bqf(BqfCmd),
    /// Finite topological spaces given as JSON files.
    #[command(subcommand)]
    Topo(TopoCmd),
    /// Check the theorem catalogue on every space up to a size.
    Audit {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HyperCmd {
    /// Canonical form, class, standard part and decomposition.
    Eval { expr: String },
    /// Standard part only.
    St { expr: String },
    /// Exact n-th root.
    Root { expr: String, n: u32 },
}

#[derive(Debug, Subcommand)]
pub enum GermCmd {
    /// Almost-everywhere comparison.
    Compare {
        a: String,
        b: String,
        #[arg(value_parser = parse_relation)]
        relation: Relation,
    },
    /// Magnitude class and standard part.
    Classify { germ: String },
    /// Truth of a quantifier-free formula; bind variables with `--bind x=GERM`.
    Los {
        formula: String,
        #[arg(long = "bind")]
        bind: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BqfCmd {
    /// Truth value of a sentence; bind names with `--bind A={a,b}`.
    Eval {
        formula: String,
        #[arg(long = "bind")]
        bind: Vec<String>,
        /// Comma-separated atom names that denote themselves.
        #[arg(long)]
        atoms: Option<String>,
    },
    /// `{x in BOUND : formula}` for the formula's only free name.
    Define {
        formula: String,
        #[arg(long)]
        bound: String,
        #[arg(long = "bind")]
        bind: Vec<String>,
        #[arg(long)]
        atoms: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TopoCmd {
    /// Separation properties with monad and open-set verdicts.
    Check {
        file: String,
        #[arg(long)]
        property: Option<String>,
    },
    /// Hull by a family file, or the Stone–Čech / Hewitt / T0 quotient.
    Hull {
        file: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        stone_cech: bool,
        #[arg(long)]
        hewitt: bool,
        #[arg(long)]
        t0_reflect: bool,
    },
    /// T0-reflection.
    Reflect { file: String },
    /// Specialization order as DOT.
    Dot { file: String },
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    Ok(match s {
        "eq" | "=" => Relation::Eq,
        "ne" | "!=" => Relation::Ne,
        "lt" | "<" => Relation::Lt,
        "le" | "<=" => Relation::Le,
        "gt" | ">" => Relation::Gt,
        "ge" | ">=" => Relation::Ge,
        _ => return Err(format!("unknown relation '{s}' (eq, ne, lt, le, gt, ge)")),
    })
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    json: Value,
    table: String,
    dot: Option<String>,
}

impl Report {
    fn new(code: i32, json: Value, table: String) -> Self {
        Report {
            code,
            json,
            table,
            dot: None,
        }
    }
}

struct InputError {
    kind: &'static str,
    message: String,
    witness: Option<Value>,
}

fn input(kind: &'static str, e: impl std::fmt::Display) -> InputError {
    InputError {
        kind,
        message: e.to_string(),
        witness: None,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Json => to_json(&r.json),
                Format::Table => r.table,
                Format::Dot => r.dot.unwrap_or_else(|| to_json(&r.json)),
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let mut j = json!({"error": e.kind, "message": e.message});
            if let Some(w) = e.witness {
                j["witness"] = w;
            }
            Outcome {
                code: 2,
                stdout: to_json(&j),
                stderr: format!("error: {}\n", e.message),
            }
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn dispatch(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Hyper(c) => hyper(c),
        Command::Germ(c) => germ(c),
        Command::Bqf(c) => bqf_cmd(c),
        Command::Topo(c) => topo(c),
        Command::Audit { max_points } => audit(*max_points, cli.seed),
    }
}

fn parse_h(expr: &str) -> Result<Hyperreal, InputError> {
    parse_hyperreal(expr).map_err(|e| input(hyper_kind(&e), e))
}

fn hyper_kind(e: &crate::HyperrealError) -> &'static str {
    use crate::HyperrealError::*;
    match e {
        ZeroDenominator => "zero-denominator",
        DivisionByZero => "division-by-zero",
        NotFinite => "not-finite",
        NegativeEvenRoot => "negative-even-root",
        NotRepresentable => "not-representable",
        EmptyInterval => "empty-interval",
        ZeroRootIndex => "zero-root-index",
        Parse { .. } => "parse",
    }
}

fn hyper(c: &HyperCmd) -> Result<Report, InputError> {
    match c {
        HyperCmd::Eval { expr } => {
            let h = parse_h(expr)?;
            let class = h.classify();
            let st = h.st();
            let decomposition = h.decompose().ok().map(|(r, eps)| {
                json!({"standard": render_rational(&r), "infinitesimal": eps.to_string()})
            });
            let order = h.ord().map(|o| render_rational(&o));
            let json = json!({
                "input": expr,
                "canonical": h.to_string(),
                "classification": class.as_str(),
                "st": st.to_string(),
                "order": order,
                "decomposition": decomposition,
            });
            let mut table =
                format!("canonical       {h}\nclassification  {class}\nst              {st}\n");
            if let Some(d) = &decomposition {
                let _ = writeln!(
                    table,
                    "decomposition   {} + ({})",
                    d["standard"].as_str().unwrap(),
                    d["infinitesimal"].as_str().unwrap()
                );
            }
            Ok(Report::new(0, json, table))
        }
        HyperCmd::St { expr } => {
            let st = parse_h(expr)?.st().to_string();
            Ok(Report::new(
                0,
                json!({"input": expr, "st": st}),
                format!("{st}\n"),
            ))
        }
        HyperCmd::Root { expr, n } => {
            let h = parse_h(expr)?;
            let r = h.nth_root(*n).map_err(|e| input(hyper_kind(&e), e))?;
            Ok(Report::new(
                0,
                json!({"input": expr, "n": n, "root": r.to_string(), "classification": r.classify().as_str(), "st": r.st().to_string()}),
                format!("{r}\n"),
            ))
        }
    }
}

fn germ_kind(e: &germs::GermError) -> &'static str {
    use germs::GermError::*;
    match e {
        MixedClasses => "mixed-classes",
        AlmostEverywhereZeroDivisor => "ae-zero-divisor",
        UltrafilterDependentZeroDivisor => "ultrafilter-dependent-zero-divisor",
        ZeroDenominator => "zero-denominator",
        EmptyPeriod => "empty-period",
        QuantifierPresent => "quantifier-present",
        UnboundVariable(_) => "unbound-variable",
        FractionalPower => "fractional-power",
        Parse { .. } => "parse",
    }
}

fn gerr(e: germs::GermError) -> InputError {
    input(germ_kind(&e), e)
}

fn verdict_report(v: AeVerdict, mut json: Value, witness: Value) -> Report {
    let code = if v == AeVerdict::TrueAe { 0 } else { 1 };
    json["verdict"] = json!(v.as_str());
    if code == 1 {
        json["witness"] = witness;
    }
    Report::new(code, json, format!("{v}\n"))
}

fn germ(c: &GermCmd) -> Result<Report, InputError> {
    match c {
        GermCmd::Compare { a, b, relation } => {
            let (ga, gb) = (
                germs::parse_germ(a).map_err(gerr)?,
                germs::parse_germ(b).map_err(gerr)?,
            );
            let v = ga.ae_compare(&gb, *relation).map_err(gerr)?;
            let pattern = ga.sub(&gb).map_err(gerr)?.sign_pattern();
            let truths: Vec<bool> = pattern.iter().map(|s| relation.holds(*s)).collect();
            Ok(verdict_report(
                v,
                json!({"a": ga.to_string(), "b": gb.to_string(), "relation": relation.symbol()}),
                json!({"difference-sign-pattern": pattern, "truth-pattern": truths}),
            ))
        }
        GermCmd::Classify { germ } => {
            let g = germs::parse_germ(germ).map_err(gerr)?;
            let (json, table) = match g.classify() {
                GermClassification::Definite { class, st } => (
                    json!({"germ": g.to_string(), "class": g.class_name(), "classification": class.as_str(), "st": st.to_string()}),
                    format!("{class}  st = {st}\n"),
                ),
                GermClassification::PerResidue(v) => {
                    let rows: Vec<Value> = v
                        .iter()
                        .enumerate()
                        .map(|(r, (c, val))| json!({"residue": r, "classification": c.as_str(), "value": render_rational(val)}))
                        .collect();
                    let mut t = String::from("ultrafilter-dependent\n");
                    for (r, (c, val)) in v.iter().enumerate() {
                        let _ = writeln!(t, "  residue {r}: {c} {}", render_rational(val));
                    }
                    (
                        json!({"germ": g.to_string(), "class": g.class_name(), "classification": "ultrafilter-dependent", "residues": rows}),
                        t,
                    )
                }
            };
            Ok(Report::new(0, json, table))
        }
        GermCmd::Los { formula, bind } => {
            let f = germs::los::parse_qf(formula).map_err(gerr)?;
            let mut assignment = BTreeMap::new();
            for b in bind {
                let (name, src) = split_binding(b)?;
                assignment.insert(name, germs::parse_germ(src).map_err(gerr)?);
            }
            let v = germs::los::los_check_qf(&f, &assignment).map_err(gerr)?;
            let pw = germs::los::los_pointwise(&f, &assignment).map_err(gerr)?;
            let bindings: BTreeMap<&String, String> =
                assignment.iter().map(|(k, g)| (k, g.to_string())).collect();
            let json = json!({
                "formula": f.to_string(),
                "bindings": bindings,
                "pointwise": {"start": pw.start, "truths": pw.truths, "verdict": pw.verdict.as_str()},
            });
            let witness = json!({"start": pw.start, "truths": pw.truths});
            Ok(verdict_report(v, json, witness))
        }
    }
}

fn split_binding(b: &str) -> Result<(String, &str), InputError> {
    b.split_once('=')
        .map(|(n, v)| (n.trim().to_string(), v.trim()))
        .ok_or_else(|| {
            input(
                "binding",
                format!("binding '{b}' is not of the form name=value"),
            )
        })
}

fn berr(e: bqf::BqfError) -> InputError {
    use bqf::BqfError::*;
    let kind = match &e {
        Syntax { .. } => "syntax",
        UnboundedQuantifier { .. } => "unbounded-quantifier",
        UnboundConstant(_) => "unbound-constant",
        QuantifierOverAtom { .. } => "quantifier-over-atom",
        BoundNotASet(_) => "bound-not-a-set",
        FreeVariable(_) => "free-variable",
        AuditFailure(_) => "audit-failure",
    };
    input(kind, e)
}

/// Explicit bindings, then atoms named by `--atoms` or occurring in bound
/// entities, each denoting itself.
fn bqf_bindings(
    bind: &[String],
    atoms: &Option<String>,
    extra: &[&Entity],
) -> Result<Bindings, InputError> {
    let mut out = Bindings::new();
    for b in bind {
        let (name, src) = split_binding(b)?;
        out.insert(name, bqf::parse_entity(src).map_err(berr)?);
    }
    let mut names: Vec<String> = atoms
        .iter()
        .flat_map(|a| a.split(',').map(|s| s.trim().to_string()))
        .filter(|s| !s.is_empty())
        .collect();
    for e in out.values().chain(extra.iter().copied()) {
        names.extend(e.support());
    }
    for n in names {
        out.entry(n.clone()).or_insert_with(|| Entity::atom(n));
    }
    Ok(out)
}

fn bqf_cmd(c: &BqfCmd) -> Result<Report, InputError> {
    match c {
        BqfCmd::Eval {
            formula,
            bind,
            atoms,
        } => {
            let f = bqf::parse(formula).map_err(berr)?;
            let b = bqf_bindings(bind, atoms, &[])?;
            let v = bqf::eval(&f, &b).map_err(berr)?;
            let mut json = json!({"formula": f.to_string(), "value": v});
            if !v {
                json["witness"] = json!({"bindings": to_value(&b)});
            }
            Ok(Report::new(if v { 0 } else { 1 }, json, format!("{v}\n")))
        }
        BqfCmd::Define {
            formula,
            bound,
            bind,
            atoms,
        } => {
            let f = bqf::parse(formula).map_err(berr)?;
            let bound = bqf::parse_entity(bound).map_err(berr)?;
            let b = bqf_bindings(bind, atoms, &[&bound])?;
            let set = bqf::define_set(&bound, &f, &b).map_err(berr)?;
            Ok(Report::new(
                0,
                json!({"formula": f.to_string(), "bound": bound.to_string(), "set": set.to_json(), "display": set.to_string()}),
                format!("{set}\n"),
            ))
        }
    }
}

fn load_space(file: &str) -> Result<FinSpace, InputError> {
    let text = std::fs::read_to_string(file).map_err(|e| input("io", format!("{file}: {e}")))?;
    FinSpace::from_json_str(&text).map_err(|e| input(topo_kind(&e), e))
}

fn topo_kind(e: &TopoError) -> &'static str {
    match e {
        TopoError::MissingEmptyOrFull => "missing-empty-or-full",
        TopoError::NotClosedUnderUnion(..) => "not-closed-under-union",
        TopoError::NotClosedUnderIntersection(..) => "not-closed-under-intersection",
        TopoError::DuplicateOpen(_) => "duplicate-open",
        TopoError::DuplicatePoint(_) => "duplicate-point",
        TopoError::UnknownPoint(_) => "unknown-point",
        TopoError::TooLarge { .. } => "too-large",
        TopoError::NotTotal(_) => "not-total",
        TopoError::AuditFailure(_) => "audit-failure",
        TopoError::Json(_) => "json",
    }
}

fn herr(e: hull::HullError) -> InputError {
    use hull::HullError::*;
    let kind = match &e {
        DiscontinuousFamilyMember { .. } => "discontinuous-family-member",
        MissingValue { .. } => "missing-value",
        UnknownPoint { .. } => "unknown-point",
        BadValue(_) => "bad-value",
        Json(_) => "json",
        AuditFailure(_) => "audit-failure",
        Topo(t) => topo_kind(t),
    };
    let mut err = input(kind, &e);
    if let DiscontinuousFamilyMember {
        function,
        point,
        monad,
    } = &e
    {
        err.witness = Some(json!({"function": function, "point": point, "monad": monad}));
    }
    err
}

fn hull_report(h: &hull::Hull) -> Report {
    let j = h.to_json();
    let code = if h.audits_pass() { 0 } else { 1 };
    let mut table = String::new();
    for (i, c) in j.classes.iter().enumerate() {
        let _ = writeln!(table, "class {i}: {{{}}}", c.join(","));
    }
    for (k, v) in &j.audits {
        let _ = writeln!(table, "{:<44}{}", k, if *v { "pass" } else { "FAIL" });
    }
    let mut json = to_value(&j);
    if code == 1 {
        let failed: Vec<&String> = j
            .audits
            .iter()
            .filter(|(_, v)| !**v)
            .map(|(k, _)| k)
            .collect();
        json["witness"] = json!({"failed-audits": failed});
    }
    Report::new(code, json, table)
}

fn topo(c: &TopoCmd) -> Result<Report, InputError> {
    match c {
        TopoCmd::Check { file, property } => {
            let s = load_space(file)?;
            let verdicts = match property {
                Some(p) => {
                    let p: Property = p.parse().map_err(|e: String| input("property", e))?;
                    vec![s.check(p)]
                }
                None => s.check_all(),
            };
            let ok = verdicts.iter().all(|v| v.holds && v.agree);
            let mut table = String::new();
            for v in &verdicts {
                let _ = writeln!(
                    table,
                    "{:<24}{:<7}oracle {:<7}{}",
                    v.property.as_str(),
                    v.holds,
                    v.oracle,
                    if v.agree { "agree" } else { "DISAGREE" }
                );
                if let Some(w) = &v.witness {
                    let sets: Vec<String> = w
                        .sets
                        .iter()
                        .map(|s| format!("{{{}}}", s.join(",")))
                        .collect();
                    let _ = writeln!(
                        table,
                        "  witness: points [{}] sets [{}]: {}",
                        w.points.join(","),
                        sets.join(", "),
                        w.reason
                    );
                }
            }
            let json = json!({"space": to_value(&s.to_json()), "verdicts": to_value(&verdicts)});
            Ok(Report::new(if ok { 0 } else { 1 }, json, table))
        }
        TopoCmd::Hull {
            file,
            family,
            stone_cech,
            hewitt,
            t0_reflect,
        } => {
            let s = load_space(file)?;
            let chosen = [family.is_some(), *stone_cech, *hewitt, *t0_reflect]
                .iter()
                .filter(|b| **b)
                .count();
            if chosen != 1 {
                return Err(input(
                    "usage",
                    "choose exactly one of --family, --stone-cech, --hewitt, --t0-reflect",
                ));
            }
            let h = if let Some(path) = family {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| input("io", format!("{path}: {e}")))?;
                let fam = RationalFunctionFamily::from_json_str(&s, &text).map_err(herr)?;
                hull::build_hull(&s, &fam).map_err(herr)?
            } else if *stone_cech {
                hull::stone_cech_finite(&s)
            } else if *hewitt {
                hull::hewitt_finite(&s)
            } else {
                hull::t0_reflection(&s)
            };
            Ok(hull_report(&h))
        }
        TopoCmd::Reflect { file } => Ok(hull_report(&hull::t0_reflection(&load_space(file)?))),
        TopoCmd::Dot { file } => {
            let s = load_space(file)?;
            let dot = s.to_dot();
            let mut r = Report::new(0, json!({"dot": dot}), dot.clone());
            r.dot = Some(dot);
            Ok(r)
        }
    }
}

/// Two random rational combinations of the block indicators.
fn random_family(s: &FinSpace, rng: &mut ChaCha8Rng) -> RationalFunctionFamily {
    let blocks = s.z_partition().blocks;
    let functions = (0..2)
        .map(|i| {
            let weights: Vec<BigRational> = blocks
                .iter()
                .map(|_| {
                    BigRational::new(
                        rng.gen_range(-5i64..=5).into(),
                        rng.gen_range(1i64..=4).into(),
                    )
                })
                .collect();
            let values = (0..s.len())
                .map(|x| weights[blocks.iter().position(|b| b.contains(x)).unwrap()].clone())
                .collect();
            (format!("r{i}"), values)
        })
        .collect();
    RationalFunctionFamily::new(s, functions).expect("block combinations are continuous")
}

fn audit(max_points: usize, seed: u64) -> Result<Report, InputError> {
    if max_points > fintop::MAX_ENUMERATION_POINTS {
        let e = TopoError::TooLarge {
            n: max_points,
            max: fintop::MAX_ENUMERATION_POINTS,
        };
        return Err(input(topo_kind(&e), e));
    }
    let mut spaces = Vec::new();
    for n in 1..=max_points {
        spaces.extend(fintop::enumerate_topologies(n).map_err(|e| input(topo_kind(&e), e))?);
    }
    let report = fintop::theorem_audit(&spaces);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_failures: Vec<String> = spaces
        .iter()
        .filter(|s| {
            let h = hull::build_hull(s, &random_family(s, &mut rng)).expect("valid family");
            !h.audits_pass()
        })
        .map(|s| s.to_string())
        .collect();
    let ok = report.asserted_pass() && random_failures.is_empty();
    let sizes: Vec<String> = report
        .spaces_by_size
        .iter()
        .map(|(n, c)| format!("{n}-point: {c}"))
        .collect();
    let mut table = format!("spaces {} ({})\n", report.spaces, sizes.join(", "));
    for t in &report.theorems {
        let _ = writeln!(
            table,
            "{:<48}{:>4}/{:<4}{}",
            t.id,
            t.passed,
            t.checked,
            if t.asserted { "" } else { "  (descriptive)" }
        );
    }
    let _ = writeln!(
        table,
        "{:<48}{:>4}/{:<4}",
        "random-hull-families",
        spaces.len() - random_failures.len(),
        spaces.len()
    );
    let mut json = to_value(&report);
    json["largest_size_count"] =
        json!(report.spaces_by_size.get(&max_points).copied().unwrap_or(0));
    json["seed"] = json!(seed);
    json["random_hull_families"] = json!({"checked": spaces.len(), "failures": random_failures});
    if !ok {
        let failing: Vec<&str> = report
            .theorems
            .iter()
            .filter(|t| t.asserted && !t.counterexamples.is_empty())
            .map(|t| t.id.as_str())
            .collect();
        json["witness"] = json!({"failing-theorems": failing});
    }
    Ok(Report::new(if ok { 0 } else { 1 }, json, table))
}
