#![allow(clippy::useless_conversion)]
//! Python bindings: `Hyperreal`, `Germ`, `Entity` and `FinSpace`, plus
//! formula evaluation and hull construction returning JSON text.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use pyo3::basic::CompareOp;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use nonstd::bqf::{self, Bindings};
use nonstd::fintop::{self, PointSet, Property};
use nonstd::germs::{self, Relation};
use nonstd::hull::{self, RationalFunctionFamily};
use nonstd::HyperrealError;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hyper_err(e: HyperrealError) -> PyErr {
    match e {
        HyperrealError::DivisionByZero | HyperrealError::ZeroDenominator => {
            PyZeroDivisionError::new_err(e.to_string())
        }
        other => value_err(other),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(value_err)
}

#[pyclass(frozen, module = "nonstd_py")]
#[derive(Clone)]
struct Hyperreal(nonstd::Hyperreal);

#[pymethods]
impl Hyperreal {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        expr.parse().map(Hyperreal).map_err(hyper_err)
    }

    #[staticmethod]
    fn epsilon() -> Self {
        Hyperreal(nonstd::Hyperreal::epsilon())
    }

    fn classify(&self) -> &'static str {
        self.0.classify().as_str()
    }

    /// Standard part as text: a rational, `+inf` or `-inf`.
    fn st(&self) -> String {
        self.0.st().to_string()
    }

    /// `(c, h)` with `c` rational text and `h` infinitesimal.
    fn decompose(&self) -> PyResult<(String, Hyperreal)> {
        let (c, h) = self.0.decompose().map_err(hyper_err)?;
        Ok((c.to_string(), Hyperreal(h)))
    }

    fn nth_root(&self, n: u32) -> PyResult<Self> {
        self.0.nth_root(n).map(Hyperreal).map_err(hyper_err)
    }

    fn is_close(&self, other: &Hyperreal) -> bool {
        self.0.infinitesimally_close(&other.0)
    }

    fn __add__(&self, o: &Hyperreal) -> Self {
        Hyperreal(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Hyperreal) -> Self {
        Hyperreal(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Hyperreal) -> Self {
        Hyperreal(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Hyperreal) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(Hyperreal).map_err(hyper_err)
    }

    fn __neg__(&self) -> Self {
        Hyperreal(-self.0.clone())
    }

    fn __pow__(&self, n: i32, _modulo: Option<i32>) -> PyResult<Self> {
        self.0.pow(n).map(Hyperreal).map_err(hyper_err)
    }

    fn __richcmp__(&self, o: &Hyperreal, op: CompareOp) -> bool {
        op.matches(self.0.cmp(&o.0))
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Hyperreal('{}')", self.0)
    }
}

fn relation(s: &str) -> PyResult<Relation> {
    Ok(match s {
        "eq" | "=" => Relation::Eq,
        "ne" | "!=" => Relation::Ne,
        "lt" | "<" => Relation::Lt,
        "le" | "<=" => Relation::Le,
        "gt" | ">" => Relation::Gt,
        "ge" | ">=" => Relation::Ge,
        other => return Err(value_err(format!("unknown relation '{other}'"))),
    })
}

#[pyclass(frozen, module = "nonstd_py")]
#[derive(Clone)]
struct Germ(nonstd::Germ);

#[pymethods]
impl Germ {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        germs::parse_germ(src).map(Germ).map_err(value_err)
    }

    /// `true-ae`, `false-ae` or `ultrafilter-dependent`.
    fn compare(&self, other: &Germ, rel: &str) -> PyResult<&'static str> {
        let v = self
            .0
            .ae_compare(&other.0, relation(rel)?)
            .map_err(value_err)?;
        Ok(v.as_str())
    }

    fn to_hyperreal(&self) -> PyResult<Hyperreal> {
        self.0.to_hyperreal().map(Hyperreal).map_err(value_err)
    }

    fn value_at(&self, n: u64) -> Option<String> {
        self.0.value_at(n).map(|v| v.to_string())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Germ('{}')", self.0)
    }
}

/// Łoś verdict of a quantifier-free formula under germ bindings.
#[pyfunction]
fn los(formula: &str, bindings: BTreeMap<String, Germ>) -> PyResult<&'static str> {
    let phi = germs::parse_qf(formula).map_err(value_err)?;
    let assignment = bindings.into_iter().map(|(k, g)| (k, g.0)).collect();
    germs::los_check_qf(&phi, &assignment)
        .map(|v| v.as_str())
        .map_err(value_err)
}

#[pyclass(frozen, module = "nonstd_py")]
#[derive(Clone)]
struct Entity(bqf::Entity);

#[pymethods]
impl Entity {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        bqf::parse_entity(src).map(Entity).map_err(value_err)
    }

    fn __contains__(&self, x: &Entity) -> bool {
        self.0.contains(&x.0)
    }

    fn __len__(&self) -> usize {
        self.0.members().map_or(0, |m| m.len())
    }

    fn is_atom(&self) -> bool {
        self.0.is_atom()
    }

    fn star(&self) -> Self {
        Entity(bqf::star(&self.0))
    }

    fn __eq__(&self, o: &Entity) -> bool {
        self.0 == o.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Entity('{}')", self.0)
    }
}

fn bindings(atoms: Vec<String>, bind: BTreeMap<String, Entity>) -> Bindings {
    let mut b = bqf::atom_bindings(atoms.iter().map(String::as_str));
    b.extend(bind.into_iter().map(|(k, e)| (k, e.0)));
    b
}

#[pyfunction]
#[pyo3(signature = (formula, bind = BTreeMap::new(), atoms = Vec::new()))]
fn bqf_eval(formula: &str, bind: BTreeMap<String, Entity>, atoms: Vec<String>) -> PyResult<bool> {
    let f = bqf::parse(formula).map_err(value_err)?;
    bqf::eval(&f, &bindings(atoms, bind)).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (formula, bound, bind = BTreeMap::new(), atoms = Vec::new()))]
fn bqf_define(
    formula: &str,
    bound: &Entity,
    bind: BTreeMap<String, Entity>,
    atoms: Vec<String>,
) -> PyResult<Entity> {
    let f = bqf::parse(formula).map_err(value_err)?;
    bqf::define_set(&bound.0, &f, &bindings(atoms, bind))
        .map(Entity)
        .map_err(value_err)
}

#[pyclass(frozen, module = "nonstd_py")]
#[derive(Clone)]
struct FinSpace(fintop::FinSpace);

impl FinSpace {
    fn set(&self, labels: Vec<String>) -> PyResult<PointSet> {
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        self.0.parse_set(&refs).map_err(value_err)
    }

    fn index(&self, label: &str) -> PyResult<usize> {
        self.0
            .point_index(label)
            .ok_or_else(|| value_err(format!("unknown point '{label}'")))
    }
}

#[pymethods]
impl FinSpace {
    #[new]
    fn new(points: Vec<String>, opens: Vec<Vec<String>>) -> PyResult<Self> {
        let p: Vec<&str> = points.iter().map(String::as_str).collect();
        let o: Vec<Vec<&str>> = opens
            .iter()
            .map(|u| u.iter().map(String::as_str).collect())
            .collect();
        let o: Vec<&[&str]> = o.iter().map(Vec::as_slice).collect();
        fintop::FinSpace::from_labels(&p, &o)
            .map(FinSpace)
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        fintop::FinSpace::from_json_str(text)
            .map(FinSpace)
            .map_err(value_err)
    }

    #[staticmethod]
    fn discrete(n: usize) -> Self {
        FinSpace(fintop::FinSpace::discrete(n))
    }

    #[staticmethod]
    fn indiscrete(n: usize) -> Self {
        FinSpace(fintop::FinSpace::indiscrete(n))
    }

    #[staticmethod]
    fn sierpinski() -> Self {
        FinSpace(fintop::FinSpace::sierpinski())
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0.to_json())
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.0.points().to_vec()
    }

    #[getter]
    fn opens(&self) -> Vec<Vec<String>> {
        self.0.opens().iter().map(|u| self.0.labels(*u)).collect()
    }

    fn monad(&self, point: &str) -> PyResult<Vec<String>> {
        Ok(self.0.labels(self.0.monad(self.index(point)?)))
    }

    fn closure(&self, labels: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.0.labels(self.0.closure_robinson(self.set(labels)?)))
    }

    fn interior(&self, labels: Vec<String>) -> PyResult<Vec<String>> {
        Ok(self.0.labels(self.0.interior_robinson(self.set(labels)?)))
    }

    fn holds(&self, property: &str) -> PyResult<bool> {
        let p: Property = property.parse().map_err(value_err)?;
        Ok(self.0.check(p).holds)
    }

    /// Verdicts for every property as JSON text.
    fn check_all(&self) -> PyResult<String> {
        to_json(&self.0.check_all())
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Stone-Čech hull of a finite space as JSON text.
#[pyfunction]
fn stone_cech(space: &FinSpace) -> PyResult<String> {
    to_json(&hull::stone_cech_finite(&space.0).to_json())
}

#[pyfunction]
fn t0_reflection(space: &FinSpace) -> PyResult<String> {
    to_json(&hull::t0_reflection(&space.0).to_json())
}

/// Hull generated by a family given as `{"f": {"a": "0", ...}}` JSON text.
#[pyfunction]
fn hull_from_family(space: &FinSpace, family: &str) -> PyResult<String> {
    let fam = RationalFunctionFamily::from_json_str(&space.0, family).map_err(value_err)?;
    let h = hull::build_hull(&space.0, &fam).map_err(value_err)?;
    to_json(&h.to_json())
}

#[pyfunction]
fn enumerate_topologies(n: usize) -> PyResult<Vec<FinSpace>> {
    fintop::enumerate_topologies(n)
        .map(|v| v.into_iter().map(FinSpace).collect())
        .map_err(value_err)
}

#[pymodule]
pub fn nonstd_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hyperreal>()?;
    m.add_class::<Germ>()?;
    m.add_class::<Entity>()?;
    m.add_class::<FinSpace>()?;
    m.add_function(wrap_pyfunction!(los, m)?)?;
    m.add_function(wrap_pyfunction!(bqf_eval, m)?)?;
    m.add_function(wrap_pyfunction!(bqf_define, m)?)?;
    m.add_function(wrap_pyfunction!(stone_cech, m)?)?;
    m.add_function(wrap_pyfunction!(t0_reflection, m)?)?;
    m.add_function(wrap_pyfunction!(hull_from_family, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_topologies, m)?)?;
    Ok(())
}
