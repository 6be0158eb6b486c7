//! Finite topological spaces and their monads.
//!
//! In a finite space every point has a smallest open neighbourhood, its
//! monad `μ(x)`. The monad of a set is the smallest open set containing it.
//! Separation properties are decided through monads and each decision is
//! paired with an oracle that works from the open sets alone.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod audit;
mod enumerate;
mod props;

pub use audit::{
    compactness_identities, s_topology, theorem_audit, AuditReport, CompactnessReport,
    TheoremStatus,
};
pub use enumerate::{continuous_maps, enumerate_topologies, is_continuous};
pub use props::{Property, PropertyVerdict, Witness, ZPartition};

/// Largest space accepted for single-space checks.
pub const MAX_POINTS: usize = 12;

/// Largest point count for exhaustive enumeration.
pub const MAX_ENUMERATION_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("the empty set and the whole space must both be open")]
    MissingEmptyOrFull,
    #[error("union of {0} and {1} is not open")]
    NotClosedUnderUnion(String, String),
    #[error("intersection of {0} and {1} is not open")]
    NotClosedUnderIntersection(String, String),
    #[error("open set {0} listed twice")]
    DuplicateOpen(String),
    #[error("point label '{0}' listed twice")]
    DuplicatePoint(String),
    #[error("unknown point '{0}'")]
    UnknownPoint(String),
    #[error("{n} points exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error("invalid space JSON: {0}")]
    Json(String),
}

/// Subset of `0..32` as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        PointSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(x: usize) -> Self {
        PointSet(1 << x)
    }

    pub fn from_points(points: impl IntoIterator<Item = usize>) -> Self {
        PointSet(points.into_iter().fold(0, |m, x| m | 1 << x))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, o: PointSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: PointSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn union(self, o: PointSet) -> Self {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: PointSet) -> Self {
        PointSet(self.0 & o.0)
    }

    pub fn minus(self, o: PointSet) -> Self {
        PointSet(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet::full(n).minus(self)
    }

    pub fn with(self, x: usize) -> Self {
        PointSet(self.0 | 1 << x)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&x| self.contains(x))
    }

    /// All subsets of `0..n`.
    pub fn all(n: usize) -> impl Iterator<Item = PointSet> {
        (0..1u64 << n).map(|m| PointSet(m as u32))
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(PointSet(cur))
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A validated finite topology with its point monads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    points: Vec<String>,
    opens: Vec<PointSet>,
    monads: Vec<PointSet>,
}

/// Wire form: `{"points": ["a","b"], "opens": [[], ["a"], ["a","b"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

fn canonical_order(a: &PointSet, b: &PointSet) -> std::cmp::Ordering {
    (a.len(), a.0).cmp(&(b.len(), b.0))
}

impl FinSpace {
    /// Check the topology axioms and sort the opens canonically
    /// (by size, then by mask).
    pub fn validate(points: Vec<String>, opens: Vec<PointSet>) -> Result<Self, TopoError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(TopoError::TooLarge { n, max: MAX_POINTS });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(TopoError::DuplicatePoint(p.clone()));
            }
        }
        let full = PointSet::full(n);
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(full)) {
            let extra = bad.minus(full).iter().next().unwrap();
            return Err(TopoError::UnknownPoint(format!("#{extra}")));
        }
        let mut sorted = opens.clone();
        sorted.sort_by(canonical_order);
        let fmt = |s: PointSet| format_set(&points, s);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(TopoError::DuplicateOpen(fmt(w[0])));
        }
        if !sorted.contains(&PointSet::EMPTY) || !sorted.contains(&full) {
            return Err(TopoError::MissingEmptyOrFull);
        }
        for (i, &a) in sorted.iter().enumerate() {
            for &b in &sorted[i + 1..] {
                if sorted
                    .binary_search_by(|o| canonical_order(o, &a.union(b)))
                    .is_err()
                {
                    return Err(TopoError::NotClosedUnderUnion(fmt(a), fmt(b)));
                }
                if sorted
                    .binary_search_by(|o| canonical_order(o, &a.intersection(b)))
                    .is_err()
                {
                    return Err(TopoError::NotClosedUnderIntersection(fmt(a), fmt(b)));
                }
            }
        }
        let monads = (0..n)
            .map(|x| {
                sorted
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |m, o| m.intersection(*o))
            })
            .collect();
        Ok(FinSpace {
            points,
            opens: sorted,
            monads,
        })
    }

    /// Build from labels: `from_labels(&["a","b"], &[&[], &["a"], &["a","b"]])`.
    pub fn from_labels(points: &[&str], opens: &[&[&str]]) -> Result<Self, TopoError> {
        Self::from_json(&SpaceJson {
            points: points.iter().map(|s| s.to_string()).collect(),
            opens: opens
                .iter()
                .map(|o| o.iter().map(|s| s.to_string()).collect())
                .collect(),
        })
    }

    /// Points labelled `0..n` with the given open masks.
    pub fn numbered(n: usize, opens: Vec<PointSet>) -> Result<Self, TopoError> {
        Self::validate((0..n).map(|i| i.to_string()).collect(), opens)
    }

    pub fn from_json(j: &SpaceJson) -> Result<Self, TopoError> {
        let index: BTreeMap<&str, usize> = j
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let opens = j
            .opens
            .iter()
            .map(|o| {
                o.iter()
                    .map(|p| {
                        index
                            .get(p.as_str())
                            .copied()
                            .ok_or_else(|| TopoError::UnknownPoint(p.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(PointSet::from_points)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(j.points.clone(), opens)
    }

    pub fn from_json_str(s: &str) -> Result<Self, TopoError> {
        let j: SpaceJson = serde_json::from_str(s).map_err(|e| TopoError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            points: self.points.clone(),
            opens: self.opens.iter().map(|o| self.labels(*o)).collect(),
        }
    }

    /// Discrete topology on `n` numbered points.
    pub fn discrete(n: usize) -> Self {
        Self::numbered(n, PointSet::all(n).collect()).unwrap()
    }

    /// Indiscrete topology on `n` numbered points.
    pub fn indiscrete(n: usize) -> Self {
        let mut opens = vec![PointSet::EMPTY, PointSet::full(n)];
        opens.dedup();
        Self::numbered(n, opens).unwrap()
    }

    /// `{a, b}` with opens `∅, {a}, {a,b}`.
    pub fn sierpinski() -> Self {
        Self::from_labels(&["a", "b"], &[&[], &["a"], &["a", "b"]]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut c: Vec<PointSet> = self
            .opens
            .iter()
            .map(|o| o.complement(self.len()))
            .collect();
        c.sort_by(canonical_order);
        c
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens
            .binary_search_by(|o| canonical_order(o, &s))
            .is_ok()
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.is_open(s.complement(self.len()))
    }

    /// Smallest open set containing `x`.
    pub fn monad(&self, x: usize) -> PointSet {
        self.monads[x]
    }

    /// Intersection of all open sets containing `a` (empty for `a = ∅`).
    pub fn monad_set(&self, a: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|o| a.is_subset(**o))
            .fold(self.full(), |m, o| m.intersection(*o))
    }

    /// `{x : A ∩ μ(x) ≠ ∅}`.
    pub fn closure_robinson(&self, a: PointSet) -> PointSet {
        PointSet::from_points((0..self.len()).filter(|&x| !self.monads[x].is_disjoint(a)))
    }

    /// `{x : μ(x) ⊆ H}`.
    pub fn interior_robinson(&self, h: PointSet) -> PointSet {
        PointSet::from_points((0..self.len()).filter(|&x| self.monads[x].is_subset(h)))
    }

    /// Smallest closed superset.
    pub fn closure(&self, a: PointSet) -> PointSet {
        self.closed_sets()
            .into_iter()
            .filter(|c| a.is_subset(*c))
            .fold(self.full(), |m, c| m.intersection(c))
    }

    /// Largest open subset.
    pub fn interior(&self, a: PointSet) -> PointSet {
        self.opens
            .iter()
            .filter(|o| o.is_subset(a))
            .fold(PointSet::EMPTY, |m, o| m.union(*o))
    }

    /// `x ≤ y` iff `μ(x) ⊆ μ(y)`, equivalently `y ∈ cl{x}`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.monads[x].is_subset(self.monads[y])
    }

    pub fn labels(&self, s: PointSet) -> Vec<String> {
        s.iter().map(|x| self.points[x].clone()).collect()
    }

    pub fn format_set(&self, s: PointSet) -> String {
        format_set(&self.points, s)
    }

    pub fn parse_set(&self, labels: &[&str]) -> Result<PointSet, TopoError> {
        labels
            .iter()
            .map(|l| {
                self.point_index(l)
                    .ok_or_else(|| TopoError::UnknownPoint(l.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PointSet::from_points)
    }

    /// Specialization preorder as a transitively reduced DOT digraph:
    /// an edge `x -> y` for each cover `μ(x) ⊊ μ(y)`, and a two-way edge
    /// between points with equal monads.
    pub fn to_dot(&self) -> String {
        let n = self.len();
        let q = |x: usize| format!("\"{}\"", self.points[x].replace('"', "\\\""));
        let mut out = String::from("digraph specialization {\n  rankdir=BT;\n");
        for x in 0..n {
            out.push_str(&format!("  {};\n", q(x)));
        }
        let strict = |x: usize, y: usize| self.leq(x, y) && !self.leq(y, x);
        for x in 0..n {
            for y in 0..n {
                if strict(x, y) && !(0..n).any(|z| strict(x, z) && strict(z, y)) {
                    out.push_str(&format!("  {} -> {};\n", q(x), q(y)));
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.monads[x] == self.monads[y] {
                    out.push_str(&format!("  {} -> {} [dir=both];\n", q(x), q(y)));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} with opens ", self.points.join(","))?;
        let opens: Vec<String> = self.opens.iter().map(|o| self.format_set(*o)).collect();
        write!(f, "{{{}}}", opens.join(", "))
    }
}

fn format_set(points: &[String], s: PointSet) -> String {
    let v: Vec<&str> = s.iter().map(|x| points[x].as_str()).collect();
    format!("{{{}}}", v.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `{0,1,2}` with opens `∅, {0}, {0,1}, {0,2}, X`.
    pub(crate) fn three_point() -> FinSpace {
        FinSpace::from_labels(
            &["0", "1", "2"],
            &[&[], &["0"], &["0", "1"], &["0", "2"], &["0", "1", "2"]],
        )
        .unwrap()
    }

    fn set(s: &FinSpace, l: &[&str]) -> PointSet {
        s.parse_set(l).unwrap()
    }

    #[test]
    fn validation() {
        assert!(FinSpace::from_labels(&["a", "b"], &[&[], &["a"], &["a", "b"]]).is_ok());
        assert_eq!(
            FinSpace::from_labels(&["a", "b"], &[&[], &["a"], &["b"]]),
            Err(TopoError::MissingEmptyOrFull)
        );
        assert!(matches!(
            FinSpace::from_labels(&["a", "b", "c"], &[&[], &["a"], &["b"], &["a", "b", "c"]]),
            Err(TopoError::NotClosedUnderUnion(..))
        ));
        assert!(matches!(
            FinSpace::from_labels(
                &["a", "b", "c"],
                &[&[], &["a", "b"], &["b", "c"], &["b", "a"], &["a", "b", "c"]]
            ),
            Err(TopoError::DuplicateOpen(_))
        ));
        assert!(matches!(
            FinSpace::from_labels(
                &["a", "b", "c"],
                &[&[], &["a", "b"], &["b", "c"], &["a", "b", "c"]]
            ),
            Err(TopoError::NotClosedUnderIntersection(..))
        ));
        assert_eq!(
            FinSpace::from_labels(&["a"], &[&[], &["z"]]),
            Err(TopoError::UnknownPoint("z".into()))
        );
        assert!(matches!(
            FinSpace::numbered(13, vec![]),
            Err(TopoError::TooLarge { n: 13, .. })
        ));
    }

    #[test]
    fn monads_of_three_point_space() {
        let s = three_point();
        assert_eq!(s.monad(0), set(&s, &["0"]));
        assert_eq!(s.monad(1), set(&s, &["0", "1"]));
        assert_eq!(s.monad(2), set(&s, &["0", "2"]));
        assert_eq!(s.monad_set(set(&s, &["1", "2"])), s.full());
        assert_eq!(s.monad_set(PointSet::EMPTY), PointSet::EMPTY);
    }

    #[test]
    fn robinson_operators() {
        let s = three_point();
        assert_eq!(s.closure_robinson(set(&s, &["1"])), set(&s, &["1"]));
        assert_eq!(s.closure_robinson(set(&s, &["0"])), s.full());
        assert_eq!(s.interior_robinson(set(&s, &["1", "2"])), PointSet::EMPTY);
        for a in PointSet::all(3) {
            assert_eq!(s.closure_robinson(a), s.closure(a));
            assert_eq!(s.interior_robinson(a), s.interior(a));
        }
    }

    #[test]
    fn closed_sets_and_order() {
        let s = three_point();
        let closed: Vec<String> = s.closed_sets().iter().map(|c| s.format_set(*c)).collect();
        assert_eq!(closed, ["{}", "{1}", "{2}", "{1,2}", "{0,1,2}"]);
        assert!(s.leq(0, 1) && s.leq(0, 2) && !s.leq(1, 2));
    }

    #[test]
    fn subsets_enumeration() {
        let s = PointSet::from_points([0, 2, 3]);
        let subs: Vec<PointSet> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(PointSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn json_and_dot() {
        let s = FinSpace::sierpinski();
        let j = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(j, r#"{"points":["a","b"],"opens":[[],["a"],["a","b"]]}"#);
        assert_eq!(FinSpace::from_json_str(&j).unwrap(), s);
        assert!(s.to_dot().contains("\"a\" -> \"b\";"));
        let d = FinSpace::indiscrete(2).to_dot();
        assert!(d.contains("\"0\" -> \"1\" [dir=both];"));
        let t = three_point().to_dot();
        assert!(t.contains("\"0\" -> \"1\";") && t.contains("\"0\" -> \"2\";"));
    }
}
