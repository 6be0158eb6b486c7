//! Quotients of finite spaces: the T0-reflection and hulls cut out by
//! families of continuous rational functions.
//!
//! Values are exact rationals and "infinitely close" collapses to equality,
//! so a hull identifies points on which every family member agrees.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fintop::{FinSpace, PointSet, Property, TopoError};
use crate::poly::render_rational;

mod audit;

pub use audit::{ring_correspondence, zero_set_formulas, RingReport, ZeroSetReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("function '{function}' is not constant on the monad {{{}}} of '{point}'", monad.join(","))]
    DiscontinuousFamilyMember {
        function: String,
        point: String,
        monad: Vec<String>,
    },
    #[error("function '{function}' has no value at '{point}'")]
    MissingValue { function: String, point: String },
    #[error("function '{function}' gives a value at unknown point '{point}'")]
    UnknownPoint { function: String, point: String },
    #[error("bad rational '{0}'")]
    BadValue(String),
    #[error("invalid family JSON: {0}")]
    Json(String),
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
}

/// Named functions on the points of a space, each constant on every monad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionFamily {
    functions: BTreeMap<String, Vec<BigRational>>,
}

impl RationalFunctionFamily {
    pub fn empty() -> Self {
        RationalFunctionFamily {
            functions: BTreeMap::new(),
        }
    }

    /// Values are indexed by point.
    pub fn new(
        space: &FinSpace,
        functions: BTreeMap<String, Vec<BigRational>>,
    ) -> Result<Self, HullError> {
        for (name, values) in &functions {
            if values.len() != space.len() {
                let missing = space
                    .points()
                    .get(values.len())
                    .cloned()
                    .unwrap_or_default();
                return Err(HullError::MissingValue {
                    function: name.clone(),
                    point: missing,
                });
            }
            for x in 0..space.len() {
                if space.monad(x).iter().any(|y| values[y] != values[x]) {
                    return Err(HullError::DiscontinuousFamilyMember {
                        function: name.clone(),
                        point: space.points()[x].clone(),
                        monad: space.labels(space.monad(x)),
                    });
                }
            }
        }
        Ok(RationalFunctionFamily { functions })
    }

    /// `{"f": {"a": "0", "b": "1/2"}}`; values may also be JSON integers.
    pub fn from_json_str(space: &FinSpace, s: &str) -> Result<Self, HullError> {
        let raw: BTreeMap<String, BTreeMap<String, serde_json::Value>> =
            serde_json::from_str(s).map_err(|e| HullError::Json(e.to_string()))?;
        let mut functions = BTreeMap::new();
        for (name, table) in raw {
            let mut values = vec![None; space.len()];
            for (label, v) in table {
                let x = space
                    .point_index(&label)
                    .ok_or_else(|| HullError::UnknownPoint {
                        function: name.clone(),
                        point: label.clone(),
                    })?;
                let text = match &v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                    other => return Err(HullError::BadValue(other.to_string())),
                };
                let r = BigRational::from_str(text.trim())
                    .map_err(|_| HullError::BadValue(text.clone()))?;
                values[x] = Some(r);
            }
            let values = values
                .into_iter()
                .enumerate()
                .map(|(x, v)| {
                    v.ok_or_else(|| HullError::MissingValue {
                        function: name.clone(),
                        point: space.points()[x].clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            functions.insert(name, values);
        }
        Self::new(space, functions)
    }

    pub fn functions(&self) -> &BTreeMap<String, Vec<BigRational>> {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// For each closed `F` and `x ∉ F`, some member has `g(x) ∉ g[F]`.
    pub fn distinguishes_points_and_closed_sets(&self, space: &FinSpace) -> bool {
        space.closed_sets().iter().all(|&f| {
            f.complement(space.len()).iter().all(|x| {
                self.functions
                    .values()
                    .any(|g| f.iter().all(|y| g[y] != g[x]))
            })
        })
    }

    /// Indicator functions of the zero-set blocks, named `block0`, `block1`, ...
    pub fn block_indicators(space: &FinSpace) -> Self {
        let z = space.z_partition();
        let functions = z
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let values = (0..space.len())
                    .map(|x| {
                        if b.contains(x) {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect();
                (format!("block{i}"), values)
            })
            .collect();
        RationalFunctionFamily { functions }
    }

    /// A single unbounded-style function taking value `i + 1` on block `i`.
    pub fn block_weights(space: &FinSpace) -> Self {
        let z = space.z_partition();
        let values = (0..space.len())
            .map(|x| {
                let i = z.blocks.iter().position(|b| b.contains(x)).unwrap();
                BigRational::from_integer((i as i64 + 1).into())
            })
            .collect();
        RationalFunctionFamily {
            functions: BTreeMap::from([("weight".to_string(), values)]),
        }
    }
}

/// A quotient of a finite space with its audits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    pub source: FinSpace,
    /// Ordered by least member.
    pub classes: Vec<PointSet>,
    pub quotient: FinSpace,
    /// Class index of each source point.
    pub q: Vec<usize>,
    /// `f̂` on classes, per family member.
    pub lifted: BTreeMap<String, Vec<BigRational>>,
    /// Identities that must hold.
    pub audits: BTreeMap<String, bool>,
    /// Computed facts that may go either way.
    pub facts: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullJson {
    pub classes: Vec<Vec<String>>,
    pub opens: Vec<Vec<String>>,
    pub quotient_map: BTreeMap<String, String>,
    pub lifted: BTreeMap<String, BTreeMap<String, String>>,
    pub audits: BTreeMap<String, bool>,
    pub facts: BTreeMap<String, bool>,
}

/// Quotient of `source` by the partition `classes` (sorted by least member).
fn quotient(
    source: &FinSpace,
    mut classes: Vec<PointSet>,
) -> Result<(Vec<PointSet>, FinSpace, Vec<usize>), TopoError> {
    classes.sort_by_key(|c| c.iter().next());
    let k = classes.len();
    let mut q = vec![0; source.len()];
    for (i, c) in classes.iter().enumerate() {
        for x in c.iter() {
            q[x] = i;
        }
    }
    let labels: Vec<String> = classes.iter().map(|c| source.format_set(*c)).collect();
    let opens = PointSet::all(k)
        .filter(|v| {
            let pre = v.iter().fold(PointSet::EMPTY, |m, i| m.union(classes[i]));
            source.is_open(pre)
        })
        .collect();
    Ok((classes.clone(), FinSpace::validate(labels, opens)?, q))
}

fn image(q: &[usize], s: PointSet) -> PointSet {
    PointSet::from_points(s.iter().map(|x| q[x]))
}

fn preimage(q: &[usize], v: PointSet) -> PointSet {
    PointSet::from_points((0..q.len()).filter(|&x| v.contains(q[x])))
}

/// Whether `q` is a homeomorphism onto the quotient.
fn is_embedding(source: &FinSpace, quotient: &FinSpace, q: &[usize]) -> bool {
    let injective = quotient.len() == source.len();
    injective
        && source
            .opens()
            .iter()
            .all(|g| quotient.is_open(image(q, *g)))
}

/// Quotient by equal values of every family member.
pub fn build_hull(space: &FinSpace, family: &RationalFunctionFamily) -> Result<Hull, HullError> {
    let family = RationalFunctionFamily::new(space, family.functions.clone())?;
    let n = space.len();
    let same = |x: usize, y: usize| family.functions.values().all(|g| g[x] == g[y]);
    let mut classes: Vec<PointSet> = Vec::new();
    for x in 0..n {
        match classes
            .iter_mut()
            .find(|c| same(c.iter().next().unwrap(), x))
        {
            Some(c) => *c = c.with(x),
            None => classes.push(PointSet::singleton(x)),
        }
    }
    let (classes, quotient, q) = quotient(space, classes)?;
    let lifted: BTreeMap<String, Vec<BigRational>> = family
        .functions
        .iter()
        .map(|(name, g)| {
            let hat = classes
                .iter()
                .map(|c| g[c.iter().next().unwrap()].clone())
                .collect();
            (name.clone(), hat)
        })
        .collect();

    let monad_inside = (0..n).all(|x| space.monad(x).is_subset(classes[q[x]]));
    let monad_equal = (0..n).all(|x| space.monad(x) == classes[q[x]]);
    let distinguishes = family.distinguishes_points_and_closed_sets(space);
    let factorization = family
        .functions
        .iter()
        .all(|(name, g)| (0..n).all(|x| lifted[name][q[x]] == g[x]));
    let surjective = image(&q, space.full()) == quotient.full();
    let mut audits = BTreeMap::from([
        ("monad-inside-class".to_string(), monad_inside),
        (
            "equality-when-distinguishing".to_string(),
            !distinguishes || monad_equal,
        ),
        ("quotient-hausdorff".to_string(), quotient.is_t2()),
        (
            "quotient-discrete".to_string(),
            quotient.opens().len() == 1 << quotient.len(),
        ),
        ("factorization".to_string(), factorization),
        ("surjective".to_string(), surjective),
        ("compact".to_string(), true),
    ]);
    if quotient.len() == n {
        audits.insert("embedding".into(), is_embedding(space, &quotient, &q));
    }
    let facts = BTreeMap::from([
        (
            "distinguishes-points-and-closed-sets".to_string(),
            distinguishes,
        ),
        ("monad-equals-class".to_string(), monad_equal),
    ]);
    Ok(Hull {
        source: space.clone(),
        classes,
        quotient,
        q,
        lifted,
        audits,
        facts,
    })
}

/// Identify points with equal closures.
pub fn t0_reflection(space: &FinSpace) -> Hull {
    let n = space.len();
    let closures: Vec<PointSet> = (0..n)
        .map(|x| space.closure(PointSet::singleton(x)))
        .collect();
    let mut classes: Vec<PointSet> = Vec::new();
    for x in 0..n {
        match classes
            .iter_mut()
            .find(|c| closures[c.iter().next().unwrap()] == closures[x])
        {
            Some(c) => *c = c.with(x),
            None => classes.push(PointSet::singleton(x)),
        }
    }
    let (classes, quotient, q) =
        quotient(space, classes).expect("a quotient of a valid space is valid");
    let opens = space.opens();
    let q_open = opens.iter().all(|g| quotient.is_open(image(&q, *g)));
    let saturated = opens.iter().all(|g| preimage(&q, image(&q, *g)) == *g);
    let wh_iff = space.is_weakly_hausdorff() == quotient.is_t2();
    let again = if quotient.len() < n {
        let r = t0_reflection_classes(&quotient);
        r == quotient.len()
    } else {
        true
    };
    let audits = BTreeMap::from([
        ("q-open".to_string(), q_open),
        ("saturation".to_string(), saturated),
        (
            "weakly-hausdorff-iff-reflection-hausdorff".to_string(),
            wh_iff,
        ),
        (
            "reflection-t0".to_string(),
            quotient.check(Property::T0).holds,
        ),
        ("idempotent".to_string(), again),
        (
            "surjective".to_string(),
            image(&q, space.full()) == quotient.full(),
        ),
    ]);
    let facts = BTreeMap::from([
        (
            "source-weakly-hausdorff".to_string(),
            space.is_weakly_hausdorff(),
        ),
        ("reflection-hausdorff".to_string(), quotient.is_t2()),
    ]);
    Hull {
        source: space.clone(),
        classes,
        quotient,
        q,
        lifted: BTreeMap::new(),
        audits,
        facts,
    }
}

fn t0_reflection_classes(space: &FinSpace) -> usize {
    let mut closures: Vec<PointSet> = (0..space.len())
        .map(|x| space.closure(PointSet::singleton(x)))
        .collect();
    closures.sort();
    closures.dedup();
    closures.len()
}

/// Hull over the bounded generating family: indicators of zero-set blocks.
pub fn stone_cech_finite(space: &FinSpace) -> Hull {
    let mut h = build_hull(space, &RationalFunctionFamily::block_indicators(space))
        .expect("block indicators are continuous");
    add_block_audits(space, &mut h);
    h
}

/// Hull over a single function separating all blocks; at finite scale every
/// continuous function is already bounded.
pub fn hewitt_finite(space: &FinSpace) -> Hull {
    let mut h = build_hull(space, &RationalFunctionFamily::block_weights(space))
        .expect("block weights are continuous");
    add_block_audits(space, &mut h);
    h
}

fn add_block_audits(space: &FinSpace, h: &mut Hull) {
    let blocks = space.z_partition().blocks;
    let mut sorted = blocks.clone();
    sorted.sort_by_key(|c| c.iter().next());
    h.audits
        .insert("classes-are-blocks".into(), sorted == h.classes);
    let crh = space.check(Property::CompletelyRegular).holds && space.is_t2();
    if crh {
        h.audits.insert(
            "completely-regular-hausdorff-embeds".into(),
            is_embedding(space, &h.quotient, &h.q),
        );
    }
}

impl Hull {
    pub fn audits_pass(&self) -> bool {
        self.audits.values().all(|&v| v)
    }

    /// Same partition and same quotient topology.
    pub fn same_as(&self, other: &Hull) -> bool {
        self.classes == other.classes && self.quotient == other.quotient
    }

    pub fn to_json(&self) -> HullJson {
        let class_label = |i: usize| self.quotient.points()[i].clone();
        HullJson {
            classes: self
                .classes
                .iter()
                .map(|c| self.source.labels(*c))
                .collect(),
            opens: self
                .quotient
                .opens()
                .iter()
                .map(|o| self.quotient.labels(*o))
                .collect(),
            quotient_map: (0..self.source.len())
                .map(|x| (self.source.points()[x].clone(), class_label(self.q[x])))
                .collect(),
            lifted: self
                .lifted
                .iter()
                .map(|(name, vals)| {
                    let table = vals
                        .iter()
                        .enumerate()
                        .map(|(i, v)| (class_label(i), render_rational(v)))
                        .collect();
                    (name.clone(), table)
                })
                .collect(),
            audits: self.audits.clone(),
            facts: self.facts.clone(),
        }
    }
}
