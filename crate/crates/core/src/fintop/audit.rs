use std::collections::BTreeMap;

use serde::Serialize;

use super::{FinSpace, PointSet, Property, TopoError};
use crate::hull::{
    build_hull, hewitt_finite, stone_cech_finite, t0_reflection, RationalFunctionFamily,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompactnessReport {
    pub subsets_checked: usize,
    /// `A ⊆ ⋃_{x∈A} μ(x)`.
    pub covered_by_monads: usize,
    /// `⋃_{x∈A} μ(x) = ⋃_{α∈*A} μ(α)`, with `*A = A` at finite scale.
    pub standard_union_equals_star_union: usize,
    /// `⋃_{x∈A} μ(x) = μ(A)`.
    pub union_equals_set_monad: usize,
}

/// Every finite space is compact; checks the monad identities that
/// characterize compactness on every subset.
pub fn compactness_identities(space: &FinSpace) -> Result<CompactnessReport, TopoError> {
    let mut report = CompactnessReport {
        subsets_checked: 0,
        covered_by_monads: 0,
        standard_union_equals_star_union: 0,
        union_equals_set_monad: 0,
    };
    let union = |a: PointSet| {
        a.iter()
            .fold(PointSet::EMPTY, |m, x| m.union(space.monad(x)))
    };
    for a in PointSet::all(space.len()) {
        let star_a = a;
        let u = union(a);
        report.subsets_checked += 1;
        let checks = [
            (a.is_subset(u), "not covered by the monads of its points"),
            (
                u == union(star_a),
                "standard and extended monad unions differ",
            ),
            (
                u == space.monad_set(a),
                "monad union differs from the monad of the set",
            ),
        ];
        if let Some((_, msg)) = checks.iter().find(|(ok, _)| !ok) {
            return Err(TopoError::AuditFailure(format!(
                "{}: {msg}",
                space.format_set(a)
            )));
        }
        report.covered_by_monads += 1;
        report.standard_union_equals_star_union += 1;
        report.union_equals_set_monad += 1;
    }
    Ok(report)
}

/// Topology generated by the monads as a base: all unions of monads.
pub fn s_topology(space: &FinSpace) -> FinSpace {
    let mut opens: Vec<PointSet> = PointSet::all(space.len())
        .map(|s| {
            s.iter()
                .fold(PointSet::EMPTY, |m, x| m.union(space.monad(x)))
        })
        .collect();
    opens.sort();
    opens.dedup();
    FinSpace::validate(space.points().to_vec(), opens).expect("unions of monads form a topology")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremStatus {
    pub id: String,
    pub statement: String,
    /// Descriptive entries are reported but never fail the audit.
    pub asserted: bool,
    pub checked: usize,
    pub passed: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub spaces: usize,
    pub spaces_by_size: BTreeMap<usize, usize>,
    pub theorems: Vec<TheoremStatus>,
}

impl AuditReport {
    pub fn asserted_pass(&self) -> bool {
        self.theorems
            .iter()
            .filter(|t| t.asserted)
            .all(|t| t.counterexamples.is_empty())
    }

    pub fn theorem(&self, id: &str) -> Option<&TheoremStatus> {
        self.theorems.iter().find(|t| t.id == id)
    }
}

type Check = fn(&FinSpace) -> bool;

const THEOREMS: &[(&str, &str, bool, Check)] = &[
    (
        "t0-weakly-hausdorff-implies-hausdorff",
        "a T0 weakly Hausdorff space is Hausdorff",
        true,
        |s| !(s.is_t0() && s.is_weakly_hausdorff()) || s.is_t2(),
    ),
    (
        "t0-regular-implies-hausdorff",
        "a T0 regular space is Hausdorff",
        true,
        |s| !(s.is_t0() && s.is_regular()) || s.is_t2(),
    ),
    (
        "compact-hausdorff-implies-regular",
        "a compact Hausdorff space is regular",
        true,
        |s| !s.is_t2() || s.is_regular(),
    ),
    (
        "compact-regular-implies-normal",
        "a compact regular space is normal",
        true,
        |s| !s.is_regular() || s.is_normal(),
    ),
    (
        "hausdorff-implies-sober",
        "a Hausdorff space is sober",
        true,
        |s| !s.is_t2() || s.is_sober(),
    ),
    (
        "s-topology-normal-iff-normal",
        "the monad-generated topology is normal iff the space is normal",
        true,
        |s| {
            let st = s_topology(s);
            st == *s && st.is_normal() == s.is_normal()
        },
    ),
    (
        "s-topology-regular-iff-opens-clopen",
        "the monad-generated topology is regular iff every open set is closed",
        true,
        |s| {
            let st = s_topology(s);
            st.is_regular() == s.opens().iter().all(|o| s.is_closed(*o))
        },
    ),
    (
        "monad-inside-hull-class",
        "every monad lies inside its hull class, for every continuous family",
        true,
        |s| {
            hull_families(s)
                .iter()
                .all(|f| audit_of(s, f, "monad-inside-class"))
        },
    ),
    (
        "monad-equals-hull-class-when-distinguishing",
        "monads equal hull classes when the family distinguishes points and closed sets",
        true,
        |s| {
            hull_families(s)
                .iter()
                .all(|f| audit_of(s, f, "equality-when-distinguishing"))
        },
    ),
    (
        "hull-is-hausdorff",
        "every hull is Hausdorff (hence discrete)",
        true,
        |s| {
            hull_families(s).iter().all(|f| {
                audit_of(s, f, "quotient-hausdorff") && audit_of(s, f, "quotient-discrete")
            }) && stone_cech_finite(s).same_as(&hewitt_finite(s))
        },
    ),
    (
        "irreducible-iff-downward-directed",
        "a closed set is irreducible iff it is downward directed under monad inclusion",
        true,
        |s| {
            let irr = s.irreducible_closed_sets();
            s.closed_sets()
                .iter()
                .all(|a| s.is_downward_directed(*a) == irr.contains(a))
        },
    ),
    (
        "weakly-hausdorff-iff-reflection-hausdorff",
        "a space is weakly Hausdorff iff its T0-reflection is Hausdorff",
        true,
        |s| t0_reflection(s).audits_pass(),
    ),
    (
        "finite-implies-s-topology-t0",
        "forward reading: every finite space carries a T0 monad-generated topology",
        false,
        |s| s_topology(s).check(Property::T0).holds,
    ),
];

/// Families used when auditing hulls: none, the block indicators, the block
/// weights, each single indicator of a union of blocks, and all continuous
/// `{0,1}`-valued functions at once.
fn hull_families(s: &FinSpace) -> Vec<RationalFunctionFamily> {
    let mut out = vec![
        RationalFunctionFamily::empty(),
        RationalFunctionFamily::block_indicators(s),
        RationalFunctionFamily::block_weights(s),
    ];
    let indicator = |z: PointSet| -> Vec<num_rational::BigRational> {
        (0..s.len())
            .map(|x| num_rational::BigRational::from_integer((z.contains(x) as i64).into()))
            .collect()
    };
    let zero_sets = s.z_partition().zero_sets();
    for &z in &zero_sets {
        let f = BTreeMap::from([("g".to_string(), indicator(z))]);
        out.push(
            RationalFunctionFamily::new(s, f).expect("indicators of block unions are continuous"),
        );
    }
    let all: BTreeMap<String, _> = zero_sets
        .iter()
        .enumerate()
        .map(|(i, &z)| (format!("g{i}"), indicator(z)))
        .collect();
    out.push(RationalFunctionFamily::new(s, all).expect("continuous"));
    out
}

fn audit_of(s: &FinSpace, f: &RationalFunctionFamily, key: &str) -> bool {
    let h = build_hull(s, f).expect("families are validated");
    h.audits[key] && h.audits["factorization"] && h.audits["surjective"]
}

/// Run every theorem check over `spaces`.
pub fn theorem_audit(spaces: &[FinSpace]) -> AuditReport {
    let mut spaces_by_size = BTreeMap::new();
    for s in spaces {
        *spaces_by_size.entry(s.len()).or_insert(0) += 1;
    }
    let theorems = THEOREMS
        .iter()
        .map(|&(id, statement, asserted, check)| {
            let counterexamples: Vec<String> = spaces
                .iter()
                .filter(|s| !check(s))
                .map(|s| s.to_string())
                .collect();
            TheoremStatus {
                id: id.into(),
                statement: statement.into(),
                asserted,
                checked: spaces.len(),
                passed: spaces.len() - counterexamples.len(),
                counterexamples,
            }
        })
        .collect();
    AuditReport {
        spaces: spaces.len(),
        spaces_by_size,
        theorems,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compactness_on_small_spaces() {
        let r = compactness_identities(&FinSpace::sierpinski()).unwrap();
        assert_eq!(r.subsets_checked, 4);
        assert_eq!(r.union_equals_set_monad, 4);
    }

    #[test]
    fn indiscrete_pair_flags_descriptive_entry() {
        let r = theorem_audit(&[FinSpace::indiscrete(2)]);
        assert!(r.asserted_pass());
        let t = r.theorem("finite-implies-s-topology-t0").unwrap();
        assert!(!t.asserted);
        assert_eq!(t.counterexamples.len(), 1);
        assert_eq!(
            r.theorem("s-topology-regular-iff-opens-clopen")
                .unwrap()
                .passed,
            1
        );
    }
}
