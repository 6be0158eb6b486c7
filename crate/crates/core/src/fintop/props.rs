use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FinSpace, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    T0,
    T1,
    T2,
    WeaklyHausdorff,
    Regular,
    Normal,
    FunctionallySeparated,
    CompletelyRegular,
    ZNormal,
    Sober,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::T0,
        Property::T1,
        Property::T2,
        Property::WeaklyHausdorff,
        Property::Regular,
        Property::Normal,
        Property::FunctionallySeparated,
        Property::CompletelyRegular,
        Property::ZNormal,
        Property::Sober,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::T0 => "t0",
            Property::T1 => "t1",
            Property::T2 => "t2",
            Property::WeaklyHausdorff => "weakly-hausdorff",
            Property::Regular => "regular",
            Property::Normal => "normal",
            Property::FunctionallySeparated => "functionally-separated",
            Property::CompletelyRegular => "completely-regular",
            Property::ZNormal => "z-normal",
            Property::Sober => "sober",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let alias = match key.as_str() {
            "hausdorff" => "t2",
            "wh" => "weakly-hausdorff",
            other => other,
        };
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == alias)
            .ok_or_else(|| format!("unknown property '{s}'"))
    }
}

/// Counterexample to the monad characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub points: Vec<String>,
    pub sets: Vec<Vec<String>>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: Property,
    /// Verdict of the monad characterization.
    pub holds: bool,
    /// Verdict of the open-set definition.
    pub oracle: bool,
    /// Further monad forms of the same property, or identities that must hold.
    pub forms: BTreeMap<String, bool>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Connected components of the relation `y ∈ μ(x)`. Zero sets of a finite
/// space are exactly the unions of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPartition {
    pub blocks: Vec<PointSet>,
}

impl ZPartition {
    pub fn block_of(&self, x: usize) -> PointSet {
        *self
            .blocks
            .iter()
            .find(|b| b.contains(x))
            .expect("partition covers space")
    }

    /// Union of the blocks meeting `a`.
    pub fn monad(&self, a: PointSet) -> PointSet {
        self.blocks
            .iter()
            .filter(|b| !b.is_disjoint(a))
            .fold(PointSet::EMPTY, |m, b| m.union(*b))
    }

    pub fn zero_sets(&self) -> Vec<PointSet> {
        let k = self.blocks.len();
        (0u32..1 << k)
            .map(|mask| {
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(PointSet::EMPTY, |m, i| m.union(self.blocks[i]))
            })
            .collect()
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
}

impl FinSpace {
    fn witness(&self, points: &[usize], sets: &[PointSet], reason: impl Into<String>) -> Witness {
        Witness {
            points: points.iter().map(|&x| self.points()[x].clone()).collect(),
            sets: sets.iter().map(|s| self.labels(*s)).collect(),
            reason: reason.into(),
        }
    }

    fn separated(&self, a: PointSet, b: PointSet) -> bool {
        let opens = self.opens();
        opens
            .iter()
            .filter(|u| a.is_subset(**u))
            .any(|u| opens.iter().any(|v| b.is_subset(*v) && u.is_disjoint(*v)))
    }

    fn clopens(&self) -> Vec<PointSet> {
        self.opens()
            .iter()
            .copied()
            .filter(|o| self.is_closed(*o))
            .collect()
    }

    pub fn z_partition(&self) -> ZPartition {
        let n = self.len();
        let mut blocks: Vec<PointSet> = Vec::new();
        let mut seen = PointSet::EMPTY;
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut block = PointSet::singleton(start);
            loop {
                let grown = (0..n)
                    .filter(|&x| {
                        block.contains(x)
                            || !self.monad(x).is_disjoint(block)
                            || block.iter().any(|y| self.monad(y).contains(x))
                    })
                    .fold(block, |b, x| b.with(x));
                if grown == block {
                    break;
                }
                block = grown;
            }
            seen = seen.union(block);
            blocks.push(block);
        }
        ZPartition { blocks }
    }

    pub fn check(&self, p: Property) -> PropertyVerdict {
        match p {
            Property::T0 => self.check_t0(),
            Property::T1 => self.check_t1(),
            Property::T2 => self.check_t2(),
            Property::WeaklyHausdorff => self.check_weakly_hausdorff(),
            Property::Regular => self.check_regular(),
            Property::Normal => self.check_normal(),
            Property::FunctionallySeparated => self.check_functionally_separated(),
            Property::CompletelyRegular => self.check_completely_regular(),
            Property::ZNormal => self.check_z_normal(),
            Property::Sober => self.check_sober(),
        }
    }

    pub fn check_all(&self) -> Vec<PropertyVerdict> {
        Property::ALL.iter().map(|p| self.check(*p)).collect()
    }

    pub fn is_t0(&self) -> bool {
        self.check_t0().holds
    }
    pub fn is_t1(&self) -> bool {
        self.check_t1().holds
    }
    pub fn is_t2(&self) -> bool {
        self.check_t2().holds
    }
    pub fn is_weakly_hausdorff(&self) -> bool {
        self.check_weakly_hausdorff().holds
    }
    pub fn is_regular(&self) -> bool {
        self.check_regular().holds
    }
    pub fn is_normal(&self) -> bool {
        self.check_normal().holds
    }
    pub fn is_sober(&self) -> bool {
        self.check_sober().holds
    }

    fn verdict(
        &self,
        property: Property,
        holds: bool,
        oracle: bool,
        forms: BTreeMap<String, bool>,
        witness: Option<Witness>,
    ) -> PropertyVerdict {
        let agree = holds == oracle && forms.values().all(|&f| f == holds);
        PropertyVerdict {
            property,
            holds,
            oracle,
            forms,
            agree,
            witness,
        }
    }

    fn check_t0(&self) -> PropertyVerdict {
        let n = self.len();
        let bad = pairs(n).find(|&(x, y)| self.monad(x) == self.monad(y));
        let membership =
            pairs(n).all(|(x, y)| !self.monad(y).contains(x) || !self.monad(x).contains(y));
        let oracle =
            pairs(n).all(|(x, y)| self.opens().iter().any(|g| g.contains(x) != g.contains(y)));
        let witness = bad.map(|(x, y)| {
            self.witness(
                &[x, y],
                &[self.monad(x)],
                "distinct points with equal monads",
            )
        });
        let forms = BTreeMap::from([("mutual-membership".to_string(), membership)]);
        self.verdict(Property::T0, bad.is_none(), oracle, forms, witness)
    }

    fn check_t1(&self) -> PropertyVerdict {
        let n = self.len();
        let bad = pairs(n).find(|&(x, y)| self.monad(x).is_subset(self.monad(y)));
        let membership =
            pairs(n).all(|(x, y)| !self.monad(y).contains(x) && !self.monad(x).contains(y));
        let oracle = (0..n).all(|x| self.is_closed(PointSet::singleton(x)));
        let witness = bad.map(|(x, y)| {
            self.witness(
                &[x, y],
                &[self.monad(x), self.monad(y)],
                "monad of the first point lies inside the monad of the second",
            )
        });
        let forms = BTreeMap::from([("mutual-membership".to_string(), membership)]);
        self.verdict(Property::T1, bad.is_none(), oracle, forms, witness)
    }

    fn check_t2(&self) -> PropertyVerdict {
        let n = self.len();
        let bad = pairs(n).find(|&(x, y)| !self.monad(x).is_disjoint(self.monad(y)));
        let oracle =
            pairs(n).all(|(x, y)| self.separated(PointSet::singleton(x), PointSet::singleton(y)));
        let witness = bad.map(|(x, y)| {
            self.witness(
                &[x, y],
                &[self.monad(x).intersection(self.monad(y))],
                "monads of distinct points meet",
            )
        });
        self.verdict(
            Property::T2,
            bad.is_none(),
            oracle,
            BTreeMap::new(),
            witness,
        )
    }

    fn check_weakly_hausdorff(&self) -> PropertyVerdict {
        let n = self.len();
        let bad = pairs(n).find(|&(x, y)| {
            let (a, b) = (self.monad(x), self.monad(y));
            a != b && !a.is_disjoint(b)
        });
        let oracle = (0..n).all(|x| {
            self.opens().iter().filter(|g| g.contains(x)).all(|g| {
                g.complement(n)
                    .iter()
                    .all(|y| self.separated(PointSet::singleton(x), PointSet::singleton(y)))
            })
        });
        let witness = bad.map(|(x, y)| {
            self.witness(
                &[x, y],
                &[self.monad(x), self.monad(y)],
                "monads differ but meet",
            )
        });
        self.verdict(
            Property::WeaklyHausdorff,
            bad.is_none(),
            oracle,
            BTreeMap::new(),
            witness,
        )
    }

    fn check_regular(&self) -> PropertyVerdict {
        let n = self.len();
        let closed = self.closed_sets();
        let bad = (0..n)
            .flat_map(|x| closed.iter().map(move |f| (x, *f)))
            .find(|&(x, f)| !f.contains(x) && !self.monad(x).is_disjoint(self.monad_set(f)));
        let pointwise = pairs(n)
            .all(|(x, a)| self.monad(x).contains(a) || self.monad(a).is_disjoint(self.monad(x)));
        let oracle = (0..n).all(|x| {
            closed
                .iter()
                .filter(|f| !f.contains(x))
                .all(|f| self.separated(PointSet::singleton(x), *f))
        });
        let witness = bad.map(|(x, f)| {
            self.witness(
                &[x],
                &[f],
                "point outside a closed set whose monad meets the point's monad",
            )
        });
        let forms = BTreeMap::from([("pointwise-monads".to_string(), pointwise)]);
        self.verdict(Property::Regular, bad.is_none(), oracle, forms, witness)
    }

    fn disjoint_closed_pairs(&self) -> Vec<(PointSet, PointSet)> {
        let closed = self.closed_sets();
        let mut out = Vec::new();
        for (i, &a) in closed.iter().enumerate() {
            for &b in &closed[i..] {
                if a.is_disjoint(b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_normal(&self) -> PropertyVerdict {
        let pairs = self.disjoint_closed_pairs();
        let bad = pairs
            .iter()
            .find(|(a, b)| !self.monad_set(*a).is_disjoint(self.monad_set(*b)));
        let oracle = pairs.iter().all(|(a, b)| self.separated(*a, *b));
        let witness = bad
            .map(|(a, b)| self.witness(&[], &[*a, *b], "disjoint closed sets with meeting monads"));
        self.verdict(
            Property::Normal,
            bad.is_none(),
            oracle,
            BTreeMap::new(),
            witness,
        )
    }

    fn check_functionally_separated(&self) -> PropertyVerdict {
        let z = self.z_partition();
        let clopens = self.clopens();
        let bad = pairs(self.len()).find(|&(x, y)| z.block_of(x) == z.block_of(y));
        let oracle =
            pairs(self.len()).all(|(x, y)| clopens.iter().any(|c| c.contains(x) && !c.contains(y)));
        let witness = bad.map(|(x, y)| {
            self.witness(
                &[x, y],
                &[z.block_of(x)],
                "distinct points share a zero-set block",
            )
        });
        self.verdict(
            Property::FunctionallySeparated,
            bad.is_none(),
            oracle,
            BTreeMap::new(),
            witness,
        )
    }

    fn check_completely_regular(&self) -> PropertyVerdict {
        let z = self.z_partition();
        let clopens = self.clopens();
        let closed = self.closed_sets();
        let n = self.len();
        let bad = (0..n)
            .flat_map(|x| closed.iter().map(move |f| (x, *f)))
            .find(|&(x, f)| !f.contains(x) && !z.block_of(x).is_disjoint(z.monad(f)));
        let oracle = (0..n).all(|x| {
            closed
                .iter()
                .filter(|f| !f.contains(x))
                .all(|f| clopens.iter().any(|c| c.contains(x) && c.is_disjoint(*f)))
        });
        let witness = bad
            .map(|(x, f)| self.witness(&[x], &[f], "point and closed set share a zero-set block"));
        self.verdict(
            Property::CompletelyRegular,
            bad.is_none(),
            oracle,
            BTreeMap::new(),
            witness,
        )
    }

    fn check_z_normal(&self) -> PropertyVerdict {
        let z = self.z_partition();
        let pairs = self.disjoint_closed_pairs();
        let bad = pairs
            .iter()
            .find(|(a, b)| !z.monad(*a).is_disjoint(z.monad(*b)));
        let oracle = pairs.iter().all(|(a, b)| self.separated(*a, *b));
        let witness = bad.map(|(a, b)| {
            self.witness(
                &[],
                &[*a, *b],
                "disjoint closed sets share a zero-set block",
            )
        });
        self.verdict(
            Property::ZNormal,
            bad.is_none(),
            oracle,
            BTreeMap::new(),
            witness,
        )
    }

    /// Nonempty closed sets that are not the union of two proper closed subsets.
    pub fn irreducible_closed_sets(&self) -> Vec<PointSet> {
        let closed = self.closed_sets();
        closed
            .iter()
            .copied()
            .filter(|a| !a.is_empty())
            .filter(|&a| {
                let inside: Vec<PointSet> = closed
                    .iter()
                    .copied()
                    .filter(|f| f.is_subset(a) && *f != a)
                    .collect();
                !inside
                    .iter()
                    .any(|f1| inside.iter().any(|f2| f1.union(*f2) == a))
            })
            .collect()
    }

    /// Nonempty, and any two members have a common lower bound in the set
    /// under `x ≤ y` iff `μ(x) ⊆ μ(y)`.
    pub fn is_downward_directed(&self, s: PointSet) -> bool {
        !s.is_empty()
            && s.iter().all(|a| {
                s.iter()
                    .all(|b| s.iter().any(|c| self.leq(c, a) && self.leq(c, b)))
            })
    }

    fn check_sober(&self) -> PropertyVerdict {
        let closed = self.closed_sets();
        let irreducible = self.irreducible_closed_sets();
        let smallest = |a: PointSet| a.iter().find(|&x| a.iter().all(|y| self.leq(x, y)));
        let bad = closed
            .iter()
            .copied()
            .find(|&a| self.is_downward_directed(a) && smallest(a).is_none());
        let oracle = irreducible
            .iter()
            .all(|&a| (0..self.len()).any(|x| self.closure(PointSet::singleton(x)) == a));
        let meet = |a: PointSet| {
            a.iter()
                .fold(self.full(), |m, y| m.intersection(self.monad(y)))
        };
        let generic = |pred: &dyn Fn(usize, PointSet) -> bool| {
            irreducible.iter().all(|&a| a.iter().any(|x| pred(x, a)))
        };
        let forms = BTreeMap::from([
            (
                "generic-point-closure".to_string(),
                generic(&|x, a| self.closure_robinson(PointSet::singleton(x)) == a),
            ),
            (
                "generic-point-monad-meet".to_string(),
                generic(&|x, a| self.monad(x) == meet(a)),
            ),
        ]);
        let directed_iff_irreducible = closed
            .iter()
            .all(|&a| self.is_downward_directed(a) == irreducible.contains(&a));
        let witness = bad.map(|a| {
            self.witness(
                &[],
                &[a],
                "downward-directed closed set without a smallest element",
            )
        });
        let mut v = self.verdict(Property::Sober, bad.is_none(), oracle, forms, witness);
        v.forms
            .insert("irreducible-iff-directed".into(), directed_iff_irreducible);
        v.agree &= directed_iff_irreducible;
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_point() -> FinSpace {
        FinSpace::from_labels(
            &["0", "1", "2"],
            &[&[], &["0"], &["0", "1"], &["0", "2"], &["0", "1", "2"]],
        )
        .unwrap()
    }

    #[test]
    fn sierpinski_verdicts() {
        let s = FinSpace::sierpinski();
        let r = s.check(Property::Regular);
        assert!(!r.holds && r.agree);
        let w = r.witness.unwrap();
        assert_eq!(w.points, ["a"]);
        assert_eq!(w.sets, [vec!["b".to_string()]]);
        assert!(s.is_normal() && s.is_sober() && s.is_t0() && !s.is_t1());
        assert!(s.check_all().iter().all(|v| v.agree));
    }

    #[test]
    fn indiscrete_pair() {
        let s = FinSpace::indiscrete(2);
        assert!(!s.is_t0() && s.is_weakly_hausdorff() && !s.is_t2());
        assert!(s.is_regular() && s.is_sober());
    }

    #[test]
    fn discrete_space_has_everything() {
        let s = FinSpace::discrete(3);
        for v in s.check_all() {
            assert!(v.holds && v.agree, "{}", v.property);
        }
    }

    #[test]
    fn three_point_space() {
        let s = three_point();
        assert!(s.is_t0() && !s.is_t1() && !s.is_weakly_hausdorff());
        assert_eq!(s.z_partition().blocks.len(), 1);
        assert_eq!(
            s.irreducible_closed_sets(),
            vec![
                PointSet::from_points([1]),
                PointSet::from_points([2]),
                s.full()
            ]
        );
        assert!(s.is_downward_directed(s.full()));
        assert!(!s.is_downward_directed(PointSet::from_points([1, 2])));
        assert!(!s.is_downward_directed(PointSet::EMPTY));
        assert!(s.check_all().iter().all(|v| v.agree));
    }

    #[test]
    fn property_names() {
        for p in Property::ALL {
            assert_eq!(p.as_str().parse::<Property>().unwrap(), p);
            assert_eq!(serde_json::to_string(&p).unwrap(), format!("\"{p}\""));
        }
        assert_eq!("hausdorff".parse::<Property>().unwrap(), Property::T2);
    }
}
