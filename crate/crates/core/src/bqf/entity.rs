use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An individual or a finite set of entities. Sets compare extensionally.
///
/// Serializes as nested JSON arrays with atoms as strings:
/// `{{a},{a,b}}` is `[["a"],["a","b"]]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entity {
    Atom(String),
    Set(BTreeSet<Entity>),
}

impl Entity {
    pub fn atom(name: impl Into<String>) -> Self {
        Entity::Atom(name.into())
    }

    pub fn set(members: impl IntoIterator<Item = Entity>) -> Self {
        Entity::Set(members.into_iter().collect())
    }

    pub fn empty() -> Self {
        Entity::Set(BTreeSet::new())
    }

    /// Set of atoms with the given names.
    pub fn atoms<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        Entity::set(names.into_iter().map(Entity::atom))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Entity::Atom(_))
    }

    pub fn members(&self) -> Option<&BTreeSet<Entity>> {
        match self {
            Entity::Set(m) => Some(m),
            Entity::Atom(_) => None,
        }
    }

    /// Membership; nothing is a member of an atom.
    pub fn contains(&self, x: &Entity) -> bool {
        self.members().is_some_and(|m| m.contains(x))
    }

    /// Smallest `k` with the entity in `V_k(S)`; the empty set sits at 1.
    pub fn type_level(&self) -> usize {
        match self {
            Entity::Atom(_) => 0,
            Entity::Set(m) => 1 + m.iter().map(Entity::type_level).max().unwrap_or(0),
        }
    }

    /// Atoms occurring anywhere inside the entity.
    pub fn support(&self) -> BTreeSet<String> {
        fn walk(e: &Entity, out: &mut BTreeSet<String>) {
            match e {
                Entity::Atom(a) => {
                    out.insert(a.clone());
                }
                Entity::Set(m) => m.iter().for_each(|x| walk(x, out)),
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    pub fn union(&self, o: &Entity) -> Option<Entity> {
        Some(Entity::Set(
            self.members()?.union(o.members()?).cloned().collect(),
        ))
    }

    pub fn intersection(&self, o: &Entity) -> Option<Entity> {
        Some(Entity::Set(
            self.members()?
                .intersection(o.members()?)
                .cloned()
                .collect(),
        ))
    }

    pub fn difference(&self, o: &Entity) -> Option<Entity> {
        Some(Entity::Set(
            self.members()?.difference(o.members()?).cloned().collect(),
        ))
    }

    pub fn is_subset(&self, o: &Entity) -> Option<bool> {
        Some(self.members()?.is_subset(o.members()?))
    }

    /// Set of Kuratowski pairs.
    pub fn product(&self, o: &Entity) -> Option<Entity> {
        let (a, b) = (self.members()?, o.members()?);
        Some(Entity::set(a.iter().flat_map(|x| {
            b.iter().map(move |y| make_pair(x.clone(), y.clone()))
        })))
    }

    /// All subsets; `None` for atoms or sets with more than 20 members.
    pub fn power_set(&self) -> Option<Entity> {
        let m: Vec<&Entity> = self.members()?.iter().collect();
        if m.len() > 20 {
            return None;
        }
        Some(Entity::set((0u32..1 << m.len()).map(|mask| {
            Entity::set(
                m.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| (*e).clone()),
            )
        })))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("entities always serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Entity, serde_json::Error> {
        serde_json::from_value(v.clone())
    }
}

impl fmt::Display for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entity::Atom(a) => f.write_str(a),
            Entity::Set(m) => {
                f.write_str("{")?;
                for (i, x) in m.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// `<a,b> = {{a},{a,b}}`.
pub fn make_pair(a: Entity, b: Entity) -> Entity {
    Entity::set([Entity::set([a.clone()]), Entity::set([a, b])])
}

/// Inverse of [`make_pair`].
pub fn unpair(p: &Entity) -> Option<(Entity, Entity)> {
    let m = p.members()?;
    match m.len() {
        1 => {
            let only = m.iter().next()?.members()?;
            (only.len() == 1).then(|| {
                let a = only.iter().next().unwrap().clone();
                (a.clone(), a)
            })
        }
        2 => {
            let mut it = m.iter();
            let (s, t) = (it.next()?.members()?, it.next()?.members()?);
            let (single, double) = if s.len() == 1 { (s, t) } else { (t, s) };
            if single.len() != 1 || double.len() != 2 {
                return None;
            }
            let a = single.iter().next().unwrap();
            if !double.contains(a) {
                return None;
            }
            let b = double.iter().find(|x| *x != a).unwrap();
            Some((a.clone(), b.clone()))
        }
        _ => None,
    }
}

/// `V_k(S)` as an explicit list: `V_0 = S`, `V_{k+1} = V_k ∪ P(V_k)`.
/// `None` once a level would exceed `limit` entities.
pub fn superstructure_level(atoms: &[&str], k: usize, limit: usize) -> Option<Vec<Entity>> {
    let mut level: BTreeSet<Entity> = atoms.iter().map(|a| Entity::atom(*a)).collect();
    for _ in 0..k {
        let n = level.len();
        if n >= 64 || (1usize << n) + n > limit {
            return None;
        }
        let power = Entity::Set(level.clone()).power_set()?;
        level.extend(power.members().unwrap().iter().cloned());
    }
    (level.len() <= limit).then(|| level.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Entity {
        Entity::atom(s)
    }

    #[test]
    fn kuratowski_encoding() {
        let p = make_pair(a("a"), a("b"));
        assert_eq!(p.to_string(), "{{a},{a,b}}");
        assert_eq!(unpair(&p), Some((a("a"), a("b"))));
        let d = make_pair(a("a"), a("a"));
        assert_eq!(d.to_string(), "{{a}}");
        assert_eq!(unpair(&d), Some((a("a"), a("a"))));
        assert_eq!(unpair(&Entity::atoms(["a", "b"])), None);
    }

    #[test]
    fn levels_and_extensionality() {
        assert_eq!(a("a").type_level(), 0);
        assert_eq!(Entity::empty().type_level(), 1);
        assert_eq!(make_pair(a("a"), a("b")).type_level(), 2);
        assert_eq!(
            Entity::set([a("b"), a("a"), a("b")]),
            Entity::atoms(["a", "b"])
        );
        assert!(!a("a").contains(&a("a")));
    }

    #[test]
    fn superstructure_sizes() {
        assert_eq!(superstructure_level(&["a", "b"], 1, 1000).unwrap().len(), 6);
        // 6 + 64 minus the four subsets of S already present in V_1
        assert_eq!(
            superstructure_level(&["a", "b"], 2, 1000).unwrap().len(),
            66
        );
        assert!(superstructure_level(&["a", "b"], 3, 100_000).is_none());
    }

    #[test]
    fn json_round_trip() {
        let e = Entity::set([make_pair(a("a"), a("b")), a("c"), Entity::empty()]);
        let j = e.to_json();
        assert_eq!(Entity::from_json(&j).unwrap(), e);
        assert_eq!(
            serde_json::to_string(&make_pair(a("a"), a("b"))).unwrap(),
            r#"[["a"],["a","b"]]"#
        );
    }
}
