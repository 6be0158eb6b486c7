use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonstd::bqf::{
    atom_bindings, check_transfer_finite, define_set, eval, is_function_graph, make_pair, parse,
    parse_entity, star, superstructure_level, unpair, Bindings, Entity,
};
use nonstd::sample;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formulas_round_trip_through_display(seed in any::<u64>()) {
        let f = sample::formula(&mut rng(seed), 4);
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn entities_round_trip_through_json_and_text(seed in any::<u64>()) {
        let e = sample::entity(&mut rng(seed));
        prop_assert_eq!(Entity::from_json(&e.to_json()).unwrap(), e.clone());
        prop_assert_eq!(parse_entity(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn sets_are_extensional(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (sample::atom_set(&mut r), sample::atom_set(&mut r));
        let mut env = atom_bindings(sample::ATOMS);
        env.insert("A".into(), a.clone());
        env.insert("B".into(), b.clone());
        let same = eval(&parse("(forall x in A) x in B and (forall x in B) x in A").unwrap(), &env).unwrap();
        prop_assert_eq!(same, a == b);
    }

    #[test]
    fn comprehension_stays_inside_its_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let env = sample::bindings(&mut r);
        let body = parse("(exists y in B) <w, y> in C or w in A").unwrap();
        let bound = env["A"].union(&env["B"]).unwrap();
        let s = define_set(&bound, &body, &env).unwrap();
        let inside = s.members().unwrap().iter().all(|m| bound.contains(m));
        prop_assert!(inside);
    }

    #[test]
    fn star_fixes_atoms_and_their_pairs(i in 0usize..4, j in 0usize..4) {
        let (a, b) = (Entity::atom(sample::ATOMS[i]), Entity::atom(sample::ATOMS[j]));
        let p = make_pair(a.clone(), b.clone());
        prop_assert_eq!(star(&p), p.clone());
        prop_assert_eq!(unpair(&p), Some((a, b)));
    }

    #[test]
    fn transfer_holds_for_random_sentences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = sample::formula(&mut r, 3);
        let env = sample::bindings(&mut r);
        prop_assert!(check_transfer_finite(&f, &env).unwrap().holds());
    }
}

#[test]
fn pairs_are_equal_only_componentwise() {
    let atoms: Vec<Entity> = sample::ATOMS.iter().map(|a| Entity::atom(*a)).collect();
    for a in &atoms {
        for b in &atoms {
            for c in &atoms {
                for d in &atoms {
                    let same = make_pair(a.clone(), b.clone()) == make_pair(c.clone(), d.clone());
                    assert_eq!(same, a == c && b == d);
                }
            }
        }
    }
}

#[test]
fn function_graphs() {
    let dom = Entity::atoms(["a", "b"]);
    let cod = Entity::atoms(["c", "d"]);
    let pair = |x: &str, y: &str| make_pair(Entity::atom(x), Entity::atom(y));
    assert!(is_function_graph(
        &Entity::set([pair("a", "c"), pair("b", "c")]),
        &dom,
        &cod
    ));
    assert!(!is_function_graph(
        &Entity::set([pair("a", "c")]),
        &dom,
        &cod
    ));
    assert!(!is_function_graph(
        &Entity::set([pair("a", "c"), pair("a", "d"), pair("b", "c")]),
        &dom,
        &cod
    ));
}

#[test]
fn superstructure_levels_grow_by_powersets() {
    let sizes: Vec<usize> = (0..3)
        .map(|k| superstructure_level(&["a"], k, 1 << 10).unwrap().len())
        .collect();
    assert_eq!(sizes, vec![1, 3, 9]);
    assert!(superstructure_level(&["a", "b"], 3, 100).is_none());
}

#[test]
fn worked_examples() {
    let mut env: Bindings = atom_bindings(["a", "b", "c"]);
    env.insert("S".into(), Entity::atoms(["a", "b"]));
    assert!(eval(
        &parse("(forall x in S)(exists y in S) x = y").unwrap(),
        &env
    )
    .unwrap());
    assert!(!eval(&parse("c in S").unwrap(), &env).unwrap());
    let s = define_set(&env["S"].clone(), &parse("not x = a").unwrap(), &env).unwrap();
    assert_eq!(s, Entity::atoms(["b"]));
}
