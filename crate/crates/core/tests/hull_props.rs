use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use nonstd::fintop::{enumerate_topologies, FinSpace, PointSet};
use nonstd::hull::{
    build_hull, hewitt_finite, ring_correspondence, stone_cech_finite, t0_reflection,
    zero_set_formulas, HullError, RationalFunctionFamily,
};

fn spaces() -> &'static [FinSpace] {
    static CACHE: OnceLock<Vec<FinSpace>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..=4)
            .flat_map(|n| enumerate_topologies(n).unwrap())
            .collect()
    })
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A family whose members are constant on each zero-set block.
fn block_family(x: &FinSpace, values: &[Vec<i64>]) -> RationalFunctionFamily {
    let z = x.z_partition();
    let functions = values
        .iter()
        .enumerate()
        .map(|(k, vals)| {
            let per_point = (0..x.len())
                .map(|p| int(vals[z.blocks.iter().position(|b| b.contains(p)).unwrap()]))
                .collect();
            (format!("f{k}"), per_point)
        })
        .collect();
    RationalFunctionFamily::new(x, functions).unwrap()
}

fn space_with_values() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (
        0..spaces().len(),
        prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hull_of_a_continuous_family((i, values) in space_with_values()) {
        let x = &spaces()[i];
        let fam = block_family(x, &values);
        let h = build_hull(x, &fam).unwrap();
        prop_assert!(h.audits_pass(), "{:?}", h.audits);
        prop_assert!(h.quotient.is_t2());
        for p in 0..x.len() {
            prop_assert!(x.monad(p).is_subset(h.classes[h.q[p]]));
            for (name, vals) in fam.functions() {
                prop_assert_eq!(&h.lifted[name][h.q[p]], &vals[p]);
            }
        }
        let z = x.z_partition();
        for c in &h.classes {
            prop_assert!(z.blocks.iter().all(|b| b.is_subset(*c) || b.is_disjoint(*c)));
        }
    }

    #[test]
    fn point_values_are_accepted_iff_constant_on_monads(i in 0..spaces().len(), vals in prop::collection::vec(0i64..=1, 4)) {
        let x = &spaces()[i];
        let f: Vec<BigRational> = vals[..x.len()].iter().map(|v| int(*v)).collect();
        let continuous = (0..x.len()).all(|p| x.monad(p).iter().all(|q| f[q] == f[p]));
        let res = RationalFunctionFamily::new(x, BTreeMap::from([("f".to_string(), f)]));
        match res {
            Ok(_) => prop_assert!(continuous),
            Err(e) => {
                prop_assert!(!continuous);
                prop_assert!(matches!(e, HullError::DiscontinuousFamilyMember { .. }), "{}", e);
            }
        }
    }

    #[test]
    fn t0_reflection_is_idempotent(i in 0..spaces().len()) {
        let x = &spaces()[i];
        let r = t0_reflection(x);
        prop_assert!(r.audits_pass(), "{:?}", r.audits);
        prop_assert!(r.quotient.is_t0());
        prop_assert_eq!(t0_reflection(&r.quotient).quotient.len(), r.quotient.len());
        prop_assert_eq!(r.quotient.is_t2(), x.is_weakly_hausdorff());
    }

    #[test]
    fn stone_cech_and_hewitt_coincide(i in 0..spaces().len()) {
        let x = &spaces()[i];
        let sc = stone_cech_finite(x);
        let hw = hewitt_finite(x);
        prop_assert!(sc.audits_pass() && hw.audits_pass());
        prop_assert!(sc.same_as(&hw));
        prop_assert_eq!(sc.classes.clone(), x.z_partition().blocks);
    }
}

#[test]
fn zero_sets_and_rings_over_every_small_space() {
    for x in spaces().iter().filter(|x| x.len() <= 3) {
        let z = zero_set_formulas(x).unwrap();
        assert_eq!(z.hull_points, x.z_partition().blocks.len());
        let r = ring_correspondence(x).unwrap();
        assert_eq!(r.continuous_on_space, r.functions_on_hull);
        assert_eq!(r.functions_on_hull, 3usize.pow(r.hull_points as u32));
    }
}

#[test]
fn worked_examples() {
    let d = FinSpace::discrete(3);
    let f = RationalFunctionFamily::new(
        &d,
        BTreeMap::from([("f".into(), vec![int(0), int(0), int(1)])]),
    )
    .unwrap();
    let h = build_hull(&d, &f).unwrap();
    assert_eq!(
        h.classes,
        vec![PointSet::from_points([0, 1]), PointSet::singleton(2)]
    );
    assert!(!h.facts["distinguishes-points-and-closed-sets"]);

    let s = FinSpace::sierpinski();
    let err = RationalFunctionFamily::new(&s, BTreeMap::from([("g".into(), vec![int(0), int(1)])]))
        .unwrap_err();
    assert!(err.to_string().contains("{a,b}"), "{err}");
    assert_eq!(stone_cech_finite(&s).classes.len(), 1);
    assert_eq!(t0_reflection(&FinSpace::indiscrete(3)).quotient.len(), 1);
}
