use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nonstd::germs::{los_check_qf, los_pointwise, parse_germ, parse_qf, Relation};
use nonstd::{sample, AeVerdict, Germ, GermError};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn periodic<R: Rng>(r: &mut R) -> Germ {
    let (pre_len, per_len) = (r.gen_range(0..3), r.gen_range(1..4));
    let mut vals = |len: usize| -> Vec<BigRational> {
        (0..len)
            .map(|_| BigRational::from_integer(BigInt::from(r.gen_range(-1..=1))))
            .collect()
    };
    let pre = vals(pre_len);
    let per = vals(per_len);
    Germ::eventually_periodic(pre, per).unwrap()
}

fn rf<R: Rng>(r: &mut R) -> Germ {
    Germ::RationalFunctionOfN(sample::rational_germ(r))
}

fn assignment(pairs: &[(&str, &Germ)]) -> BTreeMap<String, Germ> {
    pairs
        .iter()
        .map(|(k, g)| (k.to_string(), (*g).clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ae_equality_is_an_equivalence_on_periodic_germs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g, h) = (periodic(&mut r), periodic(&mut r), periodic(&mut r));
        prop_assert_eq!(f.ae_equal(&f).unwrap(), AeVerdict::TrueAe);
        prop_assert_eq!(f.ae_equal(&g).unwrap(), g.ae_equal(&f).unwrap());
        if f.ae_equal(&g).unwrap() == AeVerdict::TrueAe && g.ae_equal(&h).unwrap() == AeVerdict::TrueAe {
            prop_assert_eq!(f.ae_equal(&h).unwrap(), AeVerdict::TrueAe);
        }
    }

    #[test]
    fn rational_germs_are_totally_ordered(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (rf(&mut r), rf(&mut r));
        let lt = f.ae_less(&g).unwrap();
        let eq = f.ae_equal(&g).unwrap();
        let gt = g.ae_less(&f).unwrap();
        let trues = [lt, eq, gt].iter().filter(|v| **v == AeVerdict::TrueAe).count();
        prop_assert_eq!(trues, 1);
        prop_assert!([lt, eq, gt].iter().all(|v| *v != AeVerdict::UltrafilterDependent));
    }

    #[test]
    fn los_atoms_match_direct_comparison(seed in any::<u64>(), rf_class in any::<bool>()) {
        let mut r = rng(seed);
        let (f, g) = if rf_class { (rf(&mut r), rf(&mut r)) } else { (periodic(&mut r), periodic(&mut r)) };
        let a = assignment(&[("f", &f), ("g", &g)]);
        for (src, rel) in [("f = g", Relation::Eq), ("f < g", Relation::Lt), ("f >= g", Relation::Ge)] {
            let phi = parse_qf(src).unwrap();
            prop_assert_eq!(los_check_qf(&phi, &a).unwrap(), f.ae_compare(&g, rel).unwrap());
        }
    }

    #[test]
    fn negation_flips_definite_verdicts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (periodic(&mut r), periodic(&mut r));
        let a = assignment(&[("f", &f), ("g", &g)]);
        let phi = parse_qf("f < g or f = 1").unwrap();
        let not_phi = parse_qf("not (f < g or f = 1)").unwrap();
        prop_assert_eq!(los_check_qf(&not_phi, &a).unwrap(), los_check_qf(&phi, &a).unwrap().negate());
    }

    #[test]
    fn pointwise_window_agrees_with_residue_analysis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (periodic(&mut r), periodic(&mut r));
        let a = assignment(&[("f", &f), ("g", &g)]);
        let phi = parse_qf("f*g <= f + g and not f = g").unwrap();
        let pw = los_pointwise(&phi, &a).unwrap();
        prop_assert_eq!(pw.verdict, los_check_qf(&phi, &a).unwrap());
    }

    #[test]
    fn embedding_into_hyperreals_is_injective_on_rational_germs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (rf(&mut r), rf(&mut r));
        let same = f.ae_equal(&g).unwrap() == AeVerdict::TrueAe;
        prop_assert_eq!(same, f.to_hyperreal().unwrap() == g.to_hyperreal().unwrap());
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        for g in [rf(&mut r), periodic(&mut r)] {
            prop_assert_eq!(parse_germ(&g.to_string()).unwrap(), g);
        }
    }
}

#[test]
fn worked_examples() {
    let small = parse_germ("rf(1/n)").unwrap();
    let zero = parse_germ("ep([];[0])").unwrap();
    assert_eq!(small.ae_less(&zero).unwrap(), AeVerdict::FalseAe);
    assert_eq!(zero.ae_less(&small).unwrap(), AeVerdict::TrueAe);
    let alternating = parse_germ("ep([];[0,1])").unwrap();
    assert_eq!(
        alternating.ae_equal(&zero).unwrap(),
        AeVerdict::UltrafilterDependent
    );
    assert_eq!(small.ae_equal(&alternating), Err(GermError::MixedClasses));
    assert_eq!(
        parse_germ("ep([5,7];[2])").unwrap().ae_constant(),
        Some(BigRational::from_integer(2.into()))
    );
}
