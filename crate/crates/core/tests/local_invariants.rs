use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hscheck::localorders::{
    build_quotient, exp_witness, LocalCase, LocalContext, OrderSpec, QuotientAlgebra, SBarElement,
};

fn cases() -> impl Strategy<Value = (u64, u32, u32, LocalCase)> {
    prop_oneof![
        (prop::sample::select(vec![5u64, 7, 11]), 2u32..7, 1u32..3).prop_map(|(p, e, f)| (
            p,
            e,
            f,
            LocalCase::LargeDegree
        )),
        (prop::sample::select(vec![5u64, 7]), 4u32..8, 1u32..3).prop_map(|(p, e, f)| (
            p,
            e,
            f,
            LocalCase::DeepRamification
        )),
        (1u32..3).prop_map(|f| (7, 3, f, LocalCase::SeptimicCubic)),
    ]
}

fn names(case: LocalCase) -> &'static [&'static str] {
    match case {
        LocalCase::LargeDegree => &["x"],
        _ => &["x1", "x2"],
    }
}

fn quotient(p: u64, e: u32, f: u32, case: LocalCase, u: &[i64]) -> (QuotientAlgebra, Vec<SBarElement>) {
    let order = OrderSpec::for_case(LocalContext::new(p, e, f).unwrap(), case).unwrap();
    let q = build_quotient(&order, case.quotient_order(), u).unwrap();
    let gens = names(case)
        .iter()
        .map(|n| q.reduce(order.generator(n).unwrap()).unwrap())
        .collect();
    (q, gens)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(48) })]

    #[test]
    fn witnesses_do_not_depend_on_the_unit((p, e, f, case) in cases(), u0 in 1i64..97, u1 in 0i64..97) {
        prop_assume!(u0 % p as i64 != 0);
        let outcome = |u: &[i64]| {
            let (q, gens) = quotient(p, e, f, case, u);
            gens.iter().map(|g| exp_witness(&q, g).unwrap().passed()).collect::<Vec<_>>()
        };
        let base = outcome(&[1]);
        prop_assert!(base.iter().all(|&b| b));
        prop_assert_eq!(outcome(&[u0, u1]), base);
    }

    #[test]
    fn exp_is_a_homomorphism_on_the_nilpotent_ideal((p, e, f, case) in cases(), seed in any::<u64>()) {
        let (q, gens) = quotient(p, e, f, case, &[1]);
        prop_assert!(q.ideal_power_vanishes(&gens));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Random elements of the ideal generated by the witnesses.
        let mut sample = || {
            gens.iter().fold(q.zero(), |acc, g| q.add(&acc, &q.mul(&q.random_element(&mut rng), g)))
        };
        let (a, b) = (sample(), sample());
        let (ea, eb) = (q.truncated_exp(&a).unwrap(), q.truncated_exp(&b).unwrap());
        prop_assert_eq!(q.pow(&ea, p), q.one());
        prop_assert_eq!(q.mul(&ea, &eb), q.truncated_exp(&q.add(&a, &b)).unwrap());
        for k in 1..p as i64 {
            prop_assert_eq!(q.truncated_exp(&q.scale_int(&a, k)).unwrap(), q.pow(&ea, k as u64));
        }
        // Δ acts compatibly with the exponential.
        for s in 2..p as i64 {
            prop_assert_eq!(q.delta_action(s, &ea).unwrap(), q.truncated_exp(&q.delta_action(s, &a).unwrap()).unwrap());
        }
    }
}
