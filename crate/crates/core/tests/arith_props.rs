use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use hscheck::arith::{factor_mod_p, factor_over_q, sturm_real_root_count, teichmuller, IntPolynomial, PadicInt};

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn product(factors: &[IntPolynomial]) -> IntPolynomial {
    factors.iter().fold(IntPolynomial::one(), |acc, f| &acc * f)
}

// Plain schoolbook arithmetic mod p, kept separate from the library's ModPoly.
fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn divides_mod(h: &[u64], g: &[u64], p: u64) -> bool {
    // h monic.
    let mut r = g.to_vec();
    let dh = h.len() - 1;
    while r.len() > dh {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dh;
        for (i, c) in h.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn monic_polys(deg: usize, p: u64) -> Vec<Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count)
        .map(|mut n| {
            let mut v: Vec<u64> = (0..deg)
                .map(|_| {
                    let c = n % p;
                    n /= p;
                    c
                })
                .collect();
            v.push(1);
            v
        })
        .collect()
}

fn irreducible_by_search(g: &[u64], p: u64) -> bool {
    let d = g.len() - 1;
    (1..=d / 2).all(|k| monic_polys(k, p).iter().all(|h| !divides_mod(h, g, p)))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn factor_mod_p_reassembles(
        p in prop::sample::select(vec![5u64, 7, 11]),
        lead in 1i64..10,
        rest in prop::collection::vec(-20i64..20, 1..6),
    ) {
        prop_assume!(!(lead as u64).is_multiple_of(p));
        let mut c = rest.clone();
        c.push(lead);
        let f = poly(&c);
        let factors = factor_mod_p(&f, p).unwrap();
        let mut acc = vec![lead as u64 % p];
        for (g, m) in &factors {
            let gc = g.coeffs().to_vec();
            prop_assert_eq!(*gc.last().unwrap(), 1, "factor not monic");
            if gc.len() <= 5 {
                prop_assert!(irreducible_by_search(&gc, p), "reducible factor {:?}", gc);
            }
            for _ in 0..*m {
                acc = mul_mod(&acc, &gc, p);
            }
        }
        let want = trim(c.iter().map(|x| x.rem_euclid(p as i64) as u64).collect());
        prop_assert_eq!(trim(acc), want);
    }

    #[test]
    fn factor_over_q_recovers_planted_factors(
        linear in prop::collection::vec((1i64..4, -6i64..6), 0..3),
        quads in prop::collection::vec(prop::sample::select(vec![-2i64, -3, 10, 2, 5, -7]), 0..2),
        mult in 1u32..3,
        content in prop::sample::select(vec![1i64, 2, -3]),
    ) {
        // Irreducible pieces: primitive a*x + b, and x^2 - k with k not a square.
        let mut planted: BTreeMap<Vec<BigInt>, u32> = BTreeMap::new();
        let mut pieces = Vec::new();
        for &(a, b) in &linear {
            let g = num_integer::gcd(a, b);
            let q = poly(&[b / g, a / g]);
            *planted.entry(q.coeffs().to_vec()).or_default() += 1;
            pieces.push(q);
        }
        for &k in &quads {
            let q = poly(&[-k, 0, 1]);
            *planted.entry(q.coeffs().to_vec()).or_default() += mult;
            for _ in 0..mult {
                pieces.push(q.clone());
            }
        }
        prop_assume!(!pieces.is_empty());
        let f = product(&pieces).scale(&BigInt::from(content));
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.content.clone(), BigInt::from(content));
        let got: BTreeMap<Vec<BigInt>, u32> = fac.factors.iter().map(|(g, m)| (g.coeffs().to_vec(), *m)).collect();
        prop_assert_eq!(got, planted);
        let mut check = IntPolynomial::constant(fac.content.clone());
        for (g, m) in &fac.factors {
            check = &check * &g.pow(*m);
        }
        prop_assert_eq!(check, f);
    }

    #[test]
    fn irreducible_inputs_stay_whole(k in 2i64..40, shift in -5i64..5) {
        // x^3 - k is irreducible unless k is a cube.
        prop_assume!((1..4).all(|r: i64| r * r * r != k));
        let f = poly(&[-k, 0, 0, 1]).shift(&BigInt::from(shift));
        let fac = factor_over_q(&f).unwrap();
        prop_assert!(fac.is_irreducible(), "{:?}", fac);
    }

    #[test]
    fn teichmuller_is_a_character(p in prop::sample::select(vec![5u64, 7, 11, 13, 97]), a in 1i64..500, b in 1i64..500, n in 1u32..25) {
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let wa = teichmuller(p, a, n).unwrap();
        let wb = teichmuller(p, b, n).unwrap();
        let wab = teichmuller(p, a * b, n).unwrap();
        prop_assert_eq!(&wa * &wb, wab);
        prop_assert_eq!(wa.pow(p - 1), PadicInt::one(p, n));
        prop_assert_eq!(wa.residue(), a as u64 % p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    /// Polynomials assembled from known real roots and root-free quadratics.
    #[test]
    fn sturm_counts_planted_roots(
        int_roots in prop::collection::vec((-8i64..8, 1u32..3), 0..4),
        half_roots in prop::collection::vec(-5i64..5, 0..2),
        surds in prop::collection::btree_set(prop::sample::select(vec![2i64, 3, 5, 6, 7]), 0..2),
        positive in prop::collection::vec(1i64..9, 0..2),
        sign in prop::sample::select(vec![1i64, -1]),
    ) {
        let mut pieces = Vec::new();
        let mut roots = std::collections::BTreeSet::new();
        for &(r, m) in &int_roots {
            for _ in 0..m {
                pieces.push(poly(&[-r, 1]));
            }
            roots.insert((2 * r, 0));
        }
        for &h in &half_roots {
            // Root (2h+1)/2, never an integer.
            pieces.push(poly(&[-(2 * h + 1), 2]));
            roots.insert((2 * h + 1, 0));
        }
        for &k in &surds {
            pieces.push(poly(&[-k, 0, 1]));
            roots.insert((0, k));
            roots.insert((0, -k));
        }
        for &c in &positive {
            pieces.push(poly(&[c, 0, 1]));
        }
        prop_assume!(!pieces.is_empty());
        let f = product(&pieces).scale(&BigInt::from(sign));
        prop_assert_eq!(sturm_real_root_count(&f).unwrap(), roots.len());
    }
}

#[test]
fn sturm_on_fixed_cases() {
    assert_eq!(sturm_real_root_count(&poly(&[-1, -2, 1, 1])).unwrap(), 3);
    assert_eq!(sturm_real_root_count(&poly(&[1, 0, 1])).unwrap(), 0);
    assert_eq!(sturm_real_root_count(&poly(&[0, 0, 0, 1])).unwrap(), 1);
}
