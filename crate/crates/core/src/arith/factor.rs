//! Exact factorization over Q: squarefree decomposition, modular
//! factorization, Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hensel::{hensel_lift_factorization, symmetric};
use super::modpoly::{factor_modpoly, ModPoly};
use super::padic::{is_prime, prime_power};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Largest degree accepted by [`factor_over_q`].
pub const MAX_FACTOR_DEGREE: usize = 24;

/// Number of admissible primes tried before recombination.
const PRIME_TRIALS: usize = 6;

/// `f = content * prod(factor^multiplicity)` with primitive factors of
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.content.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            })
    }

    /// True when the input was a single irreducible factor of multiplicity one
    /// (up to a unit).
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.content.abs().is_one()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.degree().unwrap_or(0), *m as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

pub fn factor_over_q(f: &IntPolynomial) -> Result<Factorization> {
    factor_over_q_bounded(f, MAX_FACTOR_DEGREE)
}

/// As [`factor_over_q`] with a caller-chosen degree bound.
pub fn factor_over_q_bounded(f: &IntPolynomial, bound: usize) -> Result<Factorization> {
    let Some(n) = f.degree() else {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    };
    if n > bound {
        return Err(Error::UnsupportedDegree { degree: n, bound });
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_over_q(&f.primitive_part()) {
        for g in zassenhaus(&part)? {
            factors.push((g, mult));
        }
    }
    factors.sort();
    let prod = factors
        .iter()
        .fold(IntPolynomial::one(), |acc, (g, m)| &acc * &g.pow(*m));
    let (content, rem) = f.leading_coefficient().div_rem(&prod.leading_coefficient());
    if !rem.is_zero() {
        return Err(Error::Internal("factor product has wrong leading coefficient".into()));
    }
    let out = Factorization { content, factors };
    if &out.expand() != f {
        return Err(Error::Internal("factor product does not reproduce input".into()));
    }
    Ok(out)
}

/// Yun's squarefree decomposition over Q of a primitive polynomial.
fn squarefree_over_q(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    if f.degree() == Some(0) {
        return vec![];
    }
    let fr = f.to_rat();
    let df = fr.derivative();
    let b = fr.gcd(&df);
    let mut c = fr.div_rem(&b).expect("nonzero").0;
    let mut d = &df.div_rem(&b).expect("nonzero").0 - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        c = c.div_rem(&a).expect("nonzero").0;
        d = &d.div_rem(&a).expect("nonzero").0 - &c.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.to_primitive_int(), i));
        }
        i += 1;
    }
    out
}

fn mignotte_bound(g: &IntPolynomial) -> BigInt {
    let n = g.degree().unwrap_or(0);
    let norm = g.norm_sq().sqrt() + BigInt::one();
    g.leading_coefficient().abs() * (BigInt::one() << n) * norm
}

/// Index subsets of size `k` of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Irreducible factors of a squarefree primitive polynomial.
fn zassenhaus(g: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let n = g.degree().unwrap_or(0);
    if n <= 1 {
        return Ok(vec![g.primitive_part()]);
    }
    let lc = g.leading_coefficient();
    let dg = g.derivative();
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    let mut q = 2u64;
    while tried < PRIME_TRIALS {
        q += 1;
        if !is_prime(q) || (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let gm = ModPoly::from_int(g, q);
        if !gm.gcd(&ModPoly::from_int(&dg, q)).is_one() {
            continue;
        }
        tried += 1;
        let facs: Vec<ModPoly> = factor_modpoly(&gm)?.into_iter().map(|(h, _)| h).collect();
        if facs.len() == 1 {
            return Ok(vec![g.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((q, facs));
        }
    }
    let (q, facs) = best.expect("at least one admissible prime");
    let bound = mignotte_bound(g) * 2;
    let mut k = 1u32;
    while prime_power(q, k) <= bound {
        k += 1;
    }
    let modulus = prime_power(q, k);
    let lifts = hensel_lift_factorization(g, q, &facs, k)?;

    let mut remaining: Vec<IntPolynomial> = lifts;
    let mut current = g.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let lcc = current.leading_coefficient();
            let prod = subset.iter().fold(IntPolynomial::constant(lcc), |acc, &i| {
                super::hensel::reduce(&(&acc * &remaining[i]), &modulus)
            });
            let cand = symmetric(&prod, &modulus).primitive_part();
            if let Some(quot) = current.div_exact(&cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                current = quot;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => size += 1,
        }
    }
    if current.degree().unwrap_or(0) > 0 {
        found.push(current.primitive_part());
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn names(f: &Factorization) -> Vec<String> {
        f.factors.iter().map(|(g, _)| g.to_string()).collect()
    }

    #[test]
    fn spec_examples() {
        let f = factor_over_q(&ip("x^2-5")).unwrap();
        assert!(f.is_irreducible());
        let f = factor_over_q(&ip("x^4-1")).unwrap();
        let mut got = names(&f);
        got.sort();
        assert_eq!(got, vec!["x+1", "x-1", "x^2+1"]);
        let phi7 = ip("x^6+x^5+x^4+x^3+x^2+x+1");
        assert!(factor_over_q(&phi7).unwrap().is_irreducible());
    }

    #[test]
    fn phi7_shifted_is_eisenstein() {
        let shifted = ip("x^6+x^5+x^4+x^3+x^2+x+1").shift(&BigInt::one());
        let c = shifted.coeffs();
        assert!(c[..6].iter().all(|a| (a % BigInt::from(7)).is_zero()));
        assert!(!(&c[0] % BigInt::from(49)).is_zero());
    }

    #[test]
    fn multiplicities_and_content() {
        let f = ip("6*x^5-6*x^4-12*x^3+12*x^2+6*x-6"); // 6 (x-1)^3 (x+1)^2
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(6));
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors, vec![(ip("x-1"), 3), (ip("x+1"), 2)]);
    }

    #[test]
    fn non_monic_recombination() {
        let f = &ip("2*x^2+3*x-1") * &ip("3*x^3-x+5");
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn needs_recombination() {
        // x^4+1 splits into quadratics mod every prime.
        assert!(factor_over_q(&ip("x^4+1")).unwrap().is_irreducible());
        let f = &ip("x^4-10*x^2+1") * &ip("x^2-3");
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.degrees(), vec![2, 4]);
    }

    #[test]
    fn degree_bound() {
        let f = IntPolynomial::monomial(BigInt::one(), 25);
        assert!(matches!(
            factor_over_q(&f),
            Err(Error::UnsupportedDegree { degree: 25, bound: 24 })
        ));
    }

    #[test]
    fn combinations_enumerate_all() {
        let v: Vec<_> = combinations(4, 2).collect();
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], vec![0, 1]);
        assert_eq!(v[5], vec![2, 3]);
    }
}
