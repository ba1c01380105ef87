//! Polynomials over the prime field F_p and their factorization.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::padic::{inv_mod_u64, is_prime};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Seed for the equal-degree splitting; fixed so factor order is reproducible.
const SPLIT_SEED: u64 = 0x5eed_0fc0_ffee;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    prime: u64,
    coeffs: Vec<u64>,
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl ModPoly {
    pub fn new(prime: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|a| a % prime).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { prime, coeffs: c }
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        Self::new(p, f.residues_mod(p))
    }

    pub fn zero(prime: u64) -> Self {
        ModPoly { prime, coeffs: vec![] }
    }

    pub fn one(prime: u64) -> Self {
        Self::new(prime, vec![1])
    }

    pub fn x(prime: u64) -> Self {
        Self::new(prime, vec![0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Lift to Z with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod_u64(self.leading_coefficient(), self.prime).expect("field");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.prime;
        Self::new(p, self.coeffs.iter().map(|&a| mulm(a, c, p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(p, (0..n).map(|i| (self.coeff(i) + p - o.coeff(i)) % p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prime;
        if self.is_zero() || o.is_zero() {
            return Self::zero(p);
        }
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.prime;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod_u64(d.leading_coefficient(), p).expect("field");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulm(r[k + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulm(c, dc, p)) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        let p = self.prime;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.prime;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod_u64(r0.leading_coefficient(), p).expect("field");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, exp: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.prime).rem(m);
        let base = self.rem(m);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.prime;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
    }

    /// Irreducibility via Rabin's test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let p = BigUint::from(self.prime);
        let x = Self::x(self.prime);
        let xq = |k: usize| x.pow_mod(&num_traits::pow(p.clone(), k), &f);
        if xq(n).sub(&x).rem(&f) != Self::zero(self.prime) {
            return false;
        }
        let mut m = n;
        let mut q = 2;
        let mut prime_divs = Vec::new();
        while q * q <= m {
            if m % q == 0 {
                prime_divs.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            prime_divs.push(m);
        }
        prime_divs.into_iter().all(|q| xq(n / q).sub(&x).gcd(&f).is_one())
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int(), self.prime)
    }
}

/// Squarefree decomposition of a monic polynomial: `f = prod g_i^{m_i}`.
fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.prime();
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: take the p-th root coefficientwise.
        let deg = c.degree().unwrap_or(0);
        let root = ModPoly::new(p, (0..=deg / p as usize).map(|k| c.coeff(k * p as usize)).collect());
        for (g, m) in squarefree_decomposition(&root.monic()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree split of a monic squarefree polynomial.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.prime();
    let pb = BigUint::from(p);
    let x = ModPoly::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((rest.clone(), deg));
            break;
        }
        h = h.pow_mod(&pb, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of distinct monic irreducibles all of degree `d`.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let p = f.prime();
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let exp = if p == 2 {
        BigUint::zero()
    } else {
        (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32)
    };
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mul_mod(&cur, f);
                acc = acc.add(&cur);
            }
            acc
        } else {
            a.pow_mod(&exp, f).sub(&ModPoly::one(p))
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Factors `f` modulo `p` into monic irreducibles with multiplicities,
/// sorted by degree and then coefficients.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Result<Vec<(ModPoly, u32)>> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let fm = ModPoly::from_int(f, p);
    factor_modpoly(&fm)
}

/// Factorization of a polynomial already reduced mod p.
pub fn factor_modpoly(fm: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    if fm.is_zero() {
        return Err(Error::Precondition("polynomial vanishes mod p".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    if fm.degree() == Some(0) {
        return Ok(out);
    }
    for (sq, mult) in squarefree_decomposition(&fm.monic()) {
        for (block, d) in distinct_degree(&sq) {
            for g in equal_degree(&block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs, a.1).cmp(&(b.0.degree(), &b.0.coeffs, b.1)));
    Ok(out)
}

/// Degrees of the irreducible factors of a squarefree polynomial mod p,
/// without splitting equal-degree blocks.
pub fn factor_degree_pattern(fm: &ModPoly) -> Vec<usize> {
    let mut degs = Vec::new();
    for (block, d) in distinct_degree(&fm.monic()) {
        let n = block.degree().unwrap_or(0);
        degs.extend(std::iter::repeat_n(d, n / d));
    }
    degs.sort_unstable();
    degs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn show(v: &[(ModPoly, u32)]) -> Vec<(String, u32)> {
        v.iter().map(|(g, m)| (g.to_int().to_string(), *m)).collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            show(&factor_mod_p(&ip("x^3+x^2-2*x-1"), 7).unwrap()),
            vec![("x+5".to_string(), 3)]
        );
        assert_eq!(
            show(&factor_mod_p(&ip("x^2-5"), 5).unwrap()),
            vec![("x".to_string(), 2)]
        );
        assert_eq!(
            show(&factor_mod_p(&ip("x^2-2"), 5).unwrap()),
            vec![("x^2+3".to_string(), 1)]
        );
    }

    #[test]
    fn zero_mod_p_rejected() {
        assert!(factor_mod_p(&ip("5*x^2+10"), 5).is_err());
        assert!(factor_mod_p(&ip("x^2+1"), 6).is_err());
    }

    #[test]
    fn characteristic_two_and_p_th_powers() {
        // x^4 + 1 = (x + 1)^4 over F_2
        assert_eq!(
            show(&factor_mod_p(&ip("x^4+1"), 2).unwrap()),
            vec![("x+1".to_string(), 4)]
        );
        // x^15 - 1 over F_2 splits into 1 + 2 + 4 + 4 + 4 degrees
        let f = factor_mod_p(&ip("x^15-1"), 2).unwrap();
        let mut degs: Vec<usize> = f.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        // (x^3 + 2)^3 over F_3: inseparable-looking input
        let g = factor_mod_p(&ip("x^9+2"), 3).unwrap();
        assert_eq!(show(&g), vec![("x+2".to_string(), 9)]);
    }

    #[test]
    fn rabin_irreducibility() {
        assert!(ModPoly::from_int(&ip("x^2-2"), 5).is_irreducible());
        assert!(!ModPoly::from_int(&ip("x^2-1"), 5).is_irreducible());
        assert!(ModPoly::from_int(&ip("x^4+x+1"), 2).is_irreducible());
        assert!(!ModPoly::from_int(&ip("x^4+x^2+1"), 2).is_irreducible());
    }

    #[test]
    fn xgcd_identity() {
        let a = ModPoly::from_int(&ip("x^3+2*x+1"), 7);
        let b = ModPoly::from_int(&ip("x^2+3"), 7);
        let (g, s, t) = a.xgcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
