//! Fixed-precision p-adic integers.
//!
//! A [`PadicInt`] is a residue modulo `p^N`. Binary operations between values
//! of different precision are carried out at the smaller precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default working precision for p-adic computations.
pub const DEFAULT_PRECISION: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    prime: u64,
    precision: u32,
    value: BigInt,
}

/// `p^n` as a big integer.
pub fn prime_power(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation_of_int(p: u64, x: &BigInt) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn valuation_of_rational(p: u64, x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let vn = valuation_of_int(p, x.numer())? as i64;
    let vd = valuation_of_int(p, x.denom())? as i64;
    Some(vn - vd)
}

impl PadicInt {
    pub fn new(prime: u64, precision: u32, value: impl Into<BigInt>) -> Self {
        assert!(prime >= 2, "p-adic prime must be at least 2");
        assert!(precision >= 1, "p-adic precision must be positive");
        let m = prime_power(prime, precision);
        PadicInt {
            prime,
            precision,
            value: value.into().mod_floor(&m),
        }
    }

    pub fn zero(prime: u64, precision: u32) -> Self {
        Self::new(prime, precision, 0)
    }

    pub fn one(prime: u64, precision: u32) -> Self {
        Self::new(prime, precision, 1)
    }

    /// Embeds a rational whose denominator is prime to `p`.
    pub fn from_rational(prime: u64, precision: u32, r: &BigRational) -> Result<Self> {
        let den = Self::new(prime, precision, r.denom().clone());
        let inv = den.inverse()?;
        Ok(&Self::new(prime, precision, r.numer().clone()) * &inv)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Canonical representative in `[0, p^N)`.
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> BigInt {
        prime_power(self.prime, self.precision)
    }

    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn symmetric(&self) -> BigInt {
        let m = self.modulus();
        if &self.value * 2 > m {
            &self.value - m
        } else {
            self.value.clone()
        }
    }

    /// Image in `Z/p`.
    pub fn residue(&self) -> u64 {
        let r = &self.value % BigInt::from(self.prime);
        u64::try_from(r).expect("residue fits in u64")
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.residue() != 0
    }

    /// Valuation, or `None` when the value is zero at the working precision.
    pub fn valuation(&self) -> Option<u32> {
        valuation_of_int(self.prime, &self.value)
    }

    /// Truncates to a smaller precision; requests above the current precision are clamped.
    pub fn with_precision(&self, precision: u32) -> Self {
        let n = precision.min(self.precision);
        Self::new(self.prime, n, self.value.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotInvertible(format!(
                "{} is not a unit mod {}^{}",
                self.value, self.prime, self.precision
            )));
        }
        let m = self.modulus();
        let g = self.value.extended_gcd(&m);
        debug_assert!(g.gcd.is_one());
        Ok(Self::new(self.prime, self.precision, g.x))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let m = self.modulus();
        let mut base = self.value.clone();
        let mut acc = BigInt::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc * &base).mod_floor(&m);
            }
            base = (&base * &base).mod_floor(&m);
            exp >>= 1;
        }
        PadicInt {
            prime: self.prime,
            precision: self.precision,
            value: acc,
        }
    }

    /// Exact division by `p`; the result loses one digit of precision.
    pub fn divide_by_p(&self) -> Result<Self> {
        if self.precision < 2 {
            return Err(Error::PrecisionExhausted("cannot divide by p at precision 1".into()));
        }
        if self.residue() != 0 {
            return Err(Error::Domain(format!(
                "{} is not divisible by {}",
                self.value, self.prime
            )));
        }
        Ok(Self::new(
            self.prime,
            self.precision - 1,
            &self.value / BigInt::from(self.prime),
        ))
    }

    fn binary(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.prime, other.prime, "p-adic prime mismatch");
        let n = self.precision.min(other.precision);
        Self::new(self.prime, n, op(&self.value, &other.value))
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.prime, self.precision)
    }
}

impl Add for &PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: &PadicInt) -> PadicInt {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: &PadicInt) -> PadicInt {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: &PadicInt) -> PadicInt {
        self.binary(rhs, |a, b| a * b)
    }
}

impl Neg for &PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        PadicInt::new(self.prime, self.precision, -&self.value)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PadicInt {
            type Output = PadicInt;
            fn $m(self, rhs: PadicInt) -> PadicInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Teichmüller lift of `a`: the unique `(p-1)`-th root of unity congruent to
/// `a` mod `p`, found by iterating `a -> a^p` until it stabilises mod `p^N`.
pub fn teichmuller(p: u64, a: i64, precision: u32) -> Result<PadicInt> {
    if precision == 0 {
        return Err(Error::Domain("precision must be positive".into()));
    }
    let x0 = PadicInt::new(p, precision, a);
    if !x0.is_unit() {
        return Err(Error::Domain(format!("{p} divides {a}")));
    }
    let mut x = x0;
    for _ in 0..=precision + 1 {
        let y = x.pow(p);
        if y == x {
            return Ok(x);
        }
        x = y;
    }
    Err(Error::Internal("Teichmüller iteration did not stabilise".into()))
}

/// Modular inverse of `a` mod `m` for machine-sized moduli.
pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Modular exponentiation for machine-sized moduli.
pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mm = m as u128;
    let mut b = base as u128 % mm;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Deterministic primality test for `u64` (trial division below 2^32 suffices
/// for the small primes this crate works with; larger inputs use Miller-Rabin
/// with the deterministic base set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            factors.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod_u64(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(5, 1, 2).unwrap().value(), &BigInt::from(1));
        assert_eq!(teichmuller(5, 4, 2).unwrap().value(), &BigInt::from(24));
        assert_eq!(teichmuller(5, 2, 2).unwrap().value(), &BigInt::from(7));
        assert!(matches!(teichmuller(5, 10, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn teichmuller_matches_brute_force_mod_25() {
        for a in 1..5i64 {
            let brute: Vec<i64> = (0..25).filter(|x| x % 5 == a && (x * x * x * x) % 25 == 1).collect();
            assert_eq!(brute.len(), 1);
            assert_eq!(teichmuller(5, a, 2).unwrap().value(), &BigInt::from(brute[0]));
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(PadicInt::new(5, 2, 1).inverse().unwrap().value(), &BigInt::from(1));
        assert_eq!(PadicInt::new(5, 2, 2).inverse().unwrap().value(), &BigInt::from(13));
        assert_eq!(PadicInt::new(7, 2, 12).inverse().unwrap().value(), &BigInt::from(45));
        let err = PadicInt::new(5, 2, 10).inverse().unwrap_err();
        assert!(err.to_string().contains("not invertible"));
    }

    #[test]
    fn mixed_precision_truncates() {
        let a = PadicInt::new(5, 3, 26);
        let b = PadicInt::new(5, 1, 1);
        let c = &a + &b;
        assert_eq!(c.precision(), 1);
        assert_eq!(c.value(), &BigInt::from(2));
    }

    #[test]
    fn divide_by_p_loses_a_digit() {
        let x = PadicInt::new(7, 4, 49 * 3);
        let y = x.divide_by_p().unwrap();
        assert_eq!(y.precision(), 3);
        assert_eq!(y.value(), &BigInt::from(21));
        assert_eq!(y.divide_by_p().unwrap().value(), &BigInt::from(3));
        assert!(PadicInt::new(7, 4, 3).divide_by_p().is_err());
    }

    #[test]
    fn primes_and_roots() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(561));
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(13), 2);
    }
}
