//! Finite fields F_{p^f} and truncated polynomial rings k[t]/(t^m).

use num_bigint::BigUint;

use super::modpoly::ModPoly;
use super::padic::{inv_mod_u64, is_prime};
use crate::error::{Error, Result};

/// Largest extension degree covered by the built-in modulus table.
pub const TABLE_MAX_DEGREE: usize = 4;
/// Primes below this bound are covered by the built-in modulus table.
pub const TABLE_PRIME_BOUND: u64 = 100;

/// Lexicographically least monic irreducible of degree `f` over F_p, where
/// candidates are ordered by their coefficient vector read from `s^{f-1}`
/// down to the constant term.
pub fn least_irreducible(p: u64, f: usize) -> ModPoly {
    assert!(f >= 1);
    let total = (p as u128).pow(f as u32);
    for idx in 0..total {
        let mut coeffs = vec![0u64; f + 1];
        coeffs[f] = 1;
        let mut r = idx;
        for slot in coeffs.iter_mut().take(f) {
            *slot = (r % p as u128) as u64;
            r /= p as u128;
        }
        let cand = ModPoly::new(p, coeffs);
        if cand.is_irreducible() {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Modulus used for F_{p^f}: the deterministic table entry when `p < 100`
/// and `f <= 4`, otherwise computed on demand by the same search.
pub fn default_modulus(p: u64, f: usize) -> ModPoly {
    least_irreducible(p, f)
}

/// The field F_p[s]/(h(s)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    prime: u64,
    degree: usize,
    modulus: ModPoly,
}

/// Element of a [`FiniteField`]: coefficients of `1, s, ..., s^{f-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub Vec<u64>);

impl FiniteField {
    pub fn new(p: u64, f: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::Domain("extension degree must be positive".into()));
        }
        Ok(FiniteField {
            prime: p,
            degree: f,
            modulus: default_modulus(p, f),
        })
    }

    /// Field with a caller-supplied modulus, certified irreducible.
    pub fn with_modulus(modulus: ModPoly) -> Result<Self> {
        let p = modulus.prime();
        let f = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Domain("modulus must have positive degree".into()))?;
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if !modulus.is_irreducible() {
            return Err(Error::Domain(format!("{modulus} is reducible")));
        }
        Ok(FiniteField {
            prime: p,
            degree: f,
            modulus: modulus.monic(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &ModPoly {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.prime), self.degree)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.degree])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, a: i64) -> FieldElement {
        let mut v = vec![0; self.degree];
        v[0] = a.rem_euclid(self.prime as i64) as u64;
        FieldElement(v)
    }

    /// The class of `s`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(&ModPoly::x(self.prime))
    }

    fn reduce(&self, a: &ModPoly) -> FieldElement {
        let r = a.rem(&self.modulus);
        let mut v = r.coeffs().to_vec();
        v.resize(self.degree, 0);
        FieldElement(v)
    }

    fn lift(&self, a: &FieldElement) -> ModPoly {
        ModPoly::new(self.prime, a.0.clone())
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.prime;
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.prime;
        FieldElement(a.0.iter().zip(&b.0).map(|(x, y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.degree == 1 {
            let p = self.prime as u128;
            return FieldElement(vec![((a.0[0] as u128 * b.0[0] as u128) % p) as u64]);
        }
        self.reduce(&self.lift(a).mul(&self.lift(b)))
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let p = self.prime as u128;
        FieldElement(a.0.iter().map(|&x| ((x as u128 * c as u128) % p) as u64).collect())
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::NotInvertible("zero in a finite field".into()));
        }
        if self.degree == 1 {
            return Ok(FieldElement(vec![inv_mod_u64(a.0[0], self.prime).expect("unit")]));
        }
        let (g, s, _) = self.lift(a).xgcd(&self.modulus);
        debug_assert!(g.is_one());
        Ok(self.reduce(&s))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// All field elements, in lexicographic coefficient order.
    pub fn elements(&self) -> Vec<FieldElement> {
        let q = (self.prime as usize).pow(self.degree as u32);
        (0..q)
            .map(|mut idx| {
                let mut v = vec![0u64; self.degree];
                for slot in v.iter_mut() {
                    *slot = (idx % self.prime as usize) as u64;
                    idx /= self.prime as usize;
                }
                FieldElement(v)
            })
            .collect()
    }
}

/// The ring k[t]/(t^m) over a finite field k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedRing {
    field: FiniteField,
    order: usize,
}

/// `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedRingElement(pub Vec<FieldElement>);

impl TruncatedRing {
    pub fn new(field: FiniteField, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("nilpotency order must be positive".into()));
        }
        Ok(TruncatedRing { field, order: m })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Nilpotency order `m` (so `t^m = 0`).
    pub fn nilpotency_order(&self) -> usize {
        self.order
    }

    pub fn prime(&self) -> u64 {
        self.field.prime
    }

    pub fn zero(&self) -> TruncatedRingElement {
        TruncatedRingElement(vec![self.field.zero(); self.order])
    }

    pub fn one(&self) -> TruncatedRingElement {
        self.from_field(self.field.one())
    }

    pub fn from_int(&self, a: i64) -> TruncatedRingElement {
        self.from_field(self.field.from_int(a))
    }

    pub fn from_field(&self, c: FieldElement) -> TruncatedRingElement {
        let mut v = vec![self.field.zero(); self.order];
        v[0] = c;
        TruncatedRingElement(v)
    }

    /// `c * t^k` (zero when `k >= m`).
    pub fn monomial(&self, c: FieldElement, k: usize) -> TruncatedRingElement {
        let mut v = vec![self.field.zero(); self.order];
        if k < self.order {
            v[k] = c;
        }
        TruncatedRingElement(v)
    }

    /// Element from prime-field coefficients of `1, t, t^2, ...`; extra terms are truncated.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> TruncatedRingElement {
        let mut v = vec![self.field.zero(); self.order];
        for (slot, &c) in v.iter_mut().zip(coeffs) {
            *slot = self.field.from_int(c);
        }
        TruncatedRingElement(v)
    }

    pub fn is_zero(&self, a: &TruncatedRingElement) -> bool {
        a.0.iter().all(|c| self.field.is_zero(c))
    }

    pub fn is_unit(&self, a: &TruncatedRingElement) -> bool {
        !self.field.is_zero(&a.0[0])
    }

    /// Largest `k` with `t^k | a`; `m` for zero.
    pub fn t_adic_valuation(&self, a: &TruncatedRingElement) -> usize {
        a.0.iter().position(|c| !self.field.is_zero(c)).unwrap_or(self.order)
    }

    pub fn add(&self, a: &TruncatedRingElement, b: &TruncatedRingElement) -> TruncatedRingElement {
        TruncatedRingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &TruncatedRingElement, b: &TruncatedRingElement) -> TruncatedRingElement {
        TruncatedRingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &TruncatedRingElement) -> TruncatedRingElement {
        TruncatedRingElement(a.0.iter().map(|x| self.field.neg(x)).collect())
    }

    pub fn mul(&self, a: &TruncatedRingElement, b: &TruncatedRingElement) -> TruncatedRingElement {
        let mut out = vec![self.field.zero(); self.order];
        for (i, x) in a.0.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate().take(self.order - i) {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        TruncatedRingElement(out)
    }

    pub fn scale(&self, a: &TruncatedRingElement, c: u64) -> TruncatedRingElement {
        TruncatedRingElement(a.0.iter().map(|x| self.field.scale(x, c)).collect())
    }

    pub fn mul_field(&self, a: &TruncatedRingElement, c: &FieldElement) -> TruncatedRingElement {
        TruncatedRingElement(a.0.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, a: &TruncatedRingElement, k: usize) -> TruncatedRingElement {
        let mut out = vec![self.field.zero(); self.order];
        let n = self.order.saturating_sub(k);
        out[k.min(self.order)..].clone_from_slice(&a.0[..n]);
        TruncatedRingElement(out)
    }

    pub fn inv(&self, a: &TruncatedRingElement) -> Result<TruncatedRingElement> {
        if !self.is_unit(a) {
            return Err(Error::NotInvertible("constant term vanishes in k[t]/(t^m)".into()));
        }
        // Power series inversion, one coefficient at a time.
        let c0_inv = self.field.inv(&a.0[0])?;
        let mut out = vec![self.field.zero(); self.order];
        out[0] = c0_inv.clone();
        for k in 1..self.order {
            let mut s = self.field.zero();
            for j in 1..=k {
                s = self.field.add(&s, &self.field.mul(&a.0[j], &out[k - j]));
            }
            out[k] = self.field.neg(&self.field.mul(&s, &c0_inv));
        }
        Ok(TruncatedRingElement(out))
    }

    pub fn pow(&self, a: &TruncatedRingElement, mut e: i64) -> Result<TruncatedRingElement> {
        let mut b = if e < 0 {
            e = -e;
            self.inv(a)?
        } else {
            a.clone()
        };
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Every element of the ring (only sensible for tiny rings).
    pub fn elements(&self) -> Vec<TruncatedRingElement> {
        let field_elems = self.field.elements();
        let mut out = vec![TruncatedRingElement(vec![])];
        for _ in 0..self.order {
            let mut next = Vec::with_capacity(out.len() * field_elems.len());
            for prefix in &out {
                for c in &field_elems {
                    let mut v = prefix.0.clone();
                    v.push(c.clone());
                    next.push(TruncatedRingElement(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn format(&self, a: &TruncatedRingElement) -> String {
        let mut terms = Vec::new();
        for (k, c) in a.0.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = if self.field.degree == 1 {
                c.0[0].to_string()
            } else {
                format!(
                    "({})",
                    ModPoly::new(self.prime(), c.0.clone()).to_int().to_string_in('s')
                )
            };
            terms.push(match k {
                0 => cs,
                1 => format!("{cs}*t"),
                _ => format!("{cs}*t^{k}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_moduli_are_irreducible() {
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            for f in 1..=TABLE_MAX_DEGREE {
                if (p as u128).pow(f as u32) > 2_000_000 {
                    continue;
                }
                let h = least_irreducible(p, f);
                assert_eq!(h.degree(), Some(f));
                assert!(h.is_irreducible(), "p={p} f={f}");
            }
        }
        assert_eq!(least_irreducible(2, 2).to_int().to_string(), "x^2+x+1");
        assert_eq!(least_irreducible(5, 2).to_int().to_string(), "x^2+2");
        assert_eq!(least_irreducible(5, 1).to_int().to_string(), "x");
    }

    #[test]
    fn user_modulus_must_be_irreducible() {
        let reducible = ModPoly::new(5, vec![4, 0, 1]);
        assert!(FiniteField::with_modulus(reducible).is_err());
        let ok = ModPoly::new(5, vec![2, 0, 1]);
        assert_eq!(FiniteField::with_modulus(ok).unwrap().degree(), 2);
    }

    #[test]
    fn field_inverses() {
        let k = FiniteField::new(7, 3).unwrap();
        for a in k.elements().into_iter().skip(1).step_by(17) {
            let ai = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &ai), k.one());
        }
    }

    #[test]
    fn truncated_units_by_enumeration() {
        // unit group order (p^f - 1) p^{f(m-1)}
        for (p, f, m) in [
            (5u64, 1usize, 2usize),
            (7, 1, 2),
            (3, 2, 2),
            (2, 2, 3),
            (7, 1, 4),
            (5, 2, 2),
        ] {
            let ring = TruncatedRing::new(FiniteField::new(p, f).unwrap(), m).unwrap();
            let all = ring.elements();
            let units: Vec<_> = all.iter().filter(|a| ring.is_unit(a)).collect();
            let q = p.pow(f as u32);
            let expected = (q - 1) * q.pow((m - 1) as u32);
            assert_eq!(units.len() as u64, expected, "p={p} f={f} m={m}");
            for a in &all {
                let invertible = ring.inv(a).map(|b| ring.mul(a, &b) == ring.one()).unwrap_or(false);
                assert_eq!(invertible, ring.is_unit(a));
            }
        }
    }

    #[test]
    fn t_power_vanishes() {
        let ring = TruncatedRing::new(FiniteField::new(5, 1).unwrap(), 3).unwrap();
        let t = ring.monomial(ring.field().one(), 1);
        let t3 = ring.pow(&t, 3).unwrap();
        assert!(ring.is_zero(&t3));
        assert_eq!(ring.t_adic_valuation(&ring.mul(&t, &t)), 2);
        assert_eq!(ring.format(&ring.add(&ring.from_int(3), &t)), "3+1*t");
    }
}
