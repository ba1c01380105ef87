//! Numeric model of `Z_p[ζ_p]` in the power basis of ζ, and the eigenvector
//! uniformizer λ with `λ^{p-1} = -p`, `λ ≡ 1 - ζ (mod (1-ζ)^2)`.
//!
//! This layer exists to cross-check the formal λ/π calculus in
//! [`crate::localorders`]; no verdict depends on it alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::linalg::{bareiss_determinant, solve_mod_prime_power};
use crate::arith::padic::{prime_power, teichmuller, PadicInt};
use crate::error::{Error, Result};

/// Results carrying fewer p-adic digits than this are refused.
pub const MIN_ASSERTED_DIGITS: u32 = 4;

/// `Σ c_i ζ^i` for `i < p-1`, coefficients modulo `p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    prime: u64,
    precision: u32,
    coeffs: Vec<BigInt>,
}

impl CycloElement {
    pub fn from_coeffs(prime: u64, precision: u32, coeffs: Vec<BigInt>) -> Self {
        assert!(prime >= 3, "cyclotomic model needs an odd prime");
        let d = (prime - 1) as usize;
        let m = prime_power(prime, precision);
        let mut c = vec![BigInt::zero(); d];
        let mut top = BigInt::zero();
        for (i, a) in coeffs.into_iter().enumerate() {
            let slot = i % prime as usize;
            if slot == d {
                top += a;
            } else {
                c[slot] += a;
            }
        }
        for x in c.iter_mut() {
            *x = (&*x - &top).mod_floor(&m);
        }
        CycloElement {
            prime,
            precision,
            coeffs: c,
        }
    }

    pub fn from_int(prime: u64, precision: u32, a: impl Into<BigInt>) -> Self {
        Self::from_coeffs(prime, precision, vec![a.into()])
    }

    pub fn zero(prime: u64, precision: u32) -> Self {
        Self::from_int(prime, precision, 0)
    }

    pub fn one(prime: u64, precision: u32) -> Self {
        Self::from_int(prime, precision, 1)
    }

    /// ζ^k for any integer exponent.
    pub fn zeta_power(prime: u64, precision: u32, k: i64) -> Self {
        let e = k.rem_euclid(prime as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        Self::from_coeffs(prime, precision, v)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> PadicInt {
        PadicInt::new(self.prime, self.precision, self.coeffs[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.prime, o.prime, "cyclotomic prime mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.precision.min(o.precision);
        Self::from_coeffs(
            self.prime,
            n,
            self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.precision.min(o.precision);
        Self::from_coeffs(
            self.prime,
            n,
            self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.prime, self.precision, self.coeffs.iter().map(|a| -a).collect())
    }

    /// Multiplication with the reduction `ζ^{p-1} = -(1 + ζ + ... + ζ^{p-2})`.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prime as usize;
        let n = self.precision.min(o.precision);
        let m = prime_power(self.prime, n);
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += a * b;
            }
        }
        for x in acc.iter_mut() {
            *x = x.mod_floor(&m);
        }
        Self::from_coeffs(self.prime, n, acc)
    }

    pub fn scalar_mul(&self, c: &PadicInt) -> Self {
        assert_eq!(c.prime(), self.prime);
        let n = self.precision.min(c.precision());
        Self::from_coeffs(self.prime, n, self.coeffs.iter().map(|a| a * c.value()).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.prime, self.precision);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// The automorphism `σ_a : ζ -> ζ^a`.
    pub fn sigma(&self, a: i64) -> Result<Self> {
        let p = self.prime as i64;
        if a.rem_euclid(p) == 0 {
            return Err(Error::Domain(format!("{p} divides {a}")));
        }
        let mut v = vec![BigInt::zero(); self.prime as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (a.rem_euclid(p) as usize * i) % self.prime as usize;
            v[j] += c;
        }
        Ok(Self::from_coeffs(self.prime, self.precision, v))
    }

    /// Image under `ζ -> 1`, i.e. modulo `(1 - ζ)` lifted to `Z_p`.
    pub fn at_one(&self) -> PadicInt {
        let s: BigInt = self.coeffs.iter().sum();
        PadicInt::new(self.prime, self.precision, s)
    }

    /// Exact division by `1 - ζ`, costing one p-adic digit.
    pub fn div_one_minus_zeta(&self) -> Result<Self> {
        let total = self.at_one();
        if !total.is_zero() && total.residue() != 0 {
            return Err(Error::Domain("element is not divisible by 1 - ζ".into()));
        }
        if self.precision <= MIN_ASSERTED_DIGITS {
            return Err(Error::PrecisionExhausted(format!(
                "division by 1 - ζ would leave {} digits",
                self.precision - 1
            )));
        }
        // (1-ζ)·Σ y_i ζ^i has coefficients c_i = y_i - y_{i-1} + y_{p-2}, so
        // y_i = (c_0 + ... + c_i) - (i+1)·s with p·s = Σ c_i.
        let s = total.divide_by_p()?;
        let n = s.precision();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut prefix = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            prefix += c;
            out.push(&prefix - BigInt::from(i as u64 + 1) * s.value());
        }
        Ok(Self::from_coeffs(self.prime, n, out))
    }

    /// Number of times `1 - ζ` divides this element, capped at `limit`.
    pub fn one_minus_zeta_valuation(&self, limit: u32) -> Result<u32> {
        let mut x = self.clone();
        for v in 0..limit {
            if x.is_zero() {
                return Ok(limit);
            }
            if x.at_one().residue() != 0 {
                return Ok(v);
            }
            x = x.div_one_minus_zeta()?;
        }
        Ok(limit)
    }

    /// Inverse of a unit by Newton iteration `w -> w (2 - a w)`.
    pub fn inverse(&self) -> Result<Self> {
        let r = self.at_one();
        let r_inv = r
            .inverse()
            .map_err(|_| Error::NotInvertible("element lies in (1 - ζ)".into()))?;
        let one = Self::one(self.prime, self.precision);
        let two = Self::from_int(self.prime, self.precision, 2);
        let mut w = Self::from_int(self.prime, self.precision, r_inv.value().clone());
        let needed = (self.prime - 1) * self.precision as u64;
        let max_iter = 64 - needed.leading_zeros() + 2;
        for _ in 0..=max_iter {
            if self.mul(&w) == one {
                return Ok(w);
            }
            w = w.mul(&two.sub(&self.mul(&w)));
        }
        Err(Error::Internal("unit inversion in Z_p[ζ] did not converge".into()))
    }

    /// Matrix of multiplication by this element in the ζ-power basis
    /// (column `j` is `self · ζ^j`), with symmetric integer entries.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigInt>> {
        let d = self.coeffs.len();
        let m = prime_power(self.prime, self.precision);
        let half = &m / BigInt::from(2);
        let sym = |c: &BigInt| if c > &half { c - &m } else { c.clone() };
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                let z = Self::zeta_power(self.prime, self.precision, j as i64);
                self.mul(&z).coeffs.iter().map(sym).collect()
            })
            .collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Norm to Q of an element whose symmetric coefficients are its true
    /// integer coordinates (small elements such as `1 - ζ`).
    pub fn norm_exact(&self) -> BigInt {
        bareiss_determinant(&self.multiplication_matrix())
    }
}

/// `p / (1-ζ)^{p-1} = Π_{a=1}^{p-1} (1 + ζ + ... + ζ^{a-1})`, an exact unit.
pub fn p_over_uniformizer_power(p: u64, precision: u32) -> CycloElement {
    let mut acc = CycloElement::one(p, precision);
    for a in 1..p {
        let partial = CycloElement::from_coeffs(p, precision, vec![BigInt::one(); a as usize]);
        acc = acc.mul(&partial);
    }
    acc
}

/// Newton iteration cap `2·log2(N) + 8`.
fn newton_cap(precision: u32) -> u32 {
    2 * (32 - precision.leading_zeros()) + 8
}

/// The eigenvector uniformizer λ = (1-ζ)·t with `t^{p-1} = -p/(1-ζ)^{p-1}`,
/// `t ≡ 1 (mod 1-ζ)`.
pub fn construct_lambda(p: u64, precision: u32) -> Result<CycloElement> {
    if p < 5 || !crate::arith::padic::is_prime(p) {
        return Err(Error::Domain(format!("λ construction needs a prime p >= 5, got {p}")));
    }
    if precision < 2 {
        return Err(Error::Domain("λ construction needs precision >= 2".into()));
    }
    let target = p_over_uniformizer_power(p, precision).neg();
    let one = CycloElement::one(p, precision);
    let p_minus_1 = CycloElement::from_int(p, precision, p - 1);
    let mut t = one.clone();
    for _ in 0..newton_cap(precision) {
        let t_pow = t.pow(p - 2);
        let residual = t_pow.mul(&t).sub(&target);
        if residual.is_zero() {
            let uniformizer = one.sub(&CycloElement::zeta_power(p, precision, 1));
            return Ok(uniformizer.mul(&t));
        }
        let derivative = p_minus_1.mul(&t_pow);
        t = t.sub(&residual.mul(&derivative.inverse()?));
    }
    Err(Error::Internal(format!(
        "Newton iteration for λ did not converge within {} steps",
        newton_cap(precision)
    )))
}

/// Coordinates of `elem` in the basis `1, λ, ..., λ^{p-2}`.
pub fn lambda_basis_coordinates(elem: &CycloElement, lambda: &CycloElement) -> Result<Vec<PadicInt>> {
    let p = elem.prime;
    let n = elem.precision.min(lambda.precision);
    let d = (p - 1) as usize;
    let mut powers = Vec::with_capacity(d);
    let mut cur = CycloElement::one(p, n);
    for _ in 0..d {
        powers.push(cur.clone());
        cur = cur.mul(lambda);
    }
    let matrix: Vec<Vec<BigInt>> = (0..d)
        .map(|row| (0..d).map(|col| powers[col].coeffs[row].clone()).collect())
        .collect();
    let x = solve_mod_prime_power(&matrix, &elem.coeffs, p, n)?;
    Ok(x.into_iter().map(|c| PadicInt::new(p, n, c)).collect())
}

/// `Σ c_i λ^i`.
pub fn from_lambda_coordinates(coords: &[PadicInt], lambda: &CycloElement) -> CycloElement {
    let p = lambda.prime;
    let mut acc = CycloElement::zero(p, lambda.precision);
    let mut cur = CycloElement::one(p, lambda.precision);
    for c in coords {
        acc = acc.add(&cur.scalar_mul(c));
        cur = cur.mul(lambda);
    }
    acc
}

/// Outcome of checking the three defining relations of λ.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LambdaCertificate {
    pub prime: u64,
    pub precision: u32,
    /// `λ^{p-1} + p == 0` at full precision.
    pub power_relation: bool,
    /// Observed (1-ζ)-adic valuation of `λ - (1-ζ)` (at least 2 required).
    pub congruence_valuation: u32,
    /// `a` values for which `σ_a(λ) = ω(a)·λ` failed.
    pub eigen_failures: Vec<u64>,
    /// `λ - (1 - ζ)` symmetric coefficients mod p, for the report.
    pub lambda_mod_p: Vec<i64>,
}

impl LambdaCertificate {
    pub fn passed(&self) -> bool {
        self.power_relation && self.congruence_valuation >= 2 && self.eigen_failures.is_empty()
    }
}

/// Builds λ and verifies every defining relation by independent arithmetic.
pub fn certify_lambda(p: u64, precision: u32) -> Result<LambdaCertificate> {
    let lambda = construct_lambda(p, precision)?;
    let minus_p = CycloElement::from_int(p, precision, -BigInt::from(p));
    let power_relation = lambda.pow(p - 1) == minus_p;
    let uniformizer = CycloElement::one(p, precision).sub(&CycloElement::zeta_power(p, precision, 1));
    let congruence_valuation = lambda.sub(&uniformizer).one_minus_zeta_valuation(2)?;
    let mut eigen_failures = Vec::new();
    for a in 1..p {
        let conj = lambda.sigma(a as i64)?;
        let scaled = lambda.scalar_mul(&teichmuller(p, a as i64, precision)?);
        if conj != scaled {
            eigen_failures.push(a);
        }
    }
    let pb = BigInt::from(p);
    let lambda_mod_p = lambda
        .coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            let r = if &r * 2 > pb { r - &pb } else { r };
            i64::try_from(r).expect("small")
        })
        .collect();
    Ok(LambdaCertificate {
        prime: p,
        precision,
        power_relation,
        congruence_valuation,
        eigen_failures,
        lambda_mod_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        let z = CycloElement::zeta_power(5, 10, 1);
        assert_eq!(z.sigma(1).unwrap(), z);
        assert_eq!(z.sigma(2).unwrap(), CycloElement::zeta_power(5, 10, 2));
        assert_eq!(z.sigma(3).unwrap().sigma(2).unwrap(), z);
        assert!(z.sigma(10).is_err());
    }

    #[test]
    fn sigma_is_multiplicative_and_composes() {
        let a = CycloElement::from_coeffs(7, 6, [3, -1, 4, 1, -5, 9].map(BigInt::from).to_vec());
        let b = CycloElement::from_coeffs(7, 6, [2, 7, 1, -8, 2, 8].map(BigInt::from).to_vec());
        for s in 1..7 {
            assert_eq!(
                a.mul(&b).sigma(s).unwrap(),
                a.sigma(s).unwrap().mul(&b.sigma(s).unwrap())
            );
            for r in 1..7 {
                assert_eq!(a.sigma(r).unwrap().sigma(s).unwrap(), a.sigma(r * s).unwrap());
            }
        }
    }

    #[test]
    fn zeta_has_order_p() {
        let z = CycloElement::zeta_power(7, 5, 1);
        assert_eq!(z.pow(7), CycloElement::one(7, 5));
        assert_ne!(z.pow(1), CycloElement::one(7, 5));
    }

    #[test]
    fn norm_of_one_minus_zeta_is_p() {
        for p in [5u64, 7, 11, 13] {
            let u = CycloElement::one(p, 8).sub(&CycloElement::zeta_power(p, 8, 1));
            assert_eq!(u.norm_exact(), BigInt::from(p));
        }
    }

    #[test]
    fn p_equals_uniformizer_power_times_unit() {
        for p in [5u64, 7, 11] {
            let u = CycloElement::one(p, 12).sub(&CycloElement::zeta_power(p, 12, 1));
            let unit = p_over_uniformizer_power(p, 12);
            assert_eq!(u.pow(p - 1).mul(&unit), CycloElement::from_int(p, 12, p));
            assert!(unit.at_one().is_unit());
        }
    }

    #[test]
    fn lambda_relations_p5() {
        let lambda = construct_lambda(5, 10).unwrap();
        assert!(lambda.pow(4).add(&CycloElement::from_int(5, 10, 5)).is_zero());
        let u = CycloElement::one(5, 10).sub(&CycloElement::zeta_power(5, 10, 1));
        assert!(lambda.sub(&u).one_minus_zeta_valuation(2).unwrap() >= 2);
        // λ itself is exactly divisible once.
        assert_eq!(lambda.one_minus_zeta_valuation(3).unwrap(), 1);
    }

    #[test]
    fn lambda_eigenvector_p7() {
        let lambda = construct_lambda(7, 10).unwrap();
        let lhs = lambda.sigma(3).unwrap();
        let rhs = lambda.scalar_mul(&teichmuller(7, 3, 10).unwrap());
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn lambda_powers_are_eigenvectors() {
        let p = 7;
        let lambda = construct_lambda(p, 12).unwrap();
        for i in 0..(p - 1) {
            let li = lambda.pow(i);
            for a in 1..p as i64 {
                let w = teichmuller(p, a, 12).unwrap().pow(i);
                assert_eq!(li.sigma(a).unwrap(), li.scalar_mul(&w));
            }
        }
    }

    #[test]
    fn coordinates() {
        let p = 5;
        let lambda = construct_lambda(p, 10).unwrap();
        let one = CycloElement::one(p, 10);
        let c = lambda_basis_coordinates(&one, &lambda).unwrap();
        assert!(c[0].value().is_one() && c[1..].iter().all(|x| x.is_zero()));
        let c = lambda_basis_coordinates(&lambda.pow(3), &lambda).unwrap();
        assert!(c
            .iter()
            .enumerate()
            .all(|(i, x)| if i == 3 { x.value().is_one() } else { x.is_zero() }));
        let five = CycloElement::from_int(p, 10, 5);
        let c = lambda_basis_coordinates(&five, &lambda).unwrap();
        assert_eq!(c[0].value(), &BigInt::from(5));
        assert!(c[1..].iter().all(|x| x.is_zero()));
        assert!(five.add(&lambda.pow(4)).is_zero());
    }

    #[test]
    fn precision_refusal() {
        let u = CycloElement::one(5, 5).sub(&CycloElement::zeta_power(5, 5, 1));
        assert_eq!(u.div_one_minus_zeta().unwrap(), CycloElement::one(5, 4));
        let once = u.mul(&u).div_one_minus_zeta().unwrap();
        assert_eq!(once.precision(), 4);
        assert!(matches!(once.div_one_minus_zeta(), Err(Error::PrecisionExhausted(_))));
        assert!(matches!(
            CycloElement::one(5, 8).div_one_minus_zeta(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn certificate_passes() {
        let cert = certify_lambda(11, 20).unwrap();
        assert!(cert.passed(), "{cert:?}");
    }
}
