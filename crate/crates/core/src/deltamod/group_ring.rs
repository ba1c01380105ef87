//! The rational group ring `QΔ` of `Δ = (Z/p)^×`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::padic::{
    inv_mod_u64, is_prime, prime_power, primitive_root, teichmuller, valuation_of_int, PadicInt,
};
use crate::error::{Error, Result};

/// `Σ c_a σ_a`, coefficient of `σ_a` stored at index `a - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    prime: u64,
    coeffs: Vec<BigRational>,
}

impl GroupRingElement {
    pub fn zero(prime: u64) -> Result<Self> {
        if prime < 3 || !is_prime(prime) {
            return Err(Error::Domain(format!("{prime} is not an odd prime")));
        }
        Ok(GroupRingElement {
            prime,
            coeffs: vec![BigRational::zero(); (prime - 1) as usize],
        })
    }

    /// `c·σ_a`.
    pub fn sigma_scaled(prime: u64, a: i64, c: BigRational) -> Result<Self> {
        let mut out = Self::zero(prime)?;
        let a = a.rem_euclid(prime as i64) as usize;
        if a == 0 {
            return Err(Error::Domain(format!("{prime} divides the group index")));
        }
        out.coeffs[a - 1] = c;
        Ok(out)
    }

    /// `Σ c_a σ_a` from integer coefficients, `c_a` at index `a - 1`.
    pub fn from_integers(prime: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        let zero = Self::zero(prime)?;
        if coeffs.len() != zero.coeffs.len() {
            return Err(Error::Domain(format!("expected {} coefficients", zero.coeffs.len())));
        }
        Ok(GroupRingElement {
            prime,
            coeffs: coeffs.into_iter().map(BigRational::from_integer).collect(),
        })
    }

    pub fn sigma(prime: u64, a: i64) -> Result<Self> {
        Self::sigma_scaled(prime, a, BigRational::one())
    }

    pub fn from_int(prime: u64, n: i64) -> Result<Self> {
        Self::sigma_scaled(prime, 1, BigRational::from_integer(n.into()))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Coefficient of `σ_a`.
    pub fn coeff(&self, a: u64) -> &BigRational {
        &self.coeffs[(a % self.prime) as usize - 1]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        GroupRingElement {
            prime: self.prime,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GroupRingElement {
            prime: self.prime,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        GroupRingElement {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Convolution via `σ_a σ_b = σ_{ab}`.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.prime, o.prime);
        let p = self.prime as usize;
        let mut out = vec![BigRational::zero(); p - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let ab = ((i + 1) * (j + 1)) % p;
                out[ab - 1] += x * y;
            }
        }
        GroupRingElement {
            prime: self.prime,
            coeffs: out,
        }
    }

    pub fn augmentation(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// `Σ c_a ω(a)^j` as `(v_p, value / p^{v_p})` at precision `n`; `None`
    /// when the value vanishes to that precision.
    pub fn character_value(&self, j: i64, n: u32) -> Result<Option<(i64, PadicInt)>> {
        let p = self.prime;
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let s = valuation_of_int(p, &den).expect("nonzero") as i64;
        let work = n + s as u32 + 1;
        let exp = j.rem_euclid(p as i64 - 1) as u64;
        // ω^j(g^k) = (ω(g)^j)^k, so one lift covers the whole table.
        let g = primitive_root(p);
        let base = teichmuller(p, g as i64, work)?.pow(exp);
        let mut table = vec![PadicInt::zero(p, work); p as usize - 1];
        let (mut a, mut w) = (1u64, PadicInt::one(p, work));
        for _ in 0..p - 1 {
            table[a as usize - 1] = w.clone();
            a = a * g % p;
            w = &w * &base;
        }
        let mut sum = PadicInt::zero(p, work);
        for (c, w) in self.coeffs.iter().zip(&table) {
            if c.is_zero() {
                continue;
            }
            let scaled = PadicInt::new(p, work, (c * BigRational::from_integer(den.clone())).to_integer());
            sum = &sum + &(&scaled * w);
        }
        let Some(v) = sum.valuation() else { return Ok(None) };
        let mut unit = PadicInt::new(p, work - v, sum.value() / prime_power(p, v));
        let den_unit = &den / prime_power(p, s as u32);
        unit = &unit * &PadicInt::new(p, work - v, den_unit).inverse()?;
        Ok(Some((v as i64 - s, unit.with_precision(n.min(work - v)))))
    }

    /// p-adic valuation of `ω^j(self)`, `None` if it vanishes to precision `n`.
    pub fn character_valuation(&self, j: i64, n: u32) -> Result<Option<i64>> {
        Ok(self.character_value(j, n)?.map(|(v, _)| v))
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*s{}", i + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `σ_a^{-1} = σ_{a^{-1} mod p}`.
pub(crate) fn inverse_index(p: u64, a: u64) -> u64 {
    inv_mod_u64(a % p, p).expect("unit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_is_group_law() {
        let s2 = GroupRingElement::sigma(7, 2).unwrap();
        let s4 = GroupRingElement::sigma(7, 4).unwrap();
        assert_eq!(s2.mul(&s4), GroupRingElement::sigma(7, 1).unwrap());
        assert_eq!(s4.mul(&s4), s2);
        assert_eq!(inverse_index(7, 3), 5);
    }

    #[test]
    fn character_values() {
        // ω(σ_a - a) ≡ 0 mod p, with positive valuation.
        let p = 11;
        let e = GroupRingElement::sigma(p, 3)
            .unwrap()
            .sub(&GroupRingElement::from_int(p, 3).unwrap());
        assert!(e.character_valuation(1, 10).unwrap().unwrap() >= 1);
        let third = GroupRingElement::from_int(p, 1)
            .unwrap()
            .scale(&BigRational::new(1.into(), 11.into()));
        assert_eq!(third.character_valuation(1, 10).unwrap(), Some(-1));
        assert_eq!(
            GroupRingElement::zero(p).unwrap().character_valuation(1, 10).unwrap(),
            None
        );
    }
}
