//! Multifactor Hensel lifting from `p` to `p^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::modpoly::ModPoly;
use super::padic::prime_power;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

pub(crate) fn reduce(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients mapped into `(-m/2, m/2]`.
pub(crate) fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m / BigInt::from(2);
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `g0 * h0 ≡ f (mod p)` (all monic) to monic `G * H ≡ f (mod p^n)`.
fn lift_pair(f: &IntPolynomial, g0: &ModPoly, h0: &ModPoly, p: u64, n: u32) -> Result<(IntPolynomial, IntPolynomial)> {
    let (gcd, _, t) = g0.xgcd(h0);
    if !gcd.is_one() {
        return Err(Error::RequiresSquarefreeSplit(format!(
            "factors {g0} and {h0} are not coprime"
        )));
    }
    let mut g = g0.to_int();
    let mut h = h0.to_int();
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    for _ in 1..n {
        let next = &pk * &pb;
        let err = reduce(&(f - &(&g * &h)), &next);
        let e_bar = ModPoly::new(
            p,
            err.coeffs()
                .iter()
                .map(|c| u64::try_from(c / &pk).expect("residue"))
                .collect(),
        );
        if !e_bar.is_zero() {
            let dg = t.mul(&e_bar).rem(g0);
            let (dh, r) = e_bar.sub(&dg.mul(h0)).div_rem(g0);
            debug_assert!(r.is_zero());
            g = reduce(&(&g + &dg.to_int().scale(&pk)), &next);
            h = reduce(&(&h + &dh.to_int().scale(&pk)), &next);
        }
        pk = next;
    }
    Ok((g, h))
}

/// Lifts monic pairwise coprime factors of `f mod p` to factors mod `p^n`
/// with `lc(f) * prod(lifts) ≡ f (mod p^n)`; the lifts are monic with
/// coefficients in `[0, p^n)`.
pub fn hensel_lift_factorization(f: &IntPolynomial, p: u64, factors: &[ModPoly], n: u32) -> Result<Vec<IntPolynomial>> {
    if n == 0 {
        return Err(Error::Domain("target precision must be positive".into()));
    }
    let lc = f.leading_coefficient();
    if (&lc % BigInt::from(p)).is_zero() {
        return Err(Error::Precondition(format!("{p} divides the leading coefficient")));
    }
    let f_mod = ModPoly::from_int(f, p);
    let product = factors.iter().fold(ModPoly::one(p), |acc, g| acc.mul(&g.monic()));
    if product != f_mod.monic() {
        return Err(Error::Precondition("factors do not multiply to f modulo p".into()));
    }
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::RequiresSquarefreeSplit(format!(
                    "factors {a} and {b} share a common factor"
                )));
            }
        }
    }
    let modulus = prime_power(p, n);
    let lc_inv = lc.extended_gcd(&modulus).x;
    let mut target = reduce(&f.scale(&lc_inv), &modulus);
    let mut out = Vec::with_capacity(factors.len());
    let monic: Vec<ModPoly> = factors.iter().map(|g| g.monic()).collect();
    for i in 0..monic.len() {
        if i + 1 == monic.len() {
            out.push(reduce(&target, &modulus));
            break;
        }
        let rest = monic[i + 1..].iter().fold(ModPoly::one(p), |acc, g| acc.mul(g));
        let (g, h) = lift_pair(&target, &monic[i], &rest, p, n)?;
        out.push(g);
        target = h;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn mp(s: &str, p: u64) -> ModPoly {
        ModPoly::from_int(&ip(s), p)
    }

    #[test]
    fn already_exact_lift() {
        let lifts = hensel_lift_factorization(&ip("x^2-1"), 5, &[mp("x-1", 5), mp("x+1", 5)], 3).unwrap();
        assert_eq!(lifts[0], ip("x+124"));
        assert_eq!(lifts[1], ip("x+1"));
    }

    #[test]
    fn square_root_of_two_mod_49() {
        let lifts = hensel_lift_factorization(&ip("x^2-2"), 7, &[mp("x-3", 7), mp("x+3", 7)], 2).unwrap();
        assert_eq!(lifts[0], ip("x+39")); // x - 10
        assert_eq!(lifts[1], ip("x+10"));
    }

    #[test]
    fn cube_roots_of_unity_mod_343() {
        let f = ip("x^2+x+1");
        let lifts = hensel_lift_factorization(&f, 7, &[mp("x-2", 7), mp("x-4", 7)], 3).unwrap();
        let m = BigInt::from(343);
        for l in &lifts {
            let root = (-l.coeff(0)).mod_floor(&m);
            assert_eq!((&root * &root * &root).mod_floor(&m), BigInt::from(1));
            assert_eq!(f.eval(&root).mod_floor(&m), BigInt::zero());
        }
        let prod = reduce(&(&lifts[0] * &lifts[1]), &m);
        assert_eq!(prod, f);
    }

    #[test]
    fn rejects_repeated_factor() {
        let err = hensel_lift_factorization(&ip("x^2"), 5, &[mp("x", 5), mp("x", 5)], 2).unwrap_err();
        assert!(matches!(err, Error::RequiresSquarefreeSplit(_)));
    }
}
