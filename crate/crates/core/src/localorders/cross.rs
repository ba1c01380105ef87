//! Bridge from integral formal elements to the numeric λ-basis in
//! `Z_p[ζ_p]`, used to cross-check the formal reduction rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use super::formal::{formal_mul, FormalElement, LocalContext};
use crate::arith::padic::PadicInt;
use crate::cyclo::{from_lambda_coordinates, lambda_basis_coordinates, CycloElement};
use crate::error::{Error, Result};

/// `Σ r_d λ^d` evaluated numerically; every coefficient must be a p-integral
/// rational with no π-part.
pub fn to_numeric(elem: &FormalElement, lambda: &CycloElement) -> Result<CycloElement> {
    let p = elem.context().prime;
    let n = lambda.precision();
    let mut coords = Vec::with_capacity(elem.context().rank());
    for c in elem.coefficients() {
        let mut acc = PadicInt::zero(p, n);
        for (k, r) in c.terms() {
            if k != 0 {
                return Err(Error::Domain("π-monomials have no numeric image in Z_p[ζ_p]".into()));
            }
            acc = &acc + &PadicInt::from_rational(p, n, r)?;
        }
        coords.push(acc);
    }
    Ok(from_lambda_coordinates(&coords, lambda))
}

/// Random element with integer coefficients in `[-bound, bound]`.
pub fn random_integral_element(ctx: LocalContext, bound: i64, rng: &mut impl Rng) -> FormalElement {
    let mut out = FormalElement::zero(ctx);
    for d in 0..ctx.rank() {
        let r = BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)));
        out = out
            .add(&FormalElement::term(ctx, d as u64, r, 0))
            .expect("same context");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub left: String,
    pub right: String,
    /// Numeric product equals the image of the formal product.
    pub products_agree: bool,
    /// λ-coordinates of the numeric product equal the formal coefficients.
    pub coordinates_agree: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.products_agree && self.coordinates_agree
    }
}

pub fn cross_check_product(a: &FormalElement, b: &FormalElement, lambda: &CycloElement) -> Result<CrossCheck> {
    let formal = formal_mul(a, b)?;
    let numeric = to_numeric(a, lambda)?.mul(&to_numeric(b, lambda)?);
    let products_agree = numeric == to_numeric(&formal, lambda)?;
    let coords = lambda_basis_coordinates(&numeric, lambda)?;
    let p = a.context().prime;
    let n = lambda.precision();
    let mut coordinates_agree = true;
    for (d, c) in formal.coefficients().iter().enumerate() {
        let mut want = PadicInt::zero(p, n);
        for (_, r) in c.terms() {
            want = &want + &PadicInt::from_rational(p, n, r)?;
        }
        coordinates_agree &= coords[d] == want;
    }
    Ok(CrossCheck {
        left: a.to_string(),
        right: b.to_string(),
        products_agree,
        coordinates_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::construct_lambda;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_products_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [5u64, 7] {
            let ctx = LocalContext::new(p, 1, 1).unwrap();
            let lambda = construct_lambda(p, 30).unwrap();
            for _ in 0..10 {
                let a = random_integral_element(ctx, 50, &mut rng);
                let b = random_integral_element(ctx, 50, &mut rng);
                assert!(cross_check_product(&a, &b, &lambda).unwrap().passed());
            }
        }
    }

    #[test]
    fn wrap_around_matches() {
        let ctx = LocalContext::new(5, 1, 1).unwrap();
        let lambda = construct_lambda(5, 20).unwrap();
        let l3 = FormalElement::lambda_power(ctx, 3);
        let c = cross_check_product(&l3, &l3, &lambda).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn pi_terms_rejected() {
        let ctx = LocalContext::new(5, 2, 1).unwrap();
        let lambda = construct_lambda(5, 20).unwrap();
        let x = FormalElement::term(ctx, 3, BigRational::from_integer(1.into()), 1);
        assert!(to_numeric(&x, &lambda).is_err());
    }
}
