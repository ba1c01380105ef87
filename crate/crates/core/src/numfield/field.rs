use std::fmt;

use serde::Serialize;

use crate::arith::factor::factor_over_q;
use crate::arith::poly::{discriminant, IntPolynomial};
use crate::arith::sturm::sturm_real_root_count;
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// A number field `Q[x]/(f)` with `f` monic, integral and irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldDescription {
    poly: IntPolynomial,
}

impl NumberFieldDescription {
    pub fn new(poly: IntPolynomial) -> Result<Self> {
        let Some(n) = poly.degree() else {
            return Err(Error::InvalidInput("defining polynomial is zero".into()));
        };
        if n == 0 {
            return Err(Error::InvalidInput("defining polynomial is constant".into()));
        }
        if !poly.is_monic() {
            return Err(Error::InvalidInput(format!("{poly} is not monic")));
        }
        if !factor_over_q(&poly)?.is_irreducible() {
            return Err(Error::InvalidInput(format!("{poly} is reducible over Q")));
        }
        Ok(NumberFieldDescription { poly })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero")
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.poly)
    }
}

impl fmt::Display for NumberFieldDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl Serialize for NumberFieldDescription {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.poly.to_string())
    }
}

/// All roots of `f` are real.
pub fn is_totally_real(field: &NumberFieldDescription) -> Result<bool> {
    Ok(sturm_real_root_count(field.poly())? == field.degree())
}
