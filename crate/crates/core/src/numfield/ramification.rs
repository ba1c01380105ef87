use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::field::NumberFieldDescription;
use crate::arith::modpoly::{factor_mod_p, ModPoly};
use crate::arith::padic::is_prime;
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};

/// How the splitting data of `p` was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Provenance {
    /// `f(x + shift)` is Eisenstein at `p`.
    Eisenstein {
        shift: u64,
    },
    /// `p` does not divide the index of `Z[x]/(f)`, read off `f mod p`.
    Dedekind,
    UserSupplied,
}

/// `(e_i, f_i)` for the primes above `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationDatum {
    pub primes: Vec<(u32, u32)>,
    pub provenance: Provenance,
}

impl RamificationDatum {
    pub fn total(&self) -> u64 {
        self.primes.iter().map(|&(e, f)| e as u64 * f as u64).sum()
    }

    pub fn max_e(&self) -> u32 {
        self.primes.iter().map(|&(e, _)| e).max().unwrap_or(0)
    }

    /// The prime with maximal `e`, smallest `f` among those.
    pub fn chosen_prime(&self) -> Option<(u32, u32)> {
        self.primes
            .iter()
            .copied()
            .max_by_key(|&(e, f)| (e, std::cmp::Reverse(f)))
    }

    /// Checks `Σ e_i f_i = n`.
    pub fn validate(&self, degree: usize) -> Result<()> {
        if self.primes.is_empty() || self.primes.iter().any(|&(e, f)| e == 0 || f == 0) {
            return Err(Error::InvalidInput(
                "ramification data needs positive (e, f) pairs".into(),
            ));
        }
        if self.total() != degree as u64 {
            return Err(Error::InvalidInput(format!(
                "ramification data sums to {} but the field has degree {degree}",
                self.total()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RamificationDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|(e, r)| format!("{e},{r}")).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for RamificationDatum {
    type Err = Error;

    /// `"e1,f1;e2,f2"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut primes = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (e, f) = part
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected e,f in {part:?}")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad integer {x:?} in ramification data")))
            };
            primes.push((num(e)?, num(f)?));
        }
        if primes.is_empty() {
            return Err(Error::Parse("empty ramification data".into()));
        }
        Ok(RamificationDatum {
            primes,
            provenance: Provenance::UserSupplied,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RamificationOutcome {
    Determined(RamificationDatum),
    Undetermined { reason: String },
}

fn is_eisenstein(f: &IntPolynomial, p: u64) -> bool {
    let pb = BigInt::from(p);
    let n = f.degree().unwrap_or(0);
    if n == 0 || !f.is_monic() {
        return false;
    }
    let c = f.coeffs();
    c[..n].iter().all(|a| a.is_multiple_of(&pb)) && !c[0].is_multiple_of(&(&pb * &pb))
}

/// Splitting type of `p` by an Eisenstein shift or the Dedekind criterion.
pub fn ramification_data(field: &NumberFieldDescription, p: u64) -> Result<RamificationOutcome> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let f = field.poly();
    let n = field.degree() as u32;
    for c in 0..p {
        if is_eisenstein(&f.shift(&BigInt::from(c)), p) {
            return Ok(RamificationOutcome::Determined(RamificationDatum {
                primes: vec![(n, 1)],
                provenance: Provenance::Eisenstein { shift: c },
            }));
        }
    }
    let factors = factor_mod_p(f, p)?;
    let lifted: IntPolynomial = factors
        .iter()
        .fold(IntPolynomial::one(), |acc, (g, e)| &acc * &g.to_int().pow(*e));
    let diff = f - &lifted;
    let pb = BigInt::from(p);
    debug_assert!(diff.coeffs().iter().all(|c| c.is_multiple_of(&pb)));
    let big_f = IntPolynomial::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let big_f_bar = ModPoly::from_int(&big_f, p);
    for (g, e) in &factors {
        if *e >= 2 && big_f_bar.rem(g).is_zero() {
            return Ok(RamificationOutcome::Undetermined {
                reason: format!("p = {p} may divide the index of Z[x]/(f); supply the splitting data"),
            });
        }
    }
    let primes = factors
        .iter()
        .map(|(g, e)| (*e, g.degree().expect("nonconstant") as u32))
        .collect();
    let datum = RamificationDatum {
        primes,
        provenance: Provenance::Dedekind,
    };
    datum.validate(field.degree())?;
    Ok(RamificationOutcome::Determined(datum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ram(s: &str, p: u64) -> RamificationOutcome {
        ramification_data(&NumberFieldDescription::parse(s).unwrap(), p).unwrap()
    }

    fn primes(o: RamificationOutcome) -> Vec<(u32, u32)> {
        match o {
            RamificationOutcome::Determined(d) => d.primes,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn examples() {
        assert_eq!(primes(ram("x^2-5", 5)), vec![(2, 1)]);
        let o = ram("x^3+x^2-2*x-1", 7);
        assert_eq!(
            o,
            RamificationOutcome::Determined(RamificationDatum {
                primes: vec![(3, 1)],
                provenance: Provenance::Eisenstein { shift: 2 }
            })
        );
        assert_eq!(primes(ram("x^2-2", 5)), vec![(1, 2)]);
        assert_eq!(primes(ram("x^2-2", 7)), vec![(1, 1), (1, 1)]);
        assert_eq!(primes(ram("x^2-7", 7)), vec![(2, 1)]);
    }

    #[test]
    fn dedekind_ramified() {
        // x^2 + x + 1 at 3: f(x+1) = x^2 + 3x + 3 is Eisenstein.
        assert_eq!(primes(ram("x^2+x+1", 3)), vec![(2, 1)]);
        // Index divisible by 2 for Z[√5]: undetermined.
        assert!(matches!(ram("x^2-5", 2), RamificationOutcome::Undetermined { .. }));
    }

    #[test]
    fn rejects_composite() {
        assert!(ramification_data(&NumberFieldDescription::parse("x^2-5").unwrap(), 15).is_err());
    }

    #[test]
    fn parse_override() {
        let d: RamificationDatum = "3,1; 1,2".parse().unwrap();
        assert_eq!(d.primes, vec![(3, 1), (1, 2)]);
        assert!(d.validate(5).is_ok());
        assert!(d.validate(4).is_err());
        assert!("3;1".parse::<RamificationDatum>().is_err());
        assert_eq!(d.to_string(), "3,1;1,2");
    }
}
