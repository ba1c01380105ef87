use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numfield::RamificationDatum;

pub const DEFAULT_PRECISION: u32 = 40;
pub const MIN_PRECISION: u32 = 8;
pub const DEFAULT_F_BOUND: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckerConfig {
    /// p-adic working precision.
    pub precision: u32,
    /// Largest `f` in the `Z/p^f` eigenspace sweep.
    pub f_bound: u32,
    /// Unit parameters `u ∈ k[t]/(t^m)`, as coefficient lists of `1, t, t^2, ...`.
    pub unit_params: Vec<Vec<i64>>,
    pub ramification: Option<RamificationDatum>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub verbose: bool,
}

impl Default for CheckerConfig {
    fn default() -> Self {
        CheckerConfig {
            precision: DEFAULT_PRECISION,
            f_bound: DEFAULT_F_BOUND,
            unit_params: vec![vec![1], vec![2], vec![3, 1]],
            ramification: None,
            output: None,
            verbose: false,
        }
    }
}

impl CheckerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision < MIN_PRECISION {
            return Err(Error::InvalidInput(format!(
                "precision must be at least {MIN_PRECISION}"
            )));
        }
        if self.f_bound == 0 {
            return Err(Error::InvalidInput("f-bound must be at least 1".into()));
        }
        if self.unit_params.is_empty() {
            return Err(Error::InvalidInput("at least one unit parameter is required".into()));
        }
        Ok(())
    }

    /// Each unit parameter must have constant term prime to `p`.
    pub fn validate_units(&self, p: u64) -> Result<()> {
        match self
            .unit_params
            .iter()
            .find(|u| u.first().map_or(0, |c| c.rem_euclid(p as i64)) == 0)
        {
            Some(u) => Err(Error::InvalidInput(format!(
                "unit parameter {u:?} is not a unit mod {p}"
            ))),
            None => Ok(()),
        }
    }
}

/// Parses `"1;2;3+t"` into coefficient lists.
pub fn parse_unit_params(s: &str) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let poly = crate::arith::IntPolynomial::parse_in(part, 't')?;
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).map_err(|_| Error::Parse(format!("unit parameter {part:?} too large"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(if coeffs.is_empty() { vec![0] } else { coeffs });
    }
    if out.is_empty() {
        return Err(Error::Parse("empty unit parameter list".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_params() {
        assert_eq!(
            parse_unit_params("1;2;3+t").unwrap(),
            vec![vec![1], vec![2], vec![3, 1]]
        );
        assert_eq!(parse_unit_params(" 2*t^2+1 ").unwrap(), vec![vec![1, 0, 2]]);
        assert!(parse_unit_params("").is_err());
        assert!(parse_unit_params("1;x").is_err());
    }

    #[test]
    fn unit_validation_depends_on_p() {
        let c = CheckerConfig {
            unit_params: vec![vec![1], vec![7, 1]],
            ..Default::default()
        };
        assert!(c.validate_units(5).is_ok());
        assert!(c.validate_units(7).is_err());
        assert!(CheckerConfig::default().validate_units(5).is_ok());
    }

    #[test]
    fn validation() {
        assert!(CheckerConfig::default().validate().is_ok());
        let c = CheckerConfig {
            precision: 7,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
