//! Dense univariate polynomials over Z and Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with exact integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`.
    pub fn linear(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut v = vec![BigInt::zero(); degree + 1];
        v[degree] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, carrying the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading_coefficient().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: &BigInt) -> Self {
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        self.compose(&lin)
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &IntPolynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// Exact quotient over Z, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<Self> {
        let (q, r) = self.to_rat().div_rem(&d.to_rat()).ok()?;
        if !r.is_zero() {
            return None;
        }
        q.to_int_exact()
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Residues of the coefficients in `[0, p)`.
    pub fn residues_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| u64::try_from(c.mod_floor(&pb)).expect("residue fits"))
            .collect()
    }

    /// Euclidean norm squared of the coefficient vector.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.to_rat().gcd(&self.derivative().to_rat()).degree() == Some(0),
        }
    }

    /// Parses a polynomial in `var` with integer coefficients and `+ - * ^`.
    pub fn parse_in(s: &str, var: char) -> Result<Self> {
        parse_poly(s, var)
    }

    /// Canonical text with `var` as the indeterminate.
    pub fn to_string_in(&self, var: char) -> String {
        format_poly(&self.coeffs, var)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in('x'))
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s, 'x')
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn format_poly(coeffs: &[BigInt], var: char) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        match deg {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push(var);
                if deg > 1 {
                    out.push('^');
                    out.push_str(&deg.to_string());
                }
            }
        }
    }
    out
}

fn parse_poly(s: &str, var: char) -> Result<IntPolynomial> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let text = text.replace('\u{2212}', "-");
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {i} in {s:?}")));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start {
            let digits: String = bytes[start..i].iter().collect();
            BigInt::from_str(&digits).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            BigInt::one()
        };
        let had_coeff = i > start;
        let mut degree = 0usize;
        if i < bytes.len() && bytes[i] == '*' {
            if !had_coeff {
                return Err(Error::Parse(format!("dangling '*' in {s:?}")));
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != var {
                return Err(Error::Parse(format!("expected '{var}' after '*' in {s:?}")));
            }
        }
        if i < bytes.len() && bytes[i] == var {
            i += 1;
            degree = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Parse(format!("missing exponent in {s:?}")));
                }
                let digits: String = bytes[ds..i].iter().collect();
                degree = digits
                    .parse()
                    .map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
                if degree > 4096 {
                    return Err(Error::Parse(format!("exponent {degree} too large")));
                }
            }
        } else if !had_coeff {
            return Err(Error::Parse(format!("unexpected character at offset {i} in {s:?}")));
        }
        terms.push((sign * coeff, degree));
    }
    let max_deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); max_deg + 1];
    for (c, d) in terms {
        coeffs[d] += c;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Dense polynomial over Q, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coefficient();
        Self::new(self.coeffs.iter().map(|a| a / &lc).collect())
    }

    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lc = d.leading_coefficient();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((RatPoly::new(q), RatPoly::new(r)))
    }

    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators and returns the primitive integer polynomial.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_int_exact(&self) -> Option<IntPolynomial> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPolynomial::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    pub fn compose(&self, g: &RatPoly) -> RatPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, c| &(&acc * g) + &RatPoly::constant(c.clone()))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

/// Resultant of two polynomials over Q via the Euclidean remainder sequence.
pub fn resultant(a: &RatPoly, b: &RatPoly) -> BigRational {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    if db == 0 {
        return num_traits::pow(b.leading_coefficient(), da);
    }
    if da == 0 {
        return num_traits::pow(a.leading_coefficient(), db);
    }
    if da < db {
        let sign = if (da * db) % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        return sign * resultant(b, a);
    }
    let r = a.rem(b).expect("nonzero divisor");
    let Some(dr) = r.degree() else {
        return BigRational::zero();
    };
    let sign = if (da * db) % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    sign * num_traits::pow(b.leading_coefficient(), da - dr) * resultant(b, &r)
}

/// Discriminant of an integer polynomial of degree at least one.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let res = resultant(&f.to_rat(), &f.derivative().to_rat());
    let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let d = res / BigRational::from_integer(f.leading_coefficient());
    debug_assert!(d.is_integer());
    sign * d.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_canonical_form() {
        assert_eq!(p("x^3+x^2-2*x-1"), IntPolynomial::from_i64s(&[-1, -2, 1, 1]));
        assert_eq!(p("x^3+x^2-2*x-1").to_string(), "x^3+x^2-2*x-1");
        assert_eq!(p(" -1 + x^2 ").to_string(), "x^2-1");
        assert_eq!(p("2x^2 - 3x + x^2").to_string(), "3*x^2-3*x");
        assert_eq!(p("x - x").to_string(), "0");
        assert_eq!(p("-x^4+7").to_string(), "-x^4+7");
        assert!("x^".parse::<IntPolynomial>().is_err());
        assert!("x+*3".parse::<IntPolynomial>().is_err());
        assert!("y+1".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert_eq!(
            IntPolynomial::parse_in("3+t", 't').unwrap(),
            IntPolynomial::from_i64s(&[3, 1])
        );
    }

    #[test]
    fn shift_gives_eisenstein_form() {
        let f = p("x^3+x^2-2*x-1");
        assert_eq!(f.shift(&BigInt::from(-5)).to_string(), "x^3-14*x^2+63*x-91");
    }

    #[test]
    fn exact_division_and_content() {
        let f = p("x^4-1");
        assert_eq!(f.div_exact(&p("x^2+1")).unwrap().to_string(), "x^2-1");
        assert!(f.div_exact(&p("x+2")).is_none());
        assert_eq!(p("-6*x^2+4").content(), BigInt::from(-2));
        assert_eq!(p("-6*x^2+4").primitive_part().to_string(), "3*x^2-2");
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p("x^2-5")), BigInt::from(20));
        assert_eq!(discriminant(&p("x^2-2")), BigInt::from(8));
        assert_eq!(discriminant(&p("x^3+x^2-2*x-1")), BigInt::from(49));
    }

    #[test]
    fn resultant_norm_of_one_minus_zeta() {
        let phi5 = p("x^4+x^3+x^2+x+1").to_rat();
        let one_minus_x = p("1-x").to_rat();
        assert_eq!(resultant(&phi5, &one_minus_x), BigRational::from_integer(5.into()));
    }
}
