//! Real root counting with Sturm chains.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{IntPolynomial, RatPoly};
use crate::error::{Error, Result};

/// Sturm chain of the squarefree part of `f`.
pub fn sturm_chain(f: &IntPolynomial) -> Result<Vec<RatPoly>> {
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial has no Sturm chain".into()));
    }
    let fr = f.to_rat();
    let g = fr.gcd(&fr.derivative());
    let sq = fr.div_rem(&g)?.0;
    let mut chain = vec![sq.clone(), sq.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-BigRational::from_integer(1.into())));
    }
    Ok(chain)
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_at_infinity(p: &RatPoly, negative: bool) -> i8 {
    let lc = p.leading_coefficient();
    let mut s: i8 = if lc.is_positive() {
        1
    } else if lc.is_zero() {
        0
    } else {
        -1
    };
    if negative && p.degree().unwrap_or(0) % 2 == 1 {
        s = -s;
    }
    s
}

fn sign_at(p: &RatPoly, x: &BigRational) -> i8 {
    let v = p.eval(x);
    if v.is_positive() {
        1
    } else if v.is_zero() {
        0
    } else {
        -1
    }
}

/// Number of distinct real roots of `f`.
pub fn sturm_real_root_count(f: &IntPolynomial) -> Result<usize> {
    let chain = sturm_chain(f)?;
    let at_neg = variations(chain.iter().map(|p| sign_at_infinity(p, true)));
    let at_pos = variations(chain.iter().map(|p| sign_at_infinity(p, false)));
    Ok(at_neg - at_pos)
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_count_in(f: &IntPolynomial, a: &BigRational, b: &BigRational) -> Result<usize> {
    let chain = sturm_chain(f)?;
    let va = variations(chain.iter().map(|p| sign_at(p, a)));
    let vb = variations(chain.iter().map(|p| sign_at(p, b)));
    Ok(va.saturating_sub(vb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str) -> usize {
        sturm_real_root_count(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(count("x^2-5"), 2);
        assert_eq!(count("x^2+1"), 0);
        assert_eq!(count("x^3+x^2-2*x-1"), 3);
    }

    #[test]
    fn repeated_roots_counted_once() {
        assert_eq!(count("x^4-2*x^2+1"), 2);
        assert_eq!(count("x^3"), 1);
        assert_eq!(count("7"), 0);
        assert!(sturm_real_root_count(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn interval_counts() {
        let f: IntPolynomial = "x^3+x^2-2*x-1".parse().unwrap();
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(sturm_count_in(&f, &r(0), &r(2)).unwrap(), 1);
        assert_eq!(sturm_count_in(&f, &r(-2), &r(0)).unwrap(), 2);
    }
}
