//! Deciding whether `Q[x]/(g)` embeds in `K = Q[y]/(f)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::field::NumberFieldDescription;
use crate::arith::factor::{factor_over_q, factor_over_q_bounded};
use crate::arith::modpoly::{factor_degree_pattern, ModPoly};
use crate::arith::padic::is_prime;
use crate::arith::poly::{discriminant, resultant, IntPolynomial, RatPoly};
use crate::error::{Error, Result};

/// Largest prime tried when searching for a modular certificate.
const MODULAR_SEARCH_BOUND: u64 = 2000;
/// Range of shifts `k` tried for a squarefree norm.
const SHIFT_BOUND: i64 = 10;
/// Degree bound for factoring the norm polynomial.
const NORM_FACTOR_BOUND: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoCertificate {
    /// `deg g` does not divide `deg f`.
    Degree {
        field_degree: usize,
        subfield_degree: usize,
    },
    /// Modulo `prime`, some residue degree of `f` is divisible by no residue degree of `g`.
    Modular {
        prime: u64,
        field_pattern: Vec<usize>,
        subfield_pattern: Vec<usize>,
    },
    /// No factor of degree `deg f` in `Res_y(f(y), g(x - k y))`.
    NormFactorization { shift: i64, factor_degrees: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Embedding {
    /// `g(h(x)) ≡ 0 (mod f)`, checked exactly.
    Yes {
        witness: String,
    },
    No {
        certificate: NoCertificate,
    },
    Undecided {
        reason: String,
    },
}

impl Embedding {
    pub fn is_yes(&self) -> bool {
        matches!(self, Embedding::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Embedding::No { .. })
    }
}

/// Minimal polynomial of `ζ_p + ζ_p^{-1}`: `1 + Σ_{k=1}^{(p-1)/2} D_k(x)` with
/// Dickson polynomials `D_k(z + 1/z) = z^k + z^{-k}`.
pub fn real_cyclotomic_polynomial(p: u64) -> Result<IntPolynomial> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let x = IntPolynomial::linear(BigInt::zero());
    let mut prev = IntPolynomial::constant(BigInt::from(2));
    let mut cur = x.clone();
    let mut sum = &IntPolynomial::one() + &cur;
    for _ in 2..=(p - 1) / 2 {
        let next = &(&x * &cur) - &prev;
        sum = &sum + &next;
        prev = cur;
        cur = next;
    }
    Ok(sum)
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Arithmetic in `K = Q[y]/(f)`.
struct FieldOps {
    modulus: RatPoly,
}

impl FieldOps {
    fn reduce(&self, a: &RatPoly) -> RatPoly {
        a.rem(&self.modulus).expect("nonzero modulus")
    }

    fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&(a * b))
    }

    /// Inverse by the extended Euclidean algorithm against `f`.
    fn inv(&self, a: &RatPoly) -> Result<RatPoly> {
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(a));
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::constant(q(1)));
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&quo * &s1);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        if r0.degree() != Some(0) {
            return Err(Error::NotInvertible("zero divisor in Q[y]/(f)".into()));
        }
        let c = r0.leading_coefficient();
        Ok(self.reduce(&s0.scale(&(BigRational::one() / c))))
    }

    fn trim(p: &mut Vec<RatPoly>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    /// Remainder of `a` by `b` in `K[X]`.
    fn poly_rem(&self, a: &[RatPoly], b: &[RatPoly]) -> Result<Vec<RatPoly>> {
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let db = b.len() - 1;
        let lc_inv = self.inv(&b[db])?;
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.mul(r.last().expect("nonempty"), &lc_inv);
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = self.reduce(&(&r[k + j] - &self.mul(&c, bj)));
            }
            Self::trim(&mut r);
        }
        Ok(r)
    }

    /// Monic gcd in `K[X]`.
    fn poly_gcd(&self, a: &[RatPoly], b: &[RatPoly]) -> Result<Vec<RatPoly>> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y)?;
            x = y;
            y = r;
        }
        let lc_inv = self.inv(x.last().ok_or_else(|| Error::Internal("gcd of zeros".into()))?)?;
        Ok(x.iter().map(|c| self.mul(c, &lc_inv)).collect())
    }
}

/// `g(X - k y)` as a polynomial in `X` with coefficients in `Q[y]/(f)`.
fn shifted(g: &IntPolynomial, k: i64, ops: &FieldOps) -> Vec<RatPoly> {
    let n = g.degree().unwrap_or(0);
    let mut out = vec![RatPoly::zero(); n + 1];
    // (X - k y)^i = Σ_j C(i, j) X^j (-k y)^{i-j}.
    for (i, gi) in g.coeffs().iter().enumerate() {
        let mut binom = BigInt::one();
        for j in (0..=i).rev() {
            let e = i - j;
            let mut mono = vec![BigRational::zero(); e + 1];
            mono[e] = q(gi * &binom * num_traits::pow(BigInt::from(-k), e));
            out[j] = &out[j] + &ops.reduce(&RatPoly::new(mono));
            if j > 0 {
                binom = binom * BigInt::from(j) / BigInt::from(e + 1);
            }
        }
    }
    out
}

/// `Res_y(f(y), g(X - k y))` by evaluation at `nm + 1` points and interpolation.
fn norm_polynomial(f: &IntPolynomial, g: &IntPolynomial, k: i64) -> IntPolynomial {
    let n = f.degree().unwrap_or(0) * g.degree().unwrap_or(0);
    let fr = f.to_rat();
    let gr = g.to_rat();
    let xs: Vec<BigRational> = (0..=n as i64).map(q).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x0| resultant(&fr, &gr.compose(&RatPoly::new(vec![x0.clone(), q(-k)]))))
        .collect();
    // Newton divided differences.
    let mut coef = ys.clone();
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = RatPoly::constant(coef[n].clone());
    for i in (0..n).rev() {
        poly = &(&poly * &RatPoly::new(vec![-xs[i].clone(), q(1)])) + &RatPoly::constant(coef[i].clone());
    }
    poly.to_int_exact()
        .expect("norm of monic integral polynomials is integral")
}

fn modular_certificate(f: &IntPolynomial, g: &IntPolynomial) -> Option<NoCertificate> {
    let bad = &discriminant(f) * &discriminant(g);
    for prime in (3..MODULAR_SEARCH_BOUND).filter(|&p| is_prime(p)) {
        if bad.is_multiple_of(&BigInt::from(prime)) {
            continue;
        }
        let fp = factor_degree_pattern(&ModPoly::from_int(f, prime));
        let gp = factor_degree_pattern(&ModPoly::from_int(g, prime));
        if fp.iter().any(|d| gp.iter().all(|e| d % e != 0)) {
            return Some(NoCertificate::Modular {
                prime,
                field_pattern: fp,
                subfield_pattern: gp,
            });
        }
    }
    None
}

/// Decides whether `g` has a root in `field`.
pub fn embeds_subfield(field: &NumberFieldDescription, g: &IntPolynomial) -> Result<Embedding> {
    let m = g
        .degree()
        .ok_or_else(|| Error::InvalidInput("subfield polynomial is zero".into()))?;
    if m == 0 || !g.is_monic() {
        return Err(Error::InvalidInput(format!("{g} must be monic of positive degree")));
    }
    if !factor_over_q(g)?.is_irreducible() {
        return Err(Error::InvalidInput(format!("{g} is reducible over Q")));
    }
    let f = field.poly();
    let n = field.degree();
    if !n.is_multiple_of(m) {
        return Ok(Embedding::No {
            certificate: NoCertificate::Degree {
                field_degree: n,
                subfield_degree: m,
            },
        });
    }
    if let Some(cert) = modular_certificate(f, g) {
        return Ok(Embedding::No { certificate: cert });
    }
    let ops = FieldOps { modulus: f.to_rat() };
    for k in (1..=SHIFT_BOUND).flat_map(|k| [k, -k]) {
        let norm = norm_polynomial(f, g, k);
        if !norm.is_squarefree() {
            continue;
        }
        let fac = match factor_over_q_bounded(&norm, NORM_FACTOR_BOUND) {
            Ok(fac) => fac,
            Err(e) => {
                return Ok(Embedding::Undecided {
                    reason: format!("norm factorization failed: {e}"),
                })
            }
        };
        let Some((factor, _)) = fac.factors.iter().find(|(r, _)| r.degree() == Some(n)) else {
            return Ok(Embedding::No {
                certificate: NoCertificate::NormFactorization {
                    shift: k,
                    factor_degrees: fac.degrees(),
                },
            });
        };
        let lhs = shifted(g, k, &ops);
        let rhs: Vec<RatPoly> = factor
            .coeffs()
            .iter()
            .map(|c| RatPoly::constant(q(c.clone())))
            .collect();
        let common = ops.poly_gcd(&lhs, &rhs)?;
        if common.len() != 2 {
            return Ok(Embedding::Undecided {
                reason: format!("gcd over K has degree {}", common.len() - 1),
            });
        }
        // common = X - γ with γ = β + kα.
        let gamma = ops.reduce(&common[0].scale(&q(-1)));
        let h = ops.reduce(&(&gamma - &RatPoly::new(vec![q(0), q(k)])));
        let check = ops.reduce(&g.to_rat().compose(&h));
        if !check.is_zero() {
            return Ok(Embedding::Undecided {
                reason: "candidate embedding failed exact verification".into(),
            });
        }
        return Ok(Embedding::Yes {
            witness: format_rat_poly(&h),
        });
    }
    Ok(Embedding::Undecided {
        reason: format!("no squarefree norm for |k| <= {SHIFT_BOUND}"),
    })
}

/// `h` with rational coefficients in `x`, e.g. `-1/2*x^2+x`.
fn format_rat_poly(h: &RatPoly) -> String {
    if h.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, c) in h.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigRational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        if i == 0 {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    s
}
