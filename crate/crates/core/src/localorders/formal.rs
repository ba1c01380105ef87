//! Formal λ/π calculus over `O_{K_p}`.
//!
//! An element of `K_p ⊗ Z_p[ζ_p]` is stored as `Σ_d c_d λ^d` for
//! `d < p-1`, each `c_d` a finite sum of monomials `r·π^{-k}` with `r`
//! rational. Only the relations `λ^{p-1} = -p` and `v(p) = e` are used.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::padic::{is_prime, valuation_of_rational};
use crate::error::{Error, Result};

/// The local datum `(p, e, f)`: `v(π) = 1`, `v(p) = e`, residue field `F_{p^f}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LocalContext {
    pub prime: u64,
    pub e: u32,
    pub f: u32,
}

impl LocalContext {
    pub fn new(prime: u64, e: u32, f: u32) -> Result<Self> {
        if prime < 5 || !is_prime(prime) {
            return Err(Error::Domain(format!(
                "local context needs a prime p >= 5, got {prime}"
            )));
        }
        if e == 0 || f == 0 {
            return Err(Error::Domain(
                "ramification index and residue degree must be positive".into(),
            ));
        }
        Ok(LocalContext { prime, e, f })
    }

    /// Number of λ-degrees, `p - 1`.
    pub fn rank(&self) -> usize {
        (self.prime - 1) as usize
    }
}

/// `Σ r_k π^{-k}`, keyed by `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiCoefficient {
    terms: BTreeMap<i64, BigRational>,
}

impl PiCoefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `r·π^{-k}`.
    pub fn monomial(r: BigRational, k: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(k, r);
        c
    }

    pub fn from_int(r: i64) -> Self {
        Self::monomial(BigRational::from_integer(r.into()), 0)
    }

    fn add_term(&mut self, k: i64, r: BigRational) {
        if r.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += r;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials as `(k, r)` pairs meaning `r·π^{-k}`, ascending in `k`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(k, r)| (*k, r))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, r) in &o.terms {
            out.add_term(*k, r.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        PiCoefficient {
            terms: self.terms.iter().map(|(k, r)| (*k, -r)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, r1) in &self.terms {
            for (k2, r2) in &o.terms {
                out.add_term(k1 + k2, r1 * r2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, r) in &self.terms {
            out.add_term(*k, r * c);
        }
        out
    }

    /// Multiplication by `π^j`.
    pub fn shift_pi(&self, j: i64) -> Self {
        PiCoefficient {
            terms: self.terms.iter().map(|(k, r)| (k - j, r.clone())).collect(),
        }
    }

    /// Valuations `e·v_p(r) - k` of each monomial.
    pub fn monomial_valuations(&self, ctx: &LocalContext) -> Vec<i64> {
        self.terms
            .iter()
            .map(|(k, r)| ctx.e as i64 * valuation_of_rational(ctx.prime, r).expect("nonzero") - k)
            .collect()
    }

    /// Minimum monomial valuation; `None` for zero.
    pub fn valuation(&self, ctx: &LocalContext) -> Option<i64> {
        self.monomial_valuations(ctx).into_iter().min()
    }

    /// Smallest ramification index making every monomial integral, or `None`
    /// if some monomial is non-integral for every `e`.
    pub fn min_integral_e(&self, p: u64) -> Option<u32> {
        let mut need = 1i64;
        for (k, r) in &self.terms {
            let s = valuation_of_rational(p, r).expect("nonzero");
            if *k <= 0 {
                if s < 0 {
                    return None;
                }
                continue;
            }
            if s <= 0 {
                return None;
            }
            need = need.max((k + s - 1) / s);
        }
        Some(need as u32)
    }
}

impl fmt::Display for PiCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, r)| match k {
                0 => format!("{r}"),
                _ => format!("{r}*pi^{}", -k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ_d c_d λ^d` over a fixed local context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalElement {
    ctx: LocalContext,
    coeffs: Vec<PiCoefficient>,
}

impl FormalElement {
    pub fn zero(ctx: LocalContext) -> Self {
        FormalElement {
            ctx,
            coeffs: vec![PiCoefficient::zero(); ctx.rank()],
        }
    }

    pub fn one(ctx: LocalContext) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: LocalContext, a: i64) -> Self {
        Self::term(ctx, 0, BigRational::from_integer(a.into()), 0)
    }

    /// `r·π^{-k}·λ^degree` for any `degree >= 0`, reduced by `λ^{p-1} = -p`.
    pub fn term(ctx: LocalContext, degree: u64, r: BigRational, k: i64) -> Self {
        let n = ctx.prime - 1;
        let wraps = degree / n;
        let minus_p = BigRational::from_integer(-BigInt::from(ctx.prime));
        let scalar = r * num_traits::pow(minus_p, wraps as usize);
        let mut out = Self::zero(ctx);
        out.coeffs[(degree % n) as usize] = PiCoefficient::monomial(scalar, k);
        out
    }

    /// `λ^i`.
    pub fn lambda_power(ctx: LocalContext, i: u64) -> Self {
        Self::term(ctx, i, BigRational::one(), 0)
    }

    /// `π^j` (`j` may be negative).
    pub fn pi_power(ctx: LocalContext, j: i64) -> Self {
        Self::term(ctx, 0, BigRational::one(), -j)
    }

    pub fn from_coefficients(ctx: LocalContext, coeffs: Vec<PiCoefficient>) -> Result<Self> {
        if coeffs.len() != ctx.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} λ-coefficients, got {}",
                ctx.rank(),
                coeffs.len()
            )));
        }
        Ok(FormalElement { ctx, coeffs })
    }

    pub fn context(&self) -> &LocalContext {
        &self.ctx
    }

    pub fn coefficient(&self, d: usize) -> &PiCoefficient {
        &self.coeffs[d]
    }

    pub fn coefficients(&self) -> &[PiCoefficient] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// λ-degrees with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&d| !self.coeffs[d].is_zero()).collect()
    }

    fn same_ctx(&self, o: &Self) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, o.ctx)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_ctx(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(FormalElement { ctx: self.ctx, coeffs })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        FormalElement {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FormalElement {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Multiplication by `π^j`.
    pub fn shift_pi(&self, j: i64) -> Self {
        FormalElement {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|x| x.shift_pi(j)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        formal_mul(self, o)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = formal_mul(&acc, self).expect("same context");
        }
        acc
    }

    pub fn character_exponent(&self) -> CharacterExponent {
        character_exponent(self)
    }
}

impl fmt::Display for FormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})*lambda"),
                _ => format!("({c})*lambda^{d}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Product with `λ^{p-1} -> -p` applied until all degrees are below `p-1`.
pub fn formal_mul(a: &FormalElement, b: &FormalElement) -> Result<FormalElement> {
    a.same_ctx(b)?;
    let n = a.ctx.rank();
    let minus_p = BigRational::from_integer(-BigInt::from(a.ctx.prime));
    let mut out = FormalElement::zero(a.ctx);
    for (i, ci) in a.coeffs.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, cj) in b.coeffs.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let mut c = ci.mul(cj);
            let mut d = i + j;
            while d >= n {
                c = c.scale(&minus_p);
                d -= n;
            }
            out.coeffs[d] = out.coeffs[d].add(&c);
        }
    }
    Ok(out)
}

/// Termwise membership, with a flag for possible cross-monomial cancellation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Some degree has a failing minimum valuation attained by two or more
    /// monomials, so cancellation could in principle change the answer.
    pub ambiguous: bool,
}

fn thresholded(elem: &FormalElement, depth: impl Fn(usize) -> i64) -> Membership {
    let mut member = true;
    let mut ambiguous = false;
    for (d, c) in elem.coeffs.iter().enumerate() {
        let vals = c.monomial_valuations(&elem.ctx);
        let Some(&min) = vals.iter().min() else { continue };
        if min < -depth(d) {
            member = false;
            if vals.iter().filter(|&&v| v == min).count() > 1 {
                ambiguous = true;
            }
        }
    }
    Membership { member, ambiguous }
}

/// Membership in `Γ_p = O ⊗ Z_p[ζ_p] = ⊕ O λ^d`.
pub fn gamma_membership(elem: &FormalElement) -> Membership {
    thresholded(elem, |_| 0)
}

pub fn in_gamma(elem: &FormalElement) -> bool {
    gamma_membership(elem).member
}

/// The label `ω^j` of an eigenspace containing an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "exponent", rename_all = "snake_case")]
pub enum CharacterExponent {
    /// All support in degrees `≡ j (mod p-1)`.
    Pure(u32),
    Mixed,
    Zero,
}

impl CharacterExponent {
    /// Whether this is `ω^{-1} = ω^{p-2}` for the given prime.
    pub fn is_omega_inverse(&self, p: u64) -> bool {
        *self == CharacterExponent::Pure((p - 2) as u32)
    }
}

pub fn character_exponent(elem: &FormalElement) -> CharacterExponent {
    match elem.support().as_slice() {
        [] => CharacterExponent::Zero,
        [d] => CharacterExponent::Pure(*d as u32),
        _ => CharacterExponent::Mixed,
    }
}

/// Membership in `⊕ π^{-depth(d)} O λ^d`.
pub(crate) fn depth_membership(elem: &FormalElement, depth: impl Fn(usize) -> i64) -> Membership {
    thresholded(elem, depth)
}
