//! Stickelberger element and ideal, and the Bernoulli number `B_{1,ω}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::group_ring::{inverse_index, GroupRingElement};
use crate::arith::linalg::left_kernel_mod_p;
use crate::arith::padic::{inv_mod_u64, is_prime, teichmuller, PadicInt};
use crate::error::{Error, Result};

/// Summation range of `θ = (1/p) Σ j σ_j^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// `j = 1, ..., p-2`.
    Truncated,
    /// `j = 1, ..., p-1`.
    Classical,
}

impl ThetaVariant {
    pub const ALL: [ThetaVariant; 2] = [ThetaVariant::Truncated, ThetaVariant::Classical];

    fn upper(&self, p: u64) -> u64 {
        match self {
            ThetaVariant::Truncated => p - 2,
            ThetaVariant::Classical => p - 1,
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::Domain(format!("need a prime p >= 5, got {p}")));
    }
    Ok(())
}

pub fn stickelberger_element(p: u64, variant: ThetaVariant) -> Result<GroupRingElement> {
    check_prime(p)?;
    let mut theta = GroupRingElement::zero(p)?;
    for j in 1..=variant.upper(p) {
        let c = BigRational::new(BigInt::from(j), BigInt::from(p));
        theta = theta.add(&GroupRingElement::sigma_scaled(p, inverse_index(p, j) as i64, c)?);
    }
    Ok(theta)
}

/// `{pθ} ∪ {(σ_c - c)θ : c ∈ (Z/p)^×}`, all of which must be integral.
pub fn stickelberger_ideal_generators(p: u64, variant: ThetaVariant) -> Result<Vec<GroupRingElement>> {
    let theta = stickelberger_element(p, variant)?;
    let mut out = vec![theta.scale(&BigRational::from_integer(p.into()))];
    for c in 1..p as i64 {
        let ann = GroupRingElement::sigma(p, c)?.sub(&GroupRingElement::from_int(p, c)?);
        out.push(ann.mul(&theta));
    }
    if let Some((i, g)) = out.iter().enumerate().find(|(_, g)| !g.is_integral()) {
        let what = if i == 0 {
            "p*theta".to_string()
        } else {
            format!("(s{i} - {i})*theta")
        };
        return Err(Error::Internal(format!("{what} = {} is not integral", g.format())));
    }
    Ok(out)
}

/// A Z-spanning set of `ZΔ ∩ θ·ZΔ`.
///
/// With `B` the integer matrix of rows `pθσ_b`, the intersection is
/// `{(1/p) c B : c B ≡ 0 mod p}`, spanned by `B` itself and the lifts of the
/// left kernel of `B mod p`.
pub fn stickelberger_ideal_basis(p: u64, variant: ThetaVariant) -> Result<Vec<GroupRingElement>> {
    let theta = stickelberger_element(p, variant)?;
    let pq = BigRational::from_integer(p.into());
    let rows: Vec<GroupRingElement> = (1..p as i64)
        .map(|b| Ok(theta.mul(&GroupRingElement::sigma(p, b)?).scale(&pq)))
        .collect::<Result<_>>()?;
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.integer_coeffs()
                .ok_or_else(|| Error::Internal("pθσ_b not integral".into()))
        })
        .collect::<Result<_>>()?;
    let pb = BigInt::from(p);
    let reduced: Vec<Vec<u64>> = int_rows
        .iter()
        .map(|r| r.iter().map(|c| c.mod_floor(&pb).to_u64().expect("small")).collect())
        .collect();
    let mut out = rows;
    for k in left_kernel_mod_p(&reduced, p) {
        let mut combo = vec![BigInt::zero(); p as usize - 1];
        for (row, &kb) in int_rows.iter().zip(&k) {
            if kb != 0 {
                let kb = BigInt::from(kb);
                for (c, r) in combo.iter_mut().zip(row) {
                    *c += &kb * r;
                }
            }
        }
        if combo.iter().any(|c| !c.is_multiple_of(&pb)) {
            return Err(Error::Internal("intersection basis element is not integral".into()));
        }
        out.push(GroupRingElement::from_integers(
            p,
            combo.into_iter().map(|c| c / &pb).collect(),
        )?);
    }
    out.retain(|g| g.coeffs().iter().any(|c| !c.is_zero()));
    if out.iter().any(|g| !g.is_integral()) {
        return Err(Error::Internal("intersection basis element is not integral".into()));
    }
    Ok(out)
}

/// `B_{1,ω} = (1/p) Σ_{a=1}^{p-1} a ω(a)` to precision `n`.
pub fn bernoulli_b1_omega(p: u64, n: u32) -> Result<PadicInt> {
    check_prime(p)?;
    let mut sum = PadicInt::zero(p, n + 1);
    for a in 1..p {
        sum = &sum + &(&PadicInt::new(p, n + 1, a) * &teichmuller(p, a as i64, n + 1)?);
    }
    sum.divide_by_p()
}

/// `B_{1,ω} ≡ 1/12 (mod p)`.
pub fn verify_bernoulli_congruence(p: u64, n: u32) -> Result<bool> {
    let b = bernoulli_b1_omega(p, n)?;
    Ok(Some(b.residue()) == inv_mod_u64(12 % p, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealValuation {
    pub variant: ThetaVariant,
    pub generators: usize,
    pub all_integral: bool,
    /// `min v_p(ω^{-1}(g))` over the spanning set of the intersection ideal.
    pub ideal_valuation: Option<i64>,
    /// `v_p(ω^{-1}θ)`.
    pub theta_valuation: Option<i64>,
    /// `min v_p(ω^{-1}(·))` over `p` and `σ_c - c`.
    pub annihilator_valuation: Option<i64>,
}

/// Valuation of `ω^{-1}(ZΔ ∩ θZΔ)`; zero means the ideal is `Z_p`.
pub fn omega_inverse_ideal_valuation(p: u64, n: u32, variant: ThetaVariant) -> Result<IdealValuation> {
    let basis = stickelberger_ideal_basis(p, variant)?;
    let min_val = |gens: &[GroupRingElement]| -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for g in gens {
            if let Some(v) = g.character_valuation(-1, n)? {
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        }
        Ok(best)
    };
    let theta = stickelberger_element(p, variant)?;
    let mut ann = vec![GroupRingElement::from_int(p, p as i64)?];
    for c in 2..p as i64 {
        ann.push(GroupRingElement::sigma(p, c)?.sub(&GroupRingElement::from_int(p, c)?));
    }
    Ok(IdealValuation {
        variant,
        generators: basis.len(),
        all_integral: basis.iter().all(|g| g.is_integral()),
        ideal_valuation: min_val(&basis)?,
        theta_valuation: theta.character_valuation(-1, n)?,
        annihilator_valuation: min_val(&ann)?,
    })
}
