//! Orders `Γ_p ⊆ T ⊆ K_p ⊗ Q_p(ζ_p)` given by `Γ_p` plus single-monomial
//! generators, and their closure and membership checks.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use super::formal::{
    character_exponent, depth_membership, formal_mul, in_gamma, CharacterExponent, FormalElement, LocalContext,
    Membership,
};
use crate::error::{Error, Result};

/// The three local constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LocalCase {
    /// `[K(ζ_p):K] > 2`: `T = Γ_p + xO` with `x = λ^{p-2}/π`.
    #[serde(rename = "large-degree")]
    LargeDegree,
    /// `e >= 4`: `T = Γ_p + x_1 O + x_2 O` with `x_2 = λ^{p-2}/π^2`.
    #[serde(rename = "deep-ramification")]
    DeepRamification,
    /// `p = 7`, `e = 3`, `[K(ζ_7):K] = 2`: adds `x_3 = λ^4/π`.
    #[serde(rename = "p7-cubic")]
    SeptimicCubic,
}

impl LocalCase {
    pub const ALL: [LocalCase; 3] = [
        LocalCase::LargeDegree,
        LocalCase::DeepRamification,
        LocalCase::SeptimicCubic,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            LocalCase::LargeDegree => "large-degree",
            LocalCase::DeepRamification => "deep-ramification",
            LocalCase::SeptimicCubic => "p7-cubic",
        }
    }

    /// Quotient exponent `m` with `π^m T ⊆ Γ_p`.
    pub fn quotient_order(&self) -> u32 {
        match self {
            LocalCase::LargeDegree => 1,
            _ => 2,
        }
    }

    /// Whether the construction is meant to apply at `(p, e)`.
    pub fn admits(&self, p: u64, e: u32) -> bool {
        match self {
            LocalCase::LargeDegree => e >= 2,
            LocalCase::DeepRamification => e >= 4,
            LocalCase::SeptimicCubic => p == 7 && e == 3,
        }
    }
}

impl fmt::Display for LocalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for LocalCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "large-degree" | "large" => Ok(LocalCase::LargeDegree),
            "deep-ramification" | "deep" => Ok(LocalCase::DeepRamification),
            "p7-cubic" | "septimic" => Ok(LocalCase::SeptimicCubic),
            other => Err(Error::Parse(format!("unknown local case {other:?}"))),
        }
    }
}

/// `Γ_p` plus named generators, each `π^{-k}λ^d` up to a p-adic unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    ctx: LocalContext,
    case: Option<LocalCase>,
    generators: Vec<(String, FormalElement)>,
    depths: Vec<i64>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl OrderSpec {
    pub fn new(ctx: LocalContext, generators: Vec<(String, FormalElement)>) -> Result<Self> {
        let mut depths = vec![0i64; ctx.rank()];
        for (name, g) in &generators {
            if *g.context() != ctx {
                return Err(Error::ContextMismatch(format!("generator {name}")));
            }
            let support = g.support();
            let [d] = support.as_slice() else {
                return Err(Error::InvalidInput(format!(
                    "generator {name} must be supported on one λ-degree"
                )));
            };
            let c = g.coefficient(*d);
            if c.len() != 1 {
                return Err(Error::InvalidInput(format!(
                    "generator {name} must have a single π-monomial"
                )));
            }
            let v = c.valuation(&ctx).expect("nonzero");
            if v >= 0 {
                return Err(Error::InvalidInput(format!("generator {name} already lies in Γ_p")));
            }
            depths[*d] = depths[*d].max(-v);
        }
        Ok(OrderSpec {
            ctx,
            case: None,
            generators,
            depths,
        })
    }

    pub fn gamma(ctx: LocalContext) -> Self {
        OrderSpec {
            ctx,
            case: None,
            generators: Vec::new(),
            depths: vec![0; ctx.rank()],
        }
    }

    pub fn for_case(ctx: LocalContext, case: LocalCase) -> Result<Self> {
        let top = ctx.prime - 2;
        let gens = match case {
            LocalCase::LargeDegree => vec![("x".to_string(), FormalElement::term(ctx, top, q(1), 1))],
            LocalCase::DeepRamification => vec![
                ("x1".to_string(), FormalElement::term(ctx, top, q(1), 1)),
                ("x2".to_string(), FormalElement::term(ctx, top, q(1), 2)),
            ],
            LocalCase::SeptimicCubic => vec![
                ("x1".to_string(), FormalElement::term(ctx, top, q(1), 1)),
                ("x2".to_string(), FormalElement::term(ctx, top, q(1), 2)),
                ("x3".to_string(), FormalElement::term(ctx, top - 1, q(1), 1)),
            ],
        };
        let mut spec = Self::new(ctx, gens)?;
        spec.case = Some(case);
        Ok(spec)
    }

    pub fn context(&self) -> &LocalContext {
        &self.ctx
    }

    pub fn case(&self) -> Option<LocalCase> {
        self.case
    }

    pub fn generators(&self) -> &[(String, FormalElement)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&FormalElement> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    /// `δ_d`: T is `⊕ π^{-δ_d} O λ^d`.
    pub fn depths(&self) -> &[i64] {
        &self.depths
    }

    /// Name of the deepest generator at each degree, or `lambda^d`.
    pub fn labels(&self) -> Vec<String> {
        (0..self.ctx.rank())
            .map(|d| {
                self.generators
                    .iter()
                    .filter(|(_, g)| g.support() == [d])
                    .max_by_key(|(_, g)| -g.coefficient(d).valuation(&self.ctx).expect("nonzero"))
                    .map(|(n, _)| n.clone())
                    .unwrap_or_else(|| lambda_name(d))
            })
            .collect()
    }

    /// The O-spanning set `{λ^d} ∪ generators`, named.
    pub fn spanning_set(&self) -> Vec<(String, FormalElement)> {
        let mut out: Vec<(String, FormalElement)> = (0..self.ctx.rank())
            .map(|d| (lambda_name(d), FormalElement::lambda_power(self.ctx, d as u64)))
            .collect();
        out.extend(self.generators.iter().cloned());
        out
    }
}

pub(crate) fn lambda_name(d: usize) -> String {
    match d {
        0 => "1".into(),
        1 => "lambda".into(),
        _ => format!("lambda^{d}"),
    }
}

pub fn order_membership(elem: &FormalElement, order: &OrderSpec) -> Result<Membership> {
    if elem.context() != order.context() {
        return Err(Error::ContextMismatch("element and order".into()));
    }
    Ok(depth_membership(elem, |d| order.depths[d]))
}

pub fn in_order(elem: &FormalElement, order: &OrderSpec) -> Result<bool> {
    Ok(order_membership(elem, order)?.member)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub left: String,
    pub right: String,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureOutcome {
    pub closed: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// Pairwise products of the spanning set must stay in the order.
pub fn algebra_closed(order: &OrderSpec) -> ClosureOutcome {
    let span = order.spanning_set();
    let mut pairs_checked = 0;
    for i in 0..span.len() {
        for j in i..span.len() {
            pairs_checked += 1;
            let prod = formal_mul(&span[i].1, &span[j].1).expect("same context");
            if !in_order(&prod, order).expect("same context") {
                return ClosureOutcome {
                    closed: false,
                    pairs_checked,
                    counterexample: Some(Counterexample {
                        left: span[i].0.clone(),
                        right: span[j].0.clone(),
                        product: prod.to_string(),
                    }),
                };
            }
        }
    }
    ClosureOutcome {
        closed: true,
        pairs_checked,
        counterexample: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledInclusion {
    pub m: u32,
    pub holds: bool,
    /// Generators `g` with `π^m g ∉ Γ_p`.
    pub failures: Vec<String>,
}

/// `π^m T ⊆ Γ_p ⊆ T`.
pub fn scaled_inclusion(order: &OrderSpec, m: u32) -> ScaledInclusion {
    let gamma_in_t = order.depths.iter().all(|&d| d >= 0);
    let failures: Vec<String> = order
        .generators
        .iter()
        .filter(|(_, g)| !in_gamma(&g.shift_pi(m as i64)))
        .map(|(n, _)| n.clone())
        .collect();
    ScaledInclusion {
        m,
        holds: gamma_in_t && failures.is_empty(),
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipRow {
    pub element: String,
    pub value: String,
    pub member: bool,
    pub ambiguous: bool,
    /// Least `e` for which the element lies in `Γ_p`.
    pub min_e: Option<u32>,
}

fn min_e(elem: &FormalElement) -> Option<u32> {
    let p = elem.context().prime;
    let mut need = 1;
    for c in elem.coefficients().iter().filter(|c| !c.is_zero()) {
        need = need.max(c.min_integral_e(p)?);
    }
    Some(need)
}

fn rows(items: Vec<(&str, FormalElement)>) -> Vec<MembershipRow> {
    items
        .into_iter()
        .map(|(name, v)| {
            let m = super::formal::gamma_membership(&v);
            MembershipRow {
                element: name.to_string(),
                value: v.to_string(),
                member: m.member,
                ambiguous: m.ambiguous,
                min_e: min_e(&v),
            }
        })
        .collect()
}

/// `x^2, x^3, λx, πx ∈ Γ_p` for `x = λ^{p-2}/π`.
pub fn basic_membership_table(ctx: LocalContext) -> Vec<MembershipRow> {
    let x = FormalElement::term(ctx, ctx.prime - 2, q(1), 1);
    let lambda = FormalElement::lambda_power(ctx, 1);
    rows(vec![
        ("x^2", x.pow(2)),
        ("x^3", x.pow(3)),
        ("lambda*x", formal_mul(&lambda, &x).expect("ctx")),
        ("pi*x", x.shift_pi(1)),
    ])
}

/// The seven products needed for closure of `Γ_p + x_1 O + x_2 O`.
pub fn deep_membership_table(ctx: LocalContext) -> Vec<MembershipRow> {
    let top = ctx.prime - 2;
    let x1 = FormalElement::term(ctx, top, q(1), 1);
    let x2 = FormalElement::term(ctx, top, q(1), 2);
    let lambda = FormalElement::lambda_power(ctx, 1);
    let m = |a: &FormalElement, b: &FormalElement| formal_mul(a, b).expect("ctx");
    rows(vec![
        ("x2^2", x2.pow(2)),
        ("x2^3", x2.pow(3)),
        ("lambda*x2", m(&lambda, &x2)),
        ("pi^2*x2", x2.shift_pi(2)),
        ("x1*x2", m(&x1, &x2)),
        ("x1^2*x2", m(&x1.pow(2), &x2)),
        ("x1*x2^2", m(&x1, &x2.pow(2))),
    ])
}

/// Character exponents of the generators of an order.
pub fn generator_exponents(order: &OrderSpec) -> Vec<(String, CharacterExponent)> {
    order
        .generators
        .iter()
        .map(|(n, g)| (n.clone(), character_exponent(g)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> LocalContext {
        LocalContext::new(p, e, 1).unwrap()
    }

    #[test]
    fn order_examples() {
        let c = ctx(5, 2);
        let t = OrderSpec::for_case(c, LocalCase::LargeDegree).unwrap();
        assert!(in_order(t.generator("x").unwrap(), &t).unwrap());
        let x = t.generator("x").unwrap();
        assert!(in_order(&x.pow(3), &t).unwrap());
        assert!(in_gamma(&x.pow(3)));
        let c7 = ctx(7, 3);
        let t7 = OrderSpec::for_case(c7, LocalCase::SeptimicCubic).unwrap();
        let x2 = t7.generator("x2").unwrap();
        assert!(in_order(&x2.pow(2), &t7).unwrap());
        assert!(!in_gamma(&x2.pow(2)));
    }

    #[test]
    fn closure_examples() {
        assert!(algebra_closed(&OrderSpec::for_case(ctx(5, 2), LocalCase::LargeDegree).unwrap()).closed);
        let bad = algebra_closed(&OrderSpec::for_case(ctx(5, 1), LocalCase::LargeDegree).unwrap());
        let ce = bad.counterexample.unwrap();
        assert_eq!((ce.left.as_str(), ce.right.as_str()), ("x", "x"));
        assert!(algebra_closed(&OrderSpec::for_case(ctx(7, 3), LocalCase::SeptimicCubic).unwrap()).closed);
        assert!(algebra_closed(&OrderSpec::for_case(ctx(5, 4), LocalCase::DeepRamification).unwrap()).closed);
        assert!(!algebra_closed(&OrderSpec::for_case(ctx(5, 3), LocalCase::DeepRamification).unwrap()).closed);
        assert!(algebra_closed(&OrderSpec::gamma(ctx(11, 1))).closed);
    }

    #[test]
    fn scaled_inclusion_examples() {
        let t1 = OrderSpec::for_case(ctx(5, 2), LocalCase::LargeDegree).unwrap();
        assert!(scaled_inclusion(&t1, 1).holds);
        let t2 = OrderSpec::for_case(ctx(5, 4), LocalCase::DeepRamification).unwrap();
        assert!(scaled_inclusion(&t2, 2).holds);
        let one = scaled_inclusion(&t2, 1);
        assert!(!one.holds);
        assert_eq!(one.failures, vec!["x2".to_string()]);
        let t3 = OrderSpec::for_case(ctx(7, 3), LocalCase::SeptimicCubic).unwrap();
        assert!(scaled_inclusion(&t3, 2).holds);
    }

    #[test]
    fn tables() {
        for p in [5u64, 7, 11, 13] {
            for e in 1..=8 {
                let basic = basic_membership_table(ctx(p, e));
                assert_eq!(basic.iter().all(|r| r.member), e >= 2, "p={p} e={e}");
                let deep = deep_membership_table(ctx(p, e));
                assert_eq!(deep.iter().all(|r| r.member), e >= 4, "p={p} e={e}");
                for r in basic.iter().chain(&deep) {
                    assert_eq!(r.member, r.min_e.is_some_and(|m| e >= m));
                }
            }
        }
        let mins: Vec<_> = deep_membership_table(ctx(7, 4)).iter().map(|r| r.min_e).collect();
        assert_eq!(mins, [4, 3, 2, 1, 3, 2, 3].map(Some).to_vec());
    }

    #[test]
    fn labels_and_exponents() {
        let t3 = OrderSpec::for_case(ctx(7, 3), LocalCase::SeptimicCubic).unwrap();
        assert_eq!(t3.labels(), ["1", "lambda", "lambda^2", "lambda^3", "x3", "x2"]);
        assert_eq!(t3.depths(), [0, 0, 0, 0, 1, 2]);
        let ex = generator_exponents(&t3);
        assert!(ex[0].1.is_omega_inverse(7) && ex[1].1.is_omega_inverse(7));
        assert!(!ex[2].1.is_omega_inverse(7));
    }

    #[test]
    fn rejects_noncanonical() {
        let c = ctx(5, 2);
        let two_deg = FormalElement::term(c, 3, q(1), 1)
            .add(&FormalElement::term(c, 2, q(1), 1))
            .unwrap();
        assert!(OrderSpec::new(c, vec![("g".into(), two_deg)]).is_err());
        assert!(OrderSpec::new(c, vec![("g".into(), FormalElement::lambda_power(c, 2))]).is_err());
    }

    #[test]
    fn case_tokens() {
        for case in LocalCase::ALL {
            assert_eq!(case.token().parse::<LocalCase>().unwrap(), case);
        }
        assert_eq!("deep".parse::<LocalCase>().unwrap(), LocalCase::DeepRamification);
        assert!("other".parse::<LocalCase>().is_err());
    }
}
