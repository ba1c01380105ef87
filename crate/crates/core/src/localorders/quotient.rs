//! The finite algebra `S̄ = T/π^m T`, free over `k[t]/(t^m)` on the labels
//! `π^{-δ_d} λ^d`, with `p ↦ u·t^e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::formal::FormalElement;
use super::order::{algebra_closed, scaled_inclusion, OrderSpec};
use crate::arith::gf::{FieldElement, FiniteField, TruncatedRing, TruncatedRingElement};
use crate::arith::padic::{inv_mod_u64, pow_mod_u64, valuation_of_rational};
use crate::error::{Error, Result};

/// Coordinates over `k[t]/(t^m)`, one per λ-degree label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SBarElement {
    coords: Vec<TruncatedRingElement>,
}

impl SBarElement {
    pub fn coords(&self) -> &[TruncatedRingElement] {
        &self.coords
    }
}

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    order: OrderSpec,
    ring: TruncatedRing,
    u: TruncatedRingElement,
    labels: Vec<String>,
    depths: Vec<i64>,
    /// `b_i b_j = table[i][j] · b_{(i+j) mod (p-1)}`.
    table: Vec<Vec<TruncatedRingElement>>,
}

fn residue_of(p: u64, r: &BigInt) -> u64 {
    r.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Builds `T/π^m T` after checking `m <= e`, closure and `π^m T ⊆ Γ_p`.
pub fn build_quotient(order: &OrderSpec, m: u32, u: &[i64]) -> Result<QuotientAlgebra> {
    let ctx = *order.context();
    if m == 0 || m > ctx.e {
        return Err(Error::Precondition(format!(
            "quotient order m = {m} must satisfy 1 <= m <= e = {}",
            ctx.e
        )));
    }
    let closure = algebra_closed(order);
    if !closure.closed {
        let ce = closure.counterexample.expect("counterexample");
        return Err(Error::Precondition(format!(
            "algebra_closed failed: {} * {} = {}",
            ce.left, ce.right, ce.product
        )));
    }
    let incl = scaled_inclusion(order, m);
    if !incl.holds {
        return Err(Error::Precondition(format!(
            "scaled_inclusion(m = {m}) failed for {}",
            incl.failures.join(", ")
        )));
    }
    let field = FiniteField::new(ctx.prime, ctx.f as usize)?;
    let ring = TruncatedRing::new(field, m as usize)?;
    let u = ring.from_coeffs(u);
    if !ring.is_unit(&u) {
        return Err(Error::Precondition(
            "unit parameter u must be a unit of k[t]/(t^m)".into(),
        ));
    }
    let mut q = QuotientAlgebra {
        labels: order.labels(),
        depths: order.depths().to_vec(),
        order: order.clone(),
        ring,
        u,
        table: Vec::new(),
    };
    let n = ctx.rank();
    let basis: Vec<FormalElement> = (0..n).map(|d| q.label_element(d)).collect();
    let mut table = vec![Vec::with_capacity(n); n];
    for i in 0..n {
        for j in 0..n {
            let prod = basis[i].mul(&basis[j])?;
            let image = q.reduce(&prod)?;
            let d = (i + j) % n;
            debug_assert!(image
                .coords
                .iter()
                .enumerate()
                .all(|(k, c)| k == d || q.ring.is_zero(c)));
            table[i].push(image.coords[d].clone());
        }
    }
    q.table = table;
    Ok(q)
}

impl QuotientAlgebra {
    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn ring(&self) -> &TruncatedRing {
        &self.ring
    }

    pub fn unit_parameter(&self) -> &TruncatedRingElement {
        &self.u
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn prime(&self) -> u64 {
        self.order.context().prime
    }

    /// `π^{-δ_d} λ^d` as a formal element.
    pub fn label_element(&self, d: usize) -> FormalElement {
        FormalElement::term(
            *self.order.context(),
            d as u64,
            num_rational::BigRational::from_integer(1.into()),
            self.depths[d],
        )
    }

    /// Image of an element of `T` in `T/π^m T`.
    pub fn reduce(&self, elem: &FormalElement) -> Result<SBarElement> {
        let ctx = self.order.context();
        if elem.context() != ctx {
            return Err(Error::ContextMismatch("element and quotient".into()));
        }
        let p = ctx.prime;
        let field = self.ring.field();
        let mut coords = vec![self.ring.zero(); self.rank()];
        for (d, c) in elem.coefficients().iter().enumerate() {
            for (k, r) in c.terms() {
                let s = valuation_of_rational(p, r).expect("nonzero");
                let k_rel = k - self.depths[d];
                let shift = s * ctx.e as i64 - k_rel;
                if shift < 0 {
                    return Err(Error::Domain(format!("{elem} does not lie in T")));
                }
                let pb = BigInt::from(p);
                let pow = num_traits::pow(pb, s.unsigned_abs() as usize);
                let (num, den) = if s >= 0 {
                    (r.numer() / &pow, r.denom().clone())
                } else {
                    (r.numer().clone(), r.denom() / &pow)
                };
                let den_inv = inv_mod_u64(residue_of(p, &den), p).expect("p-adic unit");
                let unit = residue_of(p, &num) * den_inv % p;
                let scalar = self.ring.pow(&self.u, s)?;
                let term = self
                    .ring
                    .mul_field(&self.ring.shift(&scalar, shift as usize), &field.from_int(unit as i64));
                coords[d] = self.ring.add(&coords[d], &term);
            }
        }
        Ok(SBarElement { coords })
    }

    pub fn zero(&self) -> SBarElement {
        SBarElement {
            coords: vec![self.ring.zero(); self.rank()],
        }
    }

    pub fn one(&self) -> SBarElement {
        self.basis(0)
    }

    pub fn basis(&self, d: usize) -> SBarElement {
        let mut z = self.zero();
        z.coords[d] = self.ring.one();
        z
    }

    /// The label named `name` (`x`, `x2`, `lambda^3`, ...).
    pub fn label(&self, name: &str) -> Option<SBarElement> {
        self.labels.iter().position(|l| l == name).map(|d| self.basis(d))
    }

    pub fn from_coords(&self, coords: Vec<TruncatedRingElement>) -> Result<SBarElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidInput("wrong number of coordinates".into()));
        }
        Ok(SBarElement { coords })
    }

    pub fn is_zero(&self, a: &SBarElement) -> bool {
        a.coords.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn add(&self, a: &SBarElement, b: &SBarElement) -> SBarElement {
        SBarElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| self.ring.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &SBarElement, b: &SBarElement) -> SBarElement {
        SBarElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| self.ring.sub(x, y))
                .collect(),
        }
    }

    pub fn scale(&self, a: &SBarElement, c: &TruncatedRingElement) -> SBarElement {
        SBarElement {
            coords: a.coords.iter().map(|x| self.ring.mul(x, c)).collect(),
        }
    }

    pub fn scale_int(&self, a: &SBarElement, c: i64) -> SBarElement {
        self.scale(a, &self.ring.from_int(c))
    }

    pub fn mul(&self, a: &SBarElement, b: &SBarElement) -> SBarElement {
        let n = self.rank();
        let mut out = self.zero();
        for (i, x) in a.coords.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if self.ring.is_zero(y) {
                    continue;
                }
                let d = (i + j) % n;
                let term = self.ring.mul(&self.ring.mul(x, y), &self.table[i][j]);
                out.coords[d] = self.ring.add(&out.coords[d], &term);
            }
        }
        out
    }

    pub fn pow(&self, a: &SBarElement, mut e: u64) -> SBarElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Membership in `Γ̄`: the coordinate at label `d` is divisible by `t^{δ_d}`.
    pub fn in_gamma_bar(&self, a: &SBarElement) -> bool {
        a.coords
            .iter()
            .zip(&self.depths)
            .all(|(c, &delta)| self.ring.t_adic_valuation(c) as i64 >= delta)
    }

    /// `σ_a` scales the label of λ-degree `d` by `a^d mod p`.
    pub fn delta_action(&self, a: i64, elem: &SBarElement) -> Result<SBarElement> {
        let p = self.prime();
        let a = a.rem_euclid(p as i64) as u64;
        if a == 0 {
            return Err(Error::Domain(format!("{p} divides the group element")));
        }
        let field = self.ring.field();
        let coords = elem
            .coords
            .iter()
            .enumerate()
            .map(|(d, c)| {
                self.ring
                    .mul_field(c, &field.from_int(pow_mod_u64(a, d as u64, p) as i64))
            })
            .collect();
        Ok(SBarElement { coords })
    }

    /// Whether the ideal generated by `gens` has vanishing `p`-th power.
    pub fn ideal_power_vanishes(&self, gens: &[SBarElement]) -> bool {
        let p = self.prime() as usize;
        // (g_1, ..., g_r)^p is generated by the degree-p monomials in the g_i.
        let mut layer: Vec<SBarElement> = vec![self.one()];
        for _ in 0..p {
            let mut next = Vec::new();
            for m in &layer {
                for g in gens {
                    let prod = self.mul(m, g);
                    if !self.is_zero(&prod) && !next.contains(&prod) {
                        next.push(prod);
                    }
                }
            }
            if next.is_empty() {
                return true;
            }
            layer = next;
        }
        false
    }

    /// `Σ_{i<p} a^i / i!`, requiring `(a)^p = 0`.
    pub fn truncated_exp(&self, a: &SBarElement) -> Result<SBarElement> {
        let p = self.prime();
        if !self.is_zero(&self.pow(a, p)) {
            return Err(Error::NilpotencyTooLarge(format!(
                "the ideal generated by the argument has nonzero {p}-th power"
            )));
        }
        let mut acc = self.one();
        let mut term = self.one();
        for i in 1..p {
            let inv_i = inv_mod_u64(i, p).expect("i < p");
            term = self.scale_int(&self.mul(&term, a), inv_i as i64);
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Least `n <= bound` with `a^n = 1`.
    pub fn multiplicative_order(&self, a: &SBarElement, bound: u64) -> Option<u64> {
        let one = self.one();
        let mut acc = a.clone();
        for n in 1..=bound {
            if acc == one {
                return Some(n);
            }
            acc = self.mul(&acc, a);
        }
        None
    }

    /// Random triples with `(ab)c = a(bc)` and `ab = ba`.
    pub fn associativity_spot_check(&self, samples: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let [a, b, c] = [0; 3].map(|_| self.random_element(&mut rng));
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                return false;
            }
            if self.mul(&a, &b) != self.mul(&b, &a) {
                return false;
            }
        }
        let one = self.one();
        (0..self.rank()).all(|d| self.mul(&one, &self.basis(d)) == self.basis(d))
    }

    /// `σ_a(b_i b_j) = σ_a(b_i) σ_a(b_j)` for all labels and all `a`.
    pub fn delta_stable(&self) -> bool {
        let n = self.rank();
        (1..self.prime() as i64).all(|a| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let lhs = self
                        .delta_action(a, &self.mul(&self.basis(i), &self.basis(j)))
                        .expect("unit");
                    let rhs = self.mul(
                        &self.delta_action(a, &self.basis(i)).expect("unit"),
                        &self.delta_action(a, &self.basis(j)).expect("unit"),
                    );
                    lhs == rhs
                })
            })
        })
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> SBarElement {
        let p = self.prime();
        let f = self.ring.field().degree();
        let m = self.ring.nilpotency_order();
        let coords = (0..self.rank())
            .map(|_| {
                TruncatedRingElement(
                    (0..m)
                        .map(|_| FieldElement((0..f).map(|_| rng.gen_range(0..p)).collect()))
                        .collect(),
                )
            })
            .collect();
        SBarElement { coords }
    }

    pub fn format(&self, a: &SBarElement) -> String {
        let parts: Vec<String> = a
            .coords
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !self.ring.is_zero(c))
            .map(|(c, l)| format!("({})*{}", self.ring.format(c), l))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Outcome of the `[exp](x̄)` witness on one generator image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpWitness {
    pub argument: String,
    pub value: String,
    pub ideal_nilpotent: bool,
    /// `y^p = 1` and `y ≠ 1`.
    pub order_p: bool,
    pub outside_gamma_bar: bool,
    /// `σ_a(y) = [exp](σ_a(x̄)) = [exp](a^{-1} x̄)` for all `a`.
    pub equivariant: bool,
}

impl ExpWitness {
    pub fn passed(&self) -> bool {
        self.ideal_nilpotent && self.order_p && self.outside_gamma_bar && self.equivariant
    }
}

/// Builds `y = [exp](x̄)` and checks its order, position and Δ-behaviour.
pub fn exp_witness(q: &QuotientAlgebra, xbar: &SBarElement) -> Result<ExpWitness> {
    let p = q.prime();
    let ideal_nilpotent = q.ideal_power_vanishes(std::slice::from_ref(xbar));
    let y = q.truncated_exp(xbar)?;
    let one = q.one();
    let order_p = q.pow(&y, p) == one && y != one;
    let outside_gamma_bar = !q.in_gamma_bar(&y);
    let mut equivariant = true;
    for a in 1..p as i64 {
        let lhs = q.delta_action(a, &y)?;
        let via_action = q.truncated_exp(&q.delta_action(a, xbar)?)?;
        let a_inv = inv_mod_u64(a as u64, p).expect("unit") as i64;
        let via_scalar = q.truncated_exp(&q.scale_int(xbar, a_inv))?;
        equivariant &= lhs == via_action && lhs == via_scalar;
    }
    Ok(ExpWitness {
        argument: q.format(xbar),
        value: q.format(&y),
        ideal_nilpotent,
        order_p,
        outside_gamma_bar,
        equivariant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceOutcome {
    pub holds: bool,
    pub combinations_checked: usize,
    pub first_failure: Option<(u64, u64)>,
}

/// `[exp](k_1 x̄_1)·[exp](k_2 x̄_2) ∉ Γ̄` for every `(k_1, k_2) ≠ (0, 0)` mod p.
pub fn independence_check(q: &QuotientAlgebra, x1: &SBarElement, x2: &SBarElement) -> Result<IndependenceOutcome> {
    if !q.ideal_power_vanishes(&[x1.clone(), x2.clone()]) {
        return Err(Error::NilpotencyTooLarge("(x̄1, x̄2)^p is nonzero".into()));
    }
    let p = q.prime();
    let mut combinations_checked = 0;
    for k1 in 0..p {
        for k2 in 0..p {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            combinations_checked += 1;
            let y = q.mul(
                &q.truncated_exp(&q.scale_int(x1, k1 as i64))?,
                &q.truncated_exp(&q.scale_int(x2, k2 as i64))?,
            );
            if q.in_gamma_bar(&y) {
                return Ok(IndependenceOutcome {
                    holds: false,
                    combinations_checked,
                    first_failure: Some((k1, k2)),
                });
            }
        }
    }
    Ok(IndependenceOutcome {
        holds: true,
        combinations_checked,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localorders::formal::LocalContext;
    use crate::localorders::order::LocalCase;

    fn quotient(p: u64, e: u32, f: u32, case: LocalCase, u: &[i64]) -> QuotientAlgebra {
        let ctx = LocalContext::new(p, e, f).unwrap();
        let order = OrderSpec::for_case(ctx, case).unwrap();
        build_quotient(&order, case.quotient_order(), u).unwrap()
    }

    #[test]
    fn x_bar_squared() {
        for u in [1i64, 2, 3] {
            let q = quotient(5, 2, 1, LocalCase::LargeDegree, &[u]);
            let x = q.label("x").unwrap();
            let want = q.scale_int(&q.label("lambda^2").unwrap(), -u);
            assert_eq!(q.mul(&x, &x), want);
            assert!(q.is_zero(&q.pow(&x, 3)));
        }
        let q = quotient(5, 6, 1, LocalCase::LargeDegree, &[1]);
        let x = q.label("x").unwrap();
        assert!(q.is_zero(&q.mul(&x, &x)));
    }

    #[test]
    fn exp_example() {
        let q = quotient(5, 2, 1, LocalCase::LargeDegree, &[1]);
        let x = q.label("x").unwrap();
        let y = q.truncated_exp(&x).unwrap();
        // 1 + x̄ + x̄^2/2 with x̄^2 = -λ̄^2.
        let half = inv_mod_u64(2, 5).unwrap() as i64;
        let want = q.add(&q.add(&q.one(), &x), &q.scale_int(&q.label("lambda^2").unwrap(), -half));
        assert_eq!(y, want);
        assert_eq!(q.multiplicative_order(&y, 25), Some(5));
        assert!(!q.in_gamma_bar(&y));
        assert!(q.in_gamma_bar(&q.one()));
        assert_eq!(q.truncated_exp(&q.zero()).unwrap(), q.one());
        assert!(exp_witness(&q, &x).unwrap().passed());
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let q = quotient(5, 2, 1, LocalCase::LargeDegree, &[1]);
        assert!(matches!(q.truncated_exp(&q.one()), Err(Error::NilpotencyTooLarge(_))));
    }

    #[test]
    fn exp_agrees_with_formal_route() {
        // Sum the series and take the p-th power in the formal calculus, then reduce.
        use num_rational::BigRational;
        for (p, e, case) in [(5u64, 2u32, LocalCase::LargeDegree), (7, 3, LocalCase::SeptimicCubic)] {
            let q = quotient(p, e, 1, case, &[1]);
            let gen = if case == LocalCase::LargeDegree { "x" } else { "x2" };
            let x = q.order().generator(gen).unwrap().clone();
            let ctx = *x.context();
            let mut series = FormalElement::zero(ctx);
            let mut fact = BigInt::from(1);
            for i in 0..p {
                if i > 0 {
                    fact *= BigInt::from(i);
                }
                series = series
                    .add(&x.pow(i as u32).scale(&BigRational::new(1.into(), fact.clone())))
                    .unwrap();
            }
            let y = q.truncated_exp(&q.reduce(&x).unwrap()).unwrap();
            assert_eq!(q.reduce(&series).unwrap(), y);
            assert_eq!(q.reduce(&series.pow(p as u32)).unwrap(), q.one());
        }
    }

    #[test]
    fn deep_case() {
        let q = quotient(5, 4, 1, LocalCase::DeepRamification, &[1]);
        let ctx = *q.order().context();
        let x1 = q.reduce(q.order().generator("x1").unwrap()).unwrap();
        let x2 = q.label("x2").unwrap();
        assert_eq!(x1, q.scale(&x2, &q.ring().monomial(q.ring().field().one(), 1)));
        assert_eq!(q.mul(&x2, &x2), q.scale_int(&q.label("lambda^2").unwrap(), -1));
        let y1 = q.truncated_exp(&x1).unwrap();
        assert!(!q.in_gamma_bar(&y1));
        let ind = independence_check(&q, &x1, &x2).unwrap();
        assert!(ind.holds);
        assert_eq!(ind.combinations_checked, 24);
        let degenerate = independence_check(&q, &x1, &x1).unwrap();
        assert_eq!(degenerate.first_failure, Some((1, 4)));
        assert_eq!(ctx.e, 4);
    }

    #[test]
    fn septimic_case() {
        let q = quotient(7, 3, 1, LocalCase::SeptimicCubic, &[1]);
        let x1 = q.reduce(q.order().generator("x1").unwrap()).unwrap();
        let x2 = q.label("x2").unwrap();
        let t = q.ring().monomial(q.ring().field().one(), 1);
        assert_eq!(x1, q.scale(&x2, &t));
        assert_eq!(q.mul(&x2, &x2), q.scale_int(&q.label("x3").unwrap(), -1));
        assert!(q.is_zero(&q.pow(&x2, 5)));
        // t·x̄3 comes from πx3 = λ^4 ∈ Γ_p.
        assert!(q.in_gamma_bar(&q.scale(&q.label("x3").unwrap(), &t)));
        let ind = independence_check(&q, &x1, &x2).unwrap();
        assert!(ind.holds);
        assert_eq!(ind.combinations_checked, 48);
    }

    #[test]
    fn structure_checks() {
        for (p, e, f, case, u) in [
            (5u64, 2u32, 1u32, LocalCase::LargeDegree, vec![1i64]),
            (5, 4, 2, LocalCase::DeepRamification, vec![2, 1]),
            (7, 3, 1, LocalCase::SeptimicCubic, vec![3, 1]),
            (11, 3, 1, LocalCase::LargeDegree, vec![2]),
        ] {
            let q = quotient(p, e, f, case, &u);
            assert!(q.associativity_spot_check(40, 7));
            assert!(q.delta_stable());
        }
    }

    #[test]
    fn delta_action_example() {
        let q = quotient(5, 2, 1, LocalCase::LargeDegree, &[1]);
        let x = q.label("x").unwrap();
        assert_eq!(q.delta_action(2, &x).unwrap(), q.scale_int(&x, 3));
        assert_eq!(q.delta_action(1, &x).unwrap(), x);
    }

    #[test]
    fn preconditions() {
        let ctx = LocalContext::new(5, 1, 1).unwrap();
        let order = OrderSpec::for_case(ctx, LocalCase::LargeDegree).unwrap();
        let err = build_quotient(&order, 1, &[1]).unwrap_err();
        assert!(err.to_string().contains("algebra_closed"));
        let ctx = LocalContext::new(5, 4, 1).unwrap();
        let order = OrderSpec::for_case(ctx, LocalCase::DeepRamification).unwrap();
        assert!(build_quotient(&order, 1, &[1])
            .unwrap_err()
            .to_string()
            .contains("scaled_inclusion"));
        assert!(build_quotient(&order, 5, &[1]).is_err());
        assert!(build_quotient(&order, 2, &[0, 1]).is_err());
    }
}
