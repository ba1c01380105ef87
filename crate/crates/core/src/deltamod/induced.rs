//! Induced modules `ind_{Δ_0}^Δ(Z/p^f)` and their `ω^j`-eigenspaces.

use serde::Serialize;

use crate::arith::linalg::smith_valuations_mod_prime_power;
use crate::arith::padic::{inv_mod_u64, is_prime, pow_mod_u64, primitive_root, teichmuller};
use crate::error::{Error, Result};
use num_traits::ToPrimitive;

/// Orders of the subgroups of the cyclic group `Δ`, i.e. the divisors of `p-1`.
pub fn subgroup_orders(p: u64) -> Vec<u64> {
    (1..p).filter(|d| (p - 1).is_multiple_of(*d)).collect()
}

/// Subgroup orders `|Δ_0|` with `-1 ∈ Δ_0` (the even divisors of `p-1`).
pub fn subgroups_containing_minus_one(p: u64) -> Vec<u64> {
    subgroup_orders(p).into_iter().filter(|d| d % 2 == 0).collect()
}

/// `ind_{Δ_0}^Δ(Z/p^f)` with `Δ_0` acting on `Z/p^f` through `ω mod p^f`.
///
/// With `g` a primitive root and `r = [Δ:Δ_0]`, the basis is `e_i = g^i ⊗ 1`
/// for `i < r`, and `Δ_0 = ⟨g^r⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedModule {
    prime: u64,
    exponent: u32,
    subgroup_order: u64,
    generator: u64,
    modulus: u64,
    /// `ω(g) mod p^f`.
    omega_g: u64,
}

impl InducedModule {
    pub fn new(prime: u64, subgroup_order: u64, exponent: u32) -> Result<Self> {
        if prime < 3 || !is_prime(prime) {
            return Err(Error::Domain(format!("{prime} is not an odd prime")));
        }
        if subgroup_order == 0 || !(prime - 1).is_multiple_of(subgroup_order) {
            return Err(Error::Domain(format!("{subgroup_order} does not divide {}", prime - 1)));
        }
        if exponent == 0 {
            return Err(Error::Domain("exponent f must be positive".into()));
        }
        let modulus = prime
            .checked_pow(exponent)
            .filter(|m| *m < (1 << 40))
            .ok_or_else(|| Error::Domain(format!("p^f = {prime}^{exponent} too large")))?;
        let generator = primitive_root(prime);
        let omega_g = teichmuller(prime, generator as i64, exponent)?
            .value()
            .to_u64()
            .expect("fits");
        Ok(InducedModule {
            prime,
            exponent,
            subgroup_order,
            generator,
            modulus,
            omega_g,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn subgroup_order(&self) -> u64 {
        self.subgroup_order
    }

    /// Number of cosets `r = [Δ:Δ_0]`, the rank over `Z/p^f`.
    pub fn rank(&self) -> usize {
        ((self.prime - 1) / self.subgroup_order) as usize
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains_minus_one(&self) -> bool {
        self.subgroup_order.is_multiple_of(2)
    }

    /// Discrete log base `g` of a unit mod p.
    pub fn log(&self, a: u64) -> Result<u64> {
        let a = a % self.prime;
        (0..self.prime - 1)
            .find(|&k| pow_mod_u64(self.generator, k, self.prime) == a)
            .ok_or_else(|| Error::Domain(format!("{a} is not a unit mod {}", self.prime)))
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// Matrix of `g^k` (column `i` is the image of `e_i`).
    pub fn action_matrix_log(&self, k: u64) -> Vec<Vec<u64>> {
        let r = self.rank() as u64;
        let n = self.prime - 1;
        let mut m = vec![vec![0u64; r as usize]; r as usize];
        for i in 0..r {
            let s = (k + i) % n;
            let (q, target) = (s / r, s % r);
            // g^{k+i} = g^{target} · (g^r)^q, and g^r ∈ Δ_0 acts by ω(g)^{rq}.
            m[target as usize][i as usize] = pow_mod_u64(self.omega_g, r * q, self.modulus);
        }
        m
    }

    /// Matrix of `σ_a`.
    pub fn action_matrix(&self, a: u64) -> Result<Vec<Vec<u64>>> {
        Ok(self.action_matrix_log(self.log(a)?))
    }

    pub fn apply(&self, matrix: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + self.mulm(a, b)) % self.modulus)
            })
            .collect()
    }

    fn matmul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, k| (acc + self.mulm(a[i][k], b[k][j])) % self.modulus))
                    .collect()
            })
            .collect()
    }

    /// `M_{g^a} M_{g^b} = M_{g^{a+b}}`, `M_{g^{p-1}} = I`, and `Δ_0` acting on
    /// `e_0` through `ω`.
    pub fn verify_action(&self) -> bool {
        let n = self.prime - 1;
        let mats: Vec<_> = (0..n).map(|k| self.action_matrix_log(k)).collect();
        let identity: Vec<Vec<u64>> = (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| u64::from(i == j)).collect())
            .collect();
        if mats[0] != identity {
            return false;
        }
        for a in 0..n as usize {
            for b in 0..n as usize {
                if self.matmul(&mats[a], &mats[b]) != mats[(a + b) % n as usize] {
                    return false;
                }
            }
        }
        let r = self.rank() as u64;
        let mut e0 = vec![0u64; self.rank()];
        e0[0] = 1;
        (0..self.subgroup_order).all(|q| {
            let k = (r * q) % n;
            let img = self.apply(&mats[k as usize], &e0);
            let mut want = vec![0u64; self.rank()];
            want[0] = pow_mod_u64(self.omega_g, k, self.modulus);
            img == want
        })
    }

    /// `e_{ω^j} = (p-1)^{-1} Σ_δ ω(δ)^{-j} M_δ` mod `p^f`.
    pub fn projector(&self, j: i64) -> Vec<Vec<u64>> {
        let n = self.prime - 1;
        let r = self.rank();
        let inv_n = inv_mod_u64(n % self.modulus, self.modulus).expect("p-1 is a unit");
        let omega_g_inv = inv_mod_u64(self.omega_g, self.modulus).expect("unit");
        let mut acc = vec![vec![0u64; r]; r];
        for k in 0..n {
            // ω(g^k)^{-j} = ω(g)^{-jk}.
            let e = ((j.rem_euclid(n as i64) as u64) * k) % n;
            let w = pow_mod_u64(omega_g_inv, e, self.modulus);
            let m = self.action_matrix_log(k);
            for (row, mrow) in acc.iter_mut().zip(&m) {
                for (x, &y) in row.iter_mut().zip(mrow) {
                    *x = (*x + self.mulm(w, y)) % self.modulus;
                }
            }
        }
        for row in acc.iter_mut() {
            for x in row.iter_mut() {
                *x = self.mulm(*x, inv_n);
            }
        }
        acc
    }
}

/// Invariant factors `p^{a_1}, ..., p^{a_s}` (all `a_i >= 1`) of the
/// `ω^j`-part, as exponents `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenspace {
    pub j: i64,
    pub exponents: Vec<u32>,
}

impl Eigenspace {
    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponents.len() <= 1
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn orders(&self, p: u64) -> Vec<u64> {
        self.exponents.iter().map(|&a| p.pow(a)).collect()
    }
}

/// Image of the projector, read off its Smith form over `Z/p^f`.
pub fn eigenspace(module: &InducedModule, j: i64) -> Eigenspace {
    let f = module.exponent;
    let mut exponents: Vec<u32> = smith_valuations_mod_prime_power(&module.projector(j), module.prime, f)
        .into_iter()
        .filter(|&v| v < f)
        .map(|v| f - v)
        .collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    Eigenspace { j, exponents }
}

/// Whether the `ω^{-1}`-part of `ind_{Δ_0}^Δ(Z/p^f)` is nonzero.
pub fn omega_inverse_part_nontrivial(p: u64, subgroup_order: u64, f: u32) -> Result<bool> {
    let module = InducedModule::new(p, subgroup_order, f)?;
    if !module.contains_minus_one() {
        return Err(Error::Precondition("Δ_0 must contain -1".into()));
    }
    Ok(!eigenspace(&module, -1).is_trivial())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceRecord {
    pub subgroup_order: u64,
    pub f: u32,
    pub orders: Vec<u64>,
    pub nontrivial: bool,
    pub cyclic: bool,
    /// `Δ_0 ⊆ {±1}`.
    pub predicted_nontrivial: bool,
    pub action_verified: bool,
    /// The eigenspaces over all `j` exhaust the module.
    pub complete: bool,
}

impl EigenspaceRecord {
    pub fn passed(&self) -> bool {
        self.cyclic && self.nontrivial == self.predicted_nontrivial && self.action_verified && self.complete
    }
}

/// Every `Δ_0 ∋ -1` and `1 <= f <= f_bound`.
pub fn eigenspace_sweep(p: u64, f_bound: u32) -> Result<Vec<EigenspaceRecord>> {
    let mut out = Vec::new();
    for d0 in subgroups_containing_minus_one(p) {
        for f in 1..=f_bound {
            let module = InducedModule::new(p, d0, f)?;
            let minus = eigenspace(&module, -1);
            let total: u32 = (0..(p - 1) as i64).map(|j| eigenspace(&module, j).log_order()).sum();
            out.push(EigenspaceRecord {
                subgroup_order: d0,
                f,
                orders: minus.orders(p),
                nontrivial: !minus.is_trivial(),
                cyclic: minus.is_cyclic(),
                predicted_nontrivial: d0 <= 2,
                action_verified: module.verify_action(),
                complete: total == module.rank() as u32 * f,
            });
        }
    }
    Ok(out)
}
