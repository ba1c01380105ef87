//! Small dense linear algebra over Z, Z/p^N and F_p.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::padic::{inv_mod_u64, prime_power, valuation_of_int};
use crate::error::{Error, Result};

/// Solves `A x = b` modulo `p^n` for a matrix invertible over Z_p,
/// pivoting only on units.
pub fn solve_mod_prime_power(a: &[Vec<BigInt>], b: &[BigInt], p: u64, n: u32) -> Result<Vec<BigInt>> {
    let m = prime_power(p, n);
    let dim = a.len();
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r: Vec<BigInt> = row.iter().map(|c| c.mod_floor(&m)).collect();
            r.push(rhs.mod_floor(&m));
            r
        })
        .collect();
    let pb = BigInt::from(p);
    for col in 0..dim {
        let pivot = (col..dim)
            .find(|&r| !(&rows[r][col] % &pb).is_zero())
            .ok_or_else(|| Error::PrecisionExhausted(format!("no unit pivot in column {col}")))?;
        rows.swap(col, pivot);
        let inv = rows[col][col].extended_gcd(&m).x.mod_floor(&m);
        for c in col..=dim {
            rows[col][c] = (&rows[col][c] * &inv).mod_floor(&m);
        }
        for r in 0..dim {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..=dim {
                let v = &rows[r][c] - &factor * &rows[col][c];
                rows[r][c] = v.mod_floor(&m);
            }
        }
    }
    Ok(rows.into_iter().map(|r| r[dim].clone()).collect())
}

/// Exact determinant of an integer matrix (fraction-free Bareiss elimination).
pub fn bareiss_determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Diagonal valuations of the Smith form of an integer matrix over Z/p^f.
/// Zero diagonal entries are reported as `f`.
pub fn smith_valuations_mod_prime_power(a: &[Vec<u64>], p: u64, f: u32) -> Vec<u32> {
    let modulus = p.pow(f);
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&c| c % modulus).collect()).collect();
    let val = |x: u64| -> u32 {
        if x == 0 {
            return f;
        }
        valuation_of_int(p, &BigInt::from(x)).unwrap_or(f).min(f)
    };
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % modulus as u128) as u64;
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                let v = val(x);
                if v < f && best.is_none_or(|b| v < b.2) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            diag.extend(std::iter::repeat_n(f, rows.min(cols) - k));
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let pv = p.pow(v);
        let unit = m[k][k] / pv;
        let unit_inv = inv_mod_u64(unit % modulus, modulus).expect("unit part");
        for c in k..cols {
            m[k][c] = mulm(m[k][c], unit_inv);
        }
        // Pivot is now p^v; every other entry in its row and column is divisible by p^v.
        for r in 0..rows {
            if r == k || m[r][k] == 0 {
                continue;
            }
            let factor = m[r][k] / pv;
            for c in k..cols {
                let sub = mulm(factor, m[k][c]);
                m[r][c] = (m[r][c] + modulus - sub) % modulus;
            }
        }
        for c in k + 1..cols {
            m[k][c] = 0;
        }
        diag.push(v);
    }
    diag
}

/// Basis of the left kernel `{v : v A = 0}` of a matrix over F_p.
pub fn left_kernel_mod_p(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    // Left kernel of A = right kernel of A^T.
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut t: Vec<Vec<u64>> = (0..cols).map(|j| (0..rows).map(|i| a[i][j] % p).collect()).collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..rows {
        let Some(pr) = (r..cols).find(|&i| t[i][c] != 0) else {
            continue;
        };
        t.swap(r, pr);
        let inv = inv_mod_u64(t[r][c], p).expect("field");
        for x in t[r].iter_mut() {
            *x = mulm(*x, inv);
        }
        for i in 0..cols {
            if i != r && t[i][c] != 0 {
                let factor = t[i][c];
                for j in 0..rows {
                    let sub = mulm(factor, t[r][j]);
                    t[i][j] = (t[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == cols {
            break;
        }
    }
    let free: Vec<usize> = (0..rows).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; rows];
            v[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - t[ri][fc]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn determinant() {
        assert_eq!(bareiss_determinant(&big(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(
            bareiss_determinant(&big(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]])),
            BigInt::from(-3)
        );
        assert_eq!(bareiss_determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn solve_unit_system() {
        let a = big(&[&[1, 5], &[2, 1]]);
        let b = vec![BigInt::from(3), BigInt::from(4)];
        let x = solve_mod_prime_power(&a, &b, 7, 3).unwrap();
        let m = BigInt::from(343);
        for (row, rhs) in a.iter().zip(&b) {
            let lhs: BigInt = row.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert_eq!(lhs.mod_floor(&m), rhs.mod_floor(&m));
        }
        let singular = big(&[&[7, 0], &[0, 1]]);
        assert!(solve_mod_prime_power(&singular, &b, 7, 3).is_err());
    }

    #[test]
    fn smith_local() {
        // diag(1, 5, 0) over Z/25 after mixing
        let a = vec![vec![1, 2, 0], vec![3, 11, 0], vec![0, 0, 0]];
        assert_eq!(smith_valuations_mod_prime_power(&a, 5, 2), vec![0, 1, 2]);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(smith_valuations_mod_prime_power(&id, 7, 1), vec![0, 0]);
    }

    #[test]
    fn left_kernel() {
        let a = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = left_kernel_mod_p(&a, 5);
        assert_eq!(k.len(), 1);
        for v in &k {
            for j in 0..2 {
                let s: u64 = (0..3).map(|i| v[i] * a[i][j]).sum();
                assert_eq!(s % 5, 0);
            }
        }
    }
}
