//! Exact ranks of integer and rational matrices.
//!
//! Small matrices go through fraction-free Bareiss elimination. Larger ones
//! use ranks modulo 62-bit primes: rank mod p never exceeds the rational rank,
//! and once the product of the primes tried exceeds the Hadamard bound for
//! minors one size larger than the best rank seen, that rank is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::poly::Rational;

/// Matrices with at most this many entries use Bareiss elimination.
pub const BAREISS_LIMIT: usize = 2_500;

/// Scales each row by the lcm of its denominators.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    rank(&integer_rows(rows))
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    if m.len() * cols <= BAREISS_LIMIT {
        rank_bareiss(m)
    } else {
        rank_multimodular(m)
    }
}

/// Fraction-free Gaussian elimination.
pub fn rank_bareiss(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'base: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62, descending.
fn primes() -> impl Iterator<Item = u64> {
    (0..).map(|i| (1u64 << 62) - 1 - 2 * i).filter(|&n| is_prime(n))
}

pub fn rank_mod_p(m: &[Vec<BigInt>], p: u64) -> usize {
    let bp = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&bp).to_u64().expect("reduced"))
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        let pivot_row: Vec<u64> = a[r][c..].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in a.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row) {
                let s = mul_mod(f, y, p);
                *x = if *x >= s { *x - s } else { *x + p - s };
            }
        }
        r += 1;
    }
    r
}

fn log2_norms(vectors: impl Iterator<Item = Vec<f64>>) -> Vec<f64> {
    let mut out: Vec<f64> = vectors
        .map(|sq| {
            let total: f64 = sq.iter().sum();
            if total <= 1.0 {
                0.0
            } else {
                0.5 * total.log2()
            }
        })
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

fn squared(x: &BigInt) -> f64 {
    let bits = x.abs().bits();
    if bits == 0 {
        0.0
    } else {
        // upper bound for x^2
        2f64.powi(2 * bits as i32)
    }
}

pub fn rank_multimodular(m: &[Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let full = rows.min(cols);
    if full == 0 {
        return 0;
    }
    let row_bits = log2_norms(m.iter().map(|row| row.iter().map(squared).collect()));
    let col_bits = log2_norms((0..cols).map(|j| m.iter().map(|row| squared(&row[j])).collect()));
    // log2 of the Hadamard bound for k×k minors
    let bound = |k: usize| -> f64 {
        let r: f64 = row_bits.iter().take(k).sum();
        let c: f64 = col_bits.iter().take(k).sum();
        r.min(c) + 1.0
    };
    let mut best = 0;
    let mut covered = 0.0;
    for p in primes() {
        best = best.max(rank_mod_p(m, p));
        if best == full {
            return best;
        }
        covered += (p as f64).log2();
        if covered > bound(best + 1) {
            return best;
        }
    }
    unreachable!("infinitely many primes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        let m = ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_bareiss(&m), 2);
        assert_eq!(rank_multimodular(&m), 2);
        assert_eq!(rank_bareiss(&ints(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_multimodular(&[]), 0);
    }

    #[test]
    fn rational_rows_are_cleared() {
        let rows = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 1), ratio(2, 1)]];
        assert_eq!(rank_rational(&rows), 1);
    }

    #[test]
    fn large_common_factor_does_not_fool_one_prime() {
        // every 2x2 minor is a multiple of the first prime tried
        let p = primes().next().unwrap() as i64;
        let m = ints(&[&[1, 0], &[0, p]]);
        assert_eq!(rank_mod_p(&m, p as u64), 1);
        assert_eq!(rank_multimodular(&m), 2);
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| p < (1 << 62) && is_prime(p)));
        assert!(!is_prime(1 << 61) && is_prime(2) && is_prime(97) && !is_prime(91));
    }

    #[test]
    fn bareiss_and_multimodular_agree_on_vandermonde_blocks() {
        // rank-deficient: rows are evaluations of degree <= 3 polynomials
        let m: Vec<Vec<BigInt>> = (0..8)
            .map(|i| (0..6).map(|j| BigInt::from(i + 2).pow(j.min(3) as u32)).collect())
            .collect();
        assert_eq!(rank_bareiss(&m), 4);
        assert_eq!(rank_multimodular(&m), 4);
    }
}
