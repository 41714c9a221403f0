//! Exact ranks of sparse ±1 matrices over GF(2), GF(p) and Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::FieldSpec;

/// A column given by its nonzero entries `(row, sign)`, sign being `±1`.
pub(crate) type SparseColumn = Vec<(usize, i8)>;

pub(crate) fn rank(field: FieldSpec, rows: usize, cols: &[SparseColumn]) -> usize {
    if rows == 0 || cols.is_empty() {
        return 0;
    }
    match field {
        FieldSpec::Prime(2) => rank_gf2(rows, cols),
        FieldSpec::Prime(p) => rank_gfp(p, rows, cols),
        FieldSpec::Rational => rank_rational(rows, cols),
    }
}

fn rank_gf2(rows: usize, cols: &[SparseColumn]) -> usize {
    let words = rows.div_ceil(64);
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut c = vec![0u64; words];
        for &(r, _) in col {
            c[r / 64] ^= 1 << (r % 64);
        }
        while let Some(lead) = lead_bit(&c) {
            match &pivots[lead] {
                Some(p) => c.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                None => {
                    pivots[lead] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn lead_bit(c: &[u64]) -> Option<usize> {
    c.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

fn rank_gfp(p: u32, rows: usize, cols: &[SparseColumn]) -> usize {
    let p = p as u64;
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut c = vec![0u64; rows];
        for &(r, s) in col {
            c[r] = if s > 0 { 1 } else { p - 1 };
        }
        while let Some(lead) = c.iter().rposition(|&x| x != 0) {
            match &pivots[lead] {
                // Pivots are normalized to a leading 1.
                Some(piv) => {
                    let f = c[lead];
                    for (a, &b) in c.iter_mut().zip(piv) {
                        *a = (*a + (p - f) * b) % p;
                    }
                }
                None => {
                    let inv = mod_pow(c[lead], p - 2, p);
                    c.iter_mut().for_each(|a| *a = *a * inv % p);
                    pivots[lead] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rank_rational(rows: usize, cols: &[SparseColumn]) -> usize {
    rank_rational_i128(rows, cols).unwrap_or_else(|| rank_rational_big(rows, cols))
}

/// Fraction-free elimination; `None` on overflow.
fn rank_rational_i128(rows: usize, cols: &[SparseColumn]) -> Option<usize> {
    let mut pivots: Vec<Option<Vec<i128>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut c = vec![0i128; rows];
        for &(r, s) in col {
            c[r] = s as i128;
        }
        while let Some(lead) = c.iter().rposition(|&x| x != 0) {
            match &pivots[lead] {
                Some(piv) => {
                    let a = piv[lead];
                    let b = c[lead];
                    for (x, &y) in c.iter_mut().zip(piv) {
                        *x = a.checked_mul(*x)?.checked_sub(b.checked_mul(y)?)?;
                    }
                    let g = c.iter().fold(0i128, |g, &x| g.gcd(&x));
                    if g > 1 {
                        c.iter_mut().for_each(|x| *x /= g);
                    }
                }
                None => {
                    pivots[lead] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

fn rank_rational_big(rows: usize, cols: &[SparseColumn]) -> usize {
    let mut pivots: Vec<Option<Vec<BigInt>>> = vec![None; rows];
    let mut rank = 0;
    for col in cols {
        let mut c = vec![BigInt::zero(); rows];
        for &(r, s) in col {
            c[r] = BigInt::from(s);
        }
        while let Some(lead) = c.iter().rposition(|x| !x.is_zero()) {
            match &pivots[lead] {
                Some(piv) => {
                    let a = piv[lead].clone();
                    let b = c[lead].clone();
                    for (x, y) in c.iter_mut().zip(piv) {
                        *x = &a * &*x - &b * y;
                    }
                    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs();
                    if g > BigInt::from(1) {
                        c.iter_mut().for_each(|x| *x = &*x / &g);
                    }
                }
                None => {
                    pivots[lead] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
