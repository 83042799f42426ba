//! Gaussian elimination over the field with `p` elements.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{mod_floor, IntMatrix};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut e, mut acc) = (a as u128 % p as u128, p - 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn to_rows(a: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    let pb = BigInt::from(p);
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| mod_floor(x, &pb).to_u64().expect("reduced entry"))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                let pivot = m[r].clone();
                for (x, &y) in m[k].iter_mut().zip(&pivot) {
                    let sub = (f as u128 * y as u128 % p as u128) as u64;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    assert!(is_prime(p), "modulus must be prime");
    let mut m = to_rows(a, p);
    rref(&mut m, a.cols(), p).len()
}

/// Basis of `{x : a x = 0}` over the field with `p` elements, entries in `0..p`.
pub fn nullspace_mod_p(a: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    assert!(is_prime(p), "modulus must be prime");
    let n = a.cols();
    let mut m = to_rows(a, p);
    let pivots = rref(&mut m, n, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(rank_mod_p(&a, 2), 1);
        assert_eq!(nullspace_mod_p(&a, 2), vec![vec![1, 1]]);
        let b = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank_mod_p(&b, 2), 1);
        assert_eq!(rank_mod_p(&b, 3), 1);
        assert_eq!(rank_mod_p(&b, 5), 2);
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
