use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::ncpoly::{Monomial, NcPoly};

/// Sorted Lyndon words of a fixed length over an ordered alphabet of `rank` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LyndonBasis {
    rank: usize,
    degree: usize,
    words: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl LyndonBasis {
    fn from_words(rank: usize, degree: usize, words: Vec<Monomial>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        LyndonBasis {
            rank,
            degree,
            words,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn words(&self) -> &[Monomial] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// True if `w` is nonempty and strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    (1..n).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        w.iter().lt(rotated)
    })
}

/// Standard factorization `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len()).find(|&k| is_lyndon(&w[k..])).map(|k| (&w[..k], &w[k..]))
}

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut result = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Rank of the degree-`degree` part of the free Lie algebra on `rank` generators.
pub fn witt_dimension(rank: usize, degree: usize) -> usize {
    assert!(rank >= 1 && degree >= 1, "witt_dimension needs rank, degree >= 1");
    let r = BigInt::from(rank);
    let mut total = BigInt::from(0);
    for d in (1..=degree).filter(|d| degree.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu != 0 {
            total += BigInt::from(mu) * num_traits::pow(r.clone(), degree / d);
        }
    }
    let n: BigInt = total / degree;
    usize::try_from(n).expect("Witt dimension fits in usize")
}

/// Lyndon words of length at most `max_len`, in lexicographic order (Duval).
fn duval(rank: usize, max_len: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if rank == 0 || max_len == 0 {
        return out;
    }
    let top = (rank - 1) as i32;
    let mut w: Vec<i32> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().unwrap() += 1;
        out.push(w.iter().map(|&x| x as u8).collect());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
    }
    out
}

type BasisCache = RwLock<HashMap<(usize, usize), Arc<LyndonBasis>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized Lyndon basis of the given rank and degree.
pub fn lyndon_basis(rank: usize, degree: usize) -> Arc<LyndonBasis> {
    assert!(rank <= u8::MAX as usize, "alphabet too large");
    if let Some(b) = basis_cache().read().unwrap().get(&(rank, degree)) {
        return b.clone();
    }
    let words = super::cache::load_words(rank, degree).unwrap_or_else(|| {
        let w: Vec<Monomial> = duval(rank, degree).into_iter().filter(|w| w.len() == degree).collect();
        super::cache::store_words(rank, degree, &w);
        w
    });
    let basis = Arc::new(LyndonBasis::from_words(rank, degree, words));
    basis_cache()
        .write()
        .unwrap()
        .entry((rank, degree))
        .or_insert(basis)
        .clone()
}

fn poly_cache() -> &'static RwLock<HashMap<Monomial, Arc<NcPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<Monomial, Arc<NcPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Associative expansion of the standard bracketing of a Lyndon word.
///
/// The result has coefficient 1 on `w` itself and every other monomial is
/// lexicographically larger.
pub fn lyndon_polynomial(w: &[u8]) -> Arc<NcPoly> {
    debug_assert!(is_lyndon(w));
    if let Some(p) = poly_cache().read().unwrap().get(w) {
        return p.clone();
    }
    let p = match standard_factorization(w) {
        None => NcPoly::monomial(w.to_vec(), BigInt::one(), w.len()),
        Some((u, v)) => {
            let pu = lyndon_polynomial(u).with_truncation(w.len());
            let pv = lyndon_polynomial(v).with_truncation(w.len());
            pu.commutator(&pv)
        }
    };
    let p = Arc::new(p);
    poly_cache().write().unwrap().entry(w.to_vec()).or_insert(p).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        assert_eq!(lyndon_basis(2, 1).words(), &[vec![0u8], vec![1]]);
        assert_eq!(lyndon_basis(2, 2).words(), &[vec![0u8, 1]]);
        assert_eq!(lyndon_basis(2, 3).words(), &[vec![0u8, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_dimension(6, 1), 6);
        assert_eq!(witt_dimension(2, 2), 1);
        assert_eq!(witt_dimension(6, 3), 70);
        assert_eq!(witt_dimension(6, 5), 1554);
    }

    #[test]
    fn factorization_uses_longest_lyndon_suffix() {
        assert_eq!(standard_factorization(&[0, 0, 1]), Some((&[0u8][..], &[0u8, 1][..])));
        assert_eq!(standard_factorization(&[0, 1, 1]), Some((&[0u8, 1][..], &[1u8][..])));
        assert_eq!(
            standard_factorization(&[0, 1, 0, 1, 1]),
            Some((&[0u8, 1][..], &[0u8, 1, 1][..]))
        );
    }

    #[test]
    fn lyndon_polynomial_is_triangular() {
        for w in lyndon_basis(3, 4).words() {
            let p = lyndon_polynomial(w);
            assert_eq!(p.coefficient(w), BigInt::one());
            assert_eq!(p.first().unwrap().0, w);
        }
    }

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(!is_lyndon(&[]));
    }
}
