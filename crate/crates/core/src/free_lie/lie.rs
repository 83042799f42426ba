use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lyndon::{is_lyndon, lyndon_basis, lyndon_polynomial};
use super::ncpoly::{Monomial, NcPoly};
use crate::error::{Error, Result};

/// Element of the free Lie algebra in Lyndon coordinates, graded by degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieElement {
    rank: usize,
    coords: BTreeMap<usize, BTreeMap<Monomial, BigInt>>,
}

impl LieElement {
    pub fn zero(rank: usize) -> Self {
        LieElement {
            rank,
            coords: BTreeMap::new(),
        }
    }

    pub fn generator(rank: usize, letter: u8) -> Self {
        Self::basis_element(rank, vec![letter])
    }

    /// The standard bracketing of a Lyndon word. Panics if `word` is not Lyndon.
    pub fn basis_element(rank: usize, word: Monomial) -> Self {
        assert!(is_lyndon(&word), "not a Lyndon word: {word:?}");
        assert!(word.iter().all(|&l| (l as usize) < rank), "letter out of range");
        let mut e = Self::zero(rank);
        e.add_term(word, BigInt::one());
        e
    }

    /// Homogeneous element from dense coordinates over `lyndon_basis(rank, degree)`.
    pub fn from_dense(rank: usize, degree: usize, coords: &[BigInt]) -> Self {
        let basis = lyndon_basis(rank, degree);
        assert_eq!(coords.len(), basis.len(), "coordinate vector length");
        let mut e = Self::zero(rank);
        for (w, c) in basis.words().iter().zip(coords) {
            e.add_term(w.clone(), c.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn add_term(&mut self, word: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let deg = word.len();
        let part = self.coords.entry(deg).or_default();
        let v = part.entry(word.clone()).or_default();
        *v += c;
        if v.is_zero() {
            part.remove(&word);
            if part.is_empty() {
                self.coords.remove(&deg);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.coords.keys().copied().collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.coords.keys().next_back().copied()
    }

    pub fn part(&self, degree: usize) -> Option<&BTreeMap<Monomial, BigInt>> {
        self.coords.get(&degree)
    }

    pub fn coefficient(&self, word: &[u8]) -> BigInt {
        self.coords
            .get(&word.len())
            .and_then(|p| p.get(word))
            .cloned()
            .unwrap_or_default()
    }

    pub fn homogeneous_part(&self, degree: usize) -> LieElement {
        LieElement {
            rank: self.rank,
            coords: self
                .coords
                .get(&degree)
                .map(|p| BTreeMap::from([(degree, p.clone())]))
                .unwrap_or_default(),
        }
    }

    /// Dense coordinates of the degree-`degree` part over the Lyndon basis.
    pub fn dense_coords(&self, degree: usize) -> Vec<BigInt> {
        let basis = lyndon_basis(self.rank, degree);
        let mut out = vec![BigInt::zero(); basis.len()];
        if let Some(part) = self.coords.get(&degree) {
            for (w, c) in part {
                out[basis.index_of(w).expect("Lyndon word in basis")] = c.clone();
            }
        }
        out
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for part in other.coords.values() {
            for (w, c) in part {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> LieElement {
        let mut out = LieElement::zero(self.rank);
        for part in self.coords.values() {
            for (w, c) in part {
                out.add_term(w.clone(), c * s);
            }
        }
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.neg())
    }

    /// Associative expansion, truncated at `truncation`.
    pub fn to_ncpoly(&self, truncation: usize) -> NcPoly {
        let mut p = NcPoly::zero(truncation);
        for part in self.coords.values() {
            for (w, c) in part {
                if w.len() <= truncation {
                    p.add_scaled(c, &lyndon_polynomial(w));
                }
            }
        }
        p
    }

    /// `degree:word:coefficient` lines, words spelled with `name`.
    pub fn to_text_with(&self, name: impl Fn(u8) -> String) -> String {
        let mut s = String::new();
        for (deg, part) in &self.coords {
            for (w, c) in part {
                let word: String = w.iter().map(|&l| name(l)).collect();
                s.push_str(&format!("{deg}:{word}:{c}\n"));
            }
        }
        s
    }

    pub fn to_text(&self) -> String {
        self.to_text_with(|l| format!("x{}", l + 1))
    }
}

/// Expansion of the left-normed bracket `[..[[x1,x2],x3],..,xn]`.
fn left_normed_expansion(m: &[u8]) -> Vec<(Monomial, bool)> {
    let mut terms: Vec<(Monomial, bool)> = vec![(vec![m[0]], true)];
    for &y in &m[1..] {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (w, pos) in terms {
            let mut right = w.clone();
            right.push(y);
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(y);
            left.extend_from_slice(&w);
            next.push((right, pos));
            next.push((left, !pos));
        }
        terms = next;
    }
    terms
}

/// Dynkin–Specht–Wever test: a homogeneous `p` of degree `n` is Lie iff
/// applying the left-normed bracketing map to it gives `n * p`.
pub fn is_lie_dynkin(p: &NcPoly) -> bool {
    let degrees = p.degrees();
    if degrees.contains(&0) {
        return false;
    }
    degrees.into_iter().all(|n| {
        let part = p.homogeneous_part(n);
        let mut delta = NcPoly::zero(n);
        for (m, c) in part.terms() {
            for (w, pos) in left_normed_expansion(m) {
                delta.add_term(w, if pos { c.clone() } else { -c.clone() });
            }
        }
        delta == part.scale(&BigInt::from(n)).with_truncation(n)
    })
}

/// Lyndon coordinates of a Lie polynomial with zero constant term.
///
/// Each homogeneous component is certified by the Dynkin test and then
/// decomposed by triangular back-substitution: the smallest monomial of a Lie
/// polynomial is a Lyndon word whose coefficient is the coordinate.
pub fn assoc_coords(p: &NcPoly, rank: usize) -> Result<LieElement> {
    let mut out = LieElement::zero(rank);
    for n in p.degrees() {
        if n == 0 {
            return Err(Error::NotLie { degree: 0 });
        }
        let mut part = p.homogeneous_part(n).with_truncation(n);
        if !is_lie_dynkin(&part) {
            return Err(Error::NotLie { degree: n });
        }
        while let Some((m, c)) = part.first().map(|(m, c)| (m.clone(), c.clone())) {
            if !is_lyndon(&m) || m.iter().any(|&l| l as usize >= rank) {
                return Err(Error::NotLie { degree: n });
            }
            part.add_scaled(&-c.clone(), &lyndon_polynomial(&m));
            out.add_term(m, c);
        }
    }
    Ok(out)
}

/// Lie bracket; fails if any output degree would exceed `max_degree`.
pub fn lie_bracket(u: &LieElement, v: &LieElement, max_degree: usize) -> Result<LieElement> {
    assert_eq!(u.rank, v.rank, "rank mismatch");
    let (Some(du), Some(dv)) = (u.max_degree(), v.max_degree()) else {
        return Ok(LieElement::zero(u.rank));
    };
    if du + dv > max_degree {
        return Err(Error::DegreeOverflow {
            degree: du + dv,
            max: max_degree,
        });
    }
    let t = du + dv;
    let pu = u.to_ncpoly(t);
    let pv = v.to_ncpoly(t);
    assoc_coords(&pu.commutator(&pv), u.rank)
}
