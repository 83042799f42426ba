use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A monomial in the noncommuting indeterminates, as a sequence of letter indices.
pub type Monomial = Vec<u8>;

/// Degree-truncated noncommutative polynomial with integer coefficients.
///
/// Terms are kept in lexicographic monomial order; zero coefficients and
/// monomials longer than the truncation degree are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    truncation: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl NcPoly {
    pub fn zero(truncation: usize) -> Self {
        NcPoly {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(Vec::new(), BigInt::one(), truncation)
    }

    /// The indeterminate `X_letter`.
    pub fn generator(letter: u8, truncation: usize) -> Self {
        Self::monomial(vec![letter], BigInt::one(), truncation)
    }

    pub fn monomial(m: Monomial, coeff: BigInt, truncation: usize) -> Self {
        let mut p = Self::zero(truncation);
        p.add_term(m, coeff);
        p
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u8]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&[])
    }

    /// Adds `coeff * m`, dropping it if it exceeds the truncation degree.
    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() || m.len() > self.truncation {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &BigInt, other: &NcPoly) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn with_truncation(&self, truncation: usize) -> NcPoly {
        NcPoly {
            truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() <= truncation)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.with_truncation(self.truncation.min(other.truncation));
        out.add_scaled(&BigInt::one(), other);
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.with_truncation(self.truncation.min(other.truncation));
        out.add_scaled(&-BigInt::one(), other);
        out
    }

    pub fn scale(&self, c: &BigInt) -> NcPoly {
        let mut out = NcPoly::zero(self.truncation);
        out.add_scaled(c, self);
        out
    }

    /// Truncated product; the result truncates at the smaller of the two degrees.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let t = self.truncation.min(other.truncation);
        let mut out = NcPoly::zero(t);
        for (a, ca) in &self.terms {
            if a.len() > t {
                continue;
            }
            for (b, cb) in &other.terms {
                if a.len() + b.len() > t {
                    continue;
                }
                let mut m = Vec::with_capacity(a.len() + b.len());
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn homogeneous_part(&self, degree: usize) -> NcPoly {
        NcPoly {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == degree)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    /// Smallest degree carrying a nonzero term.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub(crate) fn first(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Renders terms as `coeff*X1X2`, using 1-based letter indices.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_empty() {
                    c.to_string()
                } else {
                    let mono: String = m.iter().map(|l| format!("X{}", l + 1)).collect();
                    format!("{c}*{mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly[<= {}]({})", self.truncation, self.to_text())
    }
}
