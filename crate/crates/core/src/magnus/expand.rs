use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::Word;
use crate::error::{Error, Result};
use crate::free_lie::{assoc_coords, LieElement, Monomial, NcPoly};

/// Magnus expansion `x -> 1 + X`, `x^-1 -> 1 - X + X^2 - ...`, truncated at `m`.
pub fn magnus_expand(w: &Word, m: usize) -> NcPoly {
    let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::from([(Vec::new(), BigInt::one())]);
    for l in w.letters() {
        let x = l.generator;
        let mut next: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (mono, c) in terms {
            let room = m - mono.len();
            let mut grown = mono;
            let mut coeff = c;
            let mut k = 0;
            loop {
                let e = next.entry(grown.clone()).or_insert_with(BigInt::zero);
                *e += &coeff;
                if k == room || (!l.inverse && k == 1) {
                    break;
                }
                grown.push(x);
                if l.inverse {
                    coeff = -coeff;
                }
                k += 1;
            }
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    let mut p = NcPoly::zero(m);
    for (mono, c) in terms {
        p.add_term(mono, c);
    }
    p
}

/// Lowest degree of `magnus_expand(w) - 1`, or a sentinel past the cap.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Filtration {
    Degree(usize),
    /// No nonzero part up to the cap; the payload is `cap + 1`.
    AtLeast(usize),
}

impl Filtration {
    /// Lower bound on the filtration degree.
    pub fn lower_bound(self) -> usize {
        match self {
            Filtration::Degree(n) | Filtration::AtLeast(n) => n,
        }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filtration::Degree(n) => write!(f, "{n}"),
            Filtration::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

fn reduced_expansion(w: &Word, m: usize) -> NcPoly {
    let mut p = magnus_expand(w, m);
    p.add_term(Vec::new(), -BigInt::one());
    p
}

pub fn filtration_degree(w: &Word, m: usize) -> Filtration {
    match reduced_expansion(w, m).lowest_degree() {
        Some(n) => Filtration::Degree(n),
        None => Filtration::AtLeast(m + 1),
    }
}

/// Class of `w` in the free-group graded quotient of its filtration degree.
pub fn gr_class(w: &Word, max_degree: usize) -> Result<LieElement> {
    let p = reduced_expansion(w, max_degree);
    let Some(n) = p.lowest_degree() else {
        return Err(Error::TrivialWithinCap { max: max_degree });
    };
    assoc_coords(&p.homogeneous_part(n), w.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Word {
        Word::a(2, i)
    }

    #[test]
    fn expansion_examples() {
        let p = magnus_expand(&x(1), 3);
        assert_eq!(p.to_text(), "1 + 1*X1");
        let q = magnus_expand(&x(1).inverse(), 2);
        assert_eq!(q.to_text(), "1 + -1*X1 + 1*X1X1");
        let c = magnus_expand(&Word::commutator(&x(1), &x(2)), 2);
        assert_eq!(c.to_text(), "1 + 1*X1X2 + -1*X2X1");
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(filtration_degree(&Word::identity(2), 4), Filtration::AtLeast(5));
        assert_eq!(filtration_degree(&x(1), 4), Filtration::Degree(1));
        let c = Word::commutator(&Word::commutator(&x(1), &x(2)), &x(1));
        assert_eq!(filtration_degree(&c, 4), Filtration::Degree(3));
    }

    #[test]
    fn gr_class_of_commutator() {
        let e = gr_class(&Word::commutator(&x(1), &x(2)), 4).unwrap();
        assert_eq!(e.degrees(), vec![2]);
        assert_eq!(e.coefficient(&[0, 1]), BigInt::one());
        assert!(matches!(
            gr_class(&Word::identity(2), 3),
            Err(Error::TrivialWithinCap { max: 3 })
        ));
    }
}
