//! Graded pieces of the surface group: the free Lie algebra on `H` modulo the
//! ideal generated by `q = sum_j [a_j, b_j]`.
//!
//! The degree-`n` part of the ideal is spanned by `q` (at `n = 2`) and by
//! `[x_i, y]` with `x_i` a generator and `y` running over a spanning set of the
//! degree-`n-1` part. The spanning rows are put in unit-pivot echelon form;
//! the quotient basis is the set of Lyndon words that are not pivots.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::{surface_relator, Word};
use crate::error::{Error, Result};
use crate::free_lie::{lie_bracket, lyndon_basis, standard_factorization, LieElement, LyndonBasis, DEFAULT_MAX_DEGREE};
use crate::linalg::sparse::{sparse_from_dense, sparse_get};
use crate::linalg::{IntMatrix, SparseVec, UnitEchelon};

/// How a spanning vector of the ideal was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealGenerator {
    /// `q` itself (degree 2).
    Relator,
    /// `[x_letter, row parent of the previous degree]`.
    Bracket { letter: u8, parent: usize },
}

#[derive(Debug)]
pub struct SurfaceGr {
    genus: usize,
    degree: usize,
    ambient: Arc<LyndonBasis>,
    echelon: UnitEchelon,
    generators: Vec<IdealGenerator>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

/// `q` as a degree-2 Lie element.
pub fn relator_class(genus: usize) -> LieElement {
    let rank = 2 * genus;
    (0..genus).fold(LieElement::zero(rank), |acc, j| {
        acc.add(&LieElement::basis_element(rank, vec![j as u8, (genus + j) as u8]))
    })
}

/// Group commutator word realizing the standard bracketing of a Lyndon word.
pub fn lyndon_word_lift(genus: usize, w: &[u8]) -> Word {
    match standard_factorization(w) {
        None => Word::generator(genus, w[0]),
        Some((u, v)) => Word::commutator(&lyndon_word_lift(genus, u), &lyndon_word_lift(genus, v)),
    }
}

type GrCache = RwLock<HashMap<(usize, usize), Arc<SurfaceGr>>>;

fn cache() -> &'static GrCache {
    static CACHE: OnceLock<GrCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `surface_gr_capped` with the default degree cap.
pub fn surface_gr(genus: usize, degree: usize) -> Result<Arc<SurfaceGr>> {
    surface_gr_capped(genus, degree, DEFAULT_MAX_DEGREE)
}

/// Degree-`degree` graded piece of the genus-`genus` surface group.
pub fn surface_gr_capped(genus: usize, degree: usize, max_degree: usize) -> Result<Arc<SurfaceGr>> {
    if genus == 0 {
        return Err(Error::ZeroGenus);
    }
    if degree == 0 {
        return Err(Error::Dimension("degree must be at least 1".into()));
    }
    if degree > max_degree {
        return Err(Error::DegreeOverflow {
            degree,
            max: max_degree,
        });
    }
    if let Some(s) = cache().read().unwrap().get(&(genus, degree)) {
        return Ok(s.clone());
    }
    let built = Arc::new(build(genus, degree, max_degree)?);
    Ok(cache().write().unwrap().entry((genus, degree)).or_insert(built).clone())
}

fn lie_from_sparse(basis: &LyndonBasis, v: &SparseVec) -> LieElement {
    let mut e = LieElement::zero(basis.rank());
    for (i, c) in v {
        e.add_term(basis.words()[*i].clone(), c.clone());
    }
    e
}

fn build(genus: usize, degree: usize, max_degree: usize) -> Result<SurfaceGr> {
    let rank = 2 * genus;
    let ambient = lyndon_basis(rank, degree);
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut generators = Vec::new();
    if degree == 2 {
        rows.push(sparse_from_dense(&relator_class(genus).dense_coords(2)));
        generators.push(IdealGenerator::Relator);
    } else if degree > 2 {
        let prev = surface_gr_capped(genus, degree - 1, max_degree)?;
        let prev_rows: Vec<LieElement> = prev
            .echelon
            .rows
            .iter()
            .map(|(_, r)| lie_from_sparse(&prev.ambient, r))
            .collect();
        for letter in 0..rank as u8 {
            let x = LieElement::generator(rank, letter);
            for (parent, y) in prev_rows.iter().enumerate() {
                let b = lie_bracket(&x, y, degree)?;
                rows.push(sparse_from_dense(&b.dense_coords(degree)));
                generators.push(IdealGenerator::Bracket { letter, parent });
            }
        }
    }
    let echelon = UnitEchelon::build(ambient.len(), &rows);
    let divisors = echelon.divisors();
    if divisors.iter().any(|d| !d.is_one()) {
        return Err(Error::TorsionFound {
            genus,
            degree,
            divisors: divisors
                .iter()
                .filter(|d| !d.is_one() && !d.is_zero())
                .map(ToString::to_string)
                .collect(),
        });
    }
    if !echelon.residual.is_empty() {
        return Err(Error::NonStandardQuotient { genus, degree });
    }
    let mut is_pivot = vec![false; ambient.len()];
    for c in echelon.pivot_columns() {
        is_pivot[c] = true;
    }
    let basis: Vec<usize> = (0..ambient.len()).filter(|&i| !is_pivot[i]).collect();
    let mut position = vec![None; ambient.len()];
    for (k, &i) in basis.iter().enumerate() {
        position[i] = Some(k);
    }
    Ok(SurfaceGr {
        genus,
        degree,
        ambient,
        echelon,
        generators,
        basis,
        position,
    })
}

impl SurfaceGr {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Rank of the quotient.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> &LyndonBasis {
        &self.ambient
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient.len()
    }

    pub fn ideal_rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &UnitEchelon {
        &self.echelon
    }

    pub fn ideal_generators(&self) -> &[IdealGenerator] {
        &self.generators
    }

    /// Smith divisors of the ideal spanning matrix (all equal to one).
    pub fn relation_divisors(&self) -> Vec<BigInt> {
        self.echelon.divisors()
    }

    /// Ambient indices of the basis words.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_word(&self, k: usize) -> &[u8] {
        &self.ambient.words()[self.basis[k]]
    }

    pub fn basis_words(&self) -> Vec<&[u8]> {
        self.basis.iter().map(|&i| &self.ambient.words()[i][..]).collect()
    }

    pub fn position_of(&self, word: &[u8]) -> Option<usize> {
        self.ambient.index_of(word).and_then(|i| self.position[i])
    }

    /// Quotient coordinates of a sparse ambient vector.
    pub fn project_sparse(&self, v: &SparseVec) -> Vec<BigInt> {
        let r = self.echelon.reduce(v);
        let mut out = vec![BigInt::zero(); self.rank()];
        for (i, c) in r {
            let k = self.position[i].expect("reduced vector vanishes on pivots");
            out[k] = c;
        }
        out
    }

    /// Quotient coordinates of the degree-`n` part of a Lie element.
    pub fn project(&self, e: &LieElement) -> Vec<BigInt> {
        let mut v: SparseVec = Vec::new();
        if let Some(part) = e.part(self.degree) {
            for (w, c) in part {
                v.push((self.ambient.index_of(w).expect("Lyndon word"), c.clone()));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        self.project_sparse(&v)
    }

    /// `rank x ambient_rank` matrix of the projection.
    pub fn projection_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rank(), self.ambient_rank());
        for j in 0..self.ambient_rank() {
            for (k, c) in self.project_sparse(&vec![(j, BigInt::one())]).into_iter().enumerate() {
                m[(k, j)] = c;
            }
        }
        m
    }

    /// Lie element with the given quotient coordinates, supported on basis words.
    pub fn lift(&self, coords: &[BigInt]) -> LieElement {
        assert_eq!(coords.len(), self.rank(), "coordinate length");
        let mut e = LieElement::zero(self.ambient.rank());
        for (k, c) in coords.iter().enumerate() {
            e.add_term(self.ambient.words()[self.basis[k]].clone(), c.clone());
        }
        e
    }

    /// Canonical word lift of basis element `k`.
    pub fn lift_word(&self, k: usize) -> Word {
        lyndon_word_lift(self.genus, self.basis_word(k))
    }

    /// Whether a sparse ambient vector lies in the ideal.
    pub fn in_ideal(&self, v: &SparseVec) -> bool {
        self.echelon.reduce(v).is_empty()
    }

    /// Coefficients `(row, c)` of `v` over the echelon rows, if `v` is in the ideal.
    pub fn ideal_coefficients(&self, v: &SparseVec) -> Option<Vec<(usize, BigInt)>> {
        if !self.in_ideal(v) {
            return None;
        }
        Some(
            self.echelon
                .rows
                .iter()
                .enumerate()
                .filter_map(|(k, (col, _))| sparse_get(v, *col).map(|c| (k, c.clone())))
                .collect(),
        )
    }

    /// A word in the normal closure of the relator whose class in the free
    /// group's graded quotient is echelon row `k`.
    pub fn ideal_word(&self, k: usize) -> Result<Word> {
        let mut w = Word::identity(self.genus);
        for (j, c) in &self.echelon.combos[k] {
            let g = self.generator_word(*j)?;
            let e = i64::try_from(c).map_err(|_| Error::TooLarge("ideal coefficient".into()))?;
            w = w.mul(&g.pow(e));
        }
        Ok(w)
    }

    fn generator_word(&self, j: usize) -> Result<Word> {
        match self.generators[j] {
            IdealGenerator::Relator => Ok(surface_relator(self.genus)),
            IdealGenerator::Bracket { letter, parent } => {
                let prev = surface_gr_capped(self.genus, self.degree - 1, usize::MAX)?;
                let y = prev.ideal_word(parent)?;
                Ok(Word::commutator(&Word::generator(self.genus, letter), &y))
            }
        }
    }
}
