use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::magnus::word::{generator_name, Word};

/// Endomorphism of the free group on `a_1..a_g, b_1..b_g`, given by the
/// images of the generators.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupEndo {
    genus: usize,
    images: Vec<Word>,
    abelianization: IntMatrix,
}

impl GroupEndo {
    pub fn new(genus: usize, images: Vec<Word>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if images.len() != 2 * genus || images.iter().any(|w| w.genus() != genus) {
            return Err(Error::Dimension(format!(
                "expected {} images of genus {genus}",
                2 * genus
            )));
        }
        let cols: Vec<Vec<_>> = images.iter().map(Word::abelianization).collect();
        let abelianization = IntMatrix::from_columns(2 * genus, &cols)?;
        Ok(GroupEndo {
            genus,
            images,
            abelianization,
        })
    }

    pub fn identity(genus: usize) -> Self {
        let images = (0..2 * genus as u8).map(|i| Word::generator(genus, i)).collect();
        Self::new(genus, images).expect("identity endo")
    }

    /// `x -> w x w^-1`
    pub fn inner(w: &Word) -> Self {
        let g = w.genus();
        let images = (0..2 * g as u8)
            .map(|i| Word::generator(g, i).conjugate_by(w))
            .collect();
        Self::new(g, images).expect("inner endo")
    }

    /// Identity except on the listed generators.
    pub fn from_assignments(genus: usize, assignments: &[(u8, Word)]) -> Result<Self> {
        let mut images: Vec<Word> = (0..2 * genus as u8).map(|i| Word::generator(genus, i)).collect();
        for (i, w) in assignments {
            let slot = images
                .get_mut(*i as usize)
                .ok_or_else(|| Error::Dimension(format!("generator index {i}")))?;
            *slot = w.clone();
        }
        Self::new(genus, images)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: u8) -> &Word {
        &self.images[generator as usize]
    }

    /// Matrix of the induced map on `H`; column `j` is the image of generator `j`.
    pub fn abelianization(&self) -> &IntMatrix {
        &self.abelianization
    }

    pub fn acts_trivially_on_h(&self) -> bool {
        self.abelianization == IntMatrix::identity(2 * self.genus)
    }

    pub fn apply(&self, w: &Word) -> Word {
        assert_eq!(w.genus(), self.genus, "genus mismatch");
        let letters = w.letters().iter().flat_map(|l| {
            let img = &self.images[l.generator as usize];
            if l.inverse {
                img.inverse().letters().to_vec()
            } else {
                img.letters().to_vec()
            }
        });
        Word::from_letters(self.genus, letters.collect::<Vec<_>>())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupEndo) -> GroupEndo {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        GroupEndo::new(self.genus, images).expect("composition")
    }

    /// Parses `genus g` followed by lines `x -> word`; `#` starts a comment.
    /// Generators without a line map to themselves.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty endo file".into()))?;
        let genus = parse_genus_header(header)?;
        let mut assignments = Vec::new();
        let mut seen = vec![false; 2 * genus];
        for line in lines {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected 'x -> word': {line:?}")))?;
            let lhs = Word::parse(genus, lhs)?;
            let gen = match lhs.letters() {
                [l] if !l.inverse => l.generator,
                _ => return Err(Error::Parse(format!("left side must be a generator: {line:?}"))),
            };
            if std::mem::replace(&mut seen[gen as usize], true) {
                return Err(Error::Parse(format!(
                    "generator {} assigned twice",
                    generator_name(genus, gen)
                )));
            }
            assignments.push((gen, Word::parse(genus, rhs)?));
        }
        Self::from_assignments(genus, &assignments)
    }

    /// Inverse of `parse`; identity images are omitted.
    pub fn to_text(&self) -> String {
        let mut s = format!("genus {}\n", self.genus);
        for (i, w) in self.images.iter().enumerate() {
            let x = Word::generator(self.genus, i as u8);
            if *w != x {
                s.push_str(&format!("{} -> {}\n", generator_name(self.genus, i as u8), w));
            }
        }
        s
    }
}

pub(crate) fn parse_genus_header(line: &str) -> Result<usize> {
    let rest = line
        .strip_prefix("genus")
        .ok_or_else(|| Error::Parse(format!("expected 'genus g', found {line:?}")))?;
    let g: usize = rest
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad genus in {line:?}")))?;
    if g == 0 {
        return Err(Error::ZeroGenus);
    }
    Ok(g)
}

impl fmt::Debug for GroupEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
