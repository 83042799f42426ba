use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A generator or its inverse. Generators are numbered `0..2g`:
/// `a_1..a_g` first, then `b_1..b_g`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u8, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// `a1`, ..., `ag`, `b1`, ..., `bg` for generator indices `0..2g`.
pub fn generator_name(genus: usize, generator: u8) -> String {
    let k = generator as usize;
    if k < genus {
        format!("a{}", k + 1)
    } else {
        format!("b{}", k - genus + 1)
    }
}

/// Freely reduced word in the free group on `a_1..a_g, b_1..b_g`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    genus: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(genus: usize) -> Self {
        Word {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn generator(genus: usize, generator: u8) -> Self {
        assert!((generator as usize) < 2 * genus, "generator out of range");
        Word {
            genus,
            letters: vec![Letter::new(generator, false)],
        }
    }

    /// `a_i`, 1-based.
    pub fn a(genus: usize, i: usize) -> Self {
        Self::generator(genus, (i - 1) as u8)
    }

    /// `b_i`, 1-based.
    pub fn b(genus: usize, i: usize) -> Self {
        Self::generator(genus, (genus + i - 1) as u8)
    }

    /// Builds a word from letters, freely reducing.
    pub fn from_letters(genus: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            assert!((l.generator as usize) < 2 * genus, "generator out of range");
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { genus, letters: out }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        Word::from_letters(self.genus, self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.genus);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[x, y] = x y x^-1 y^-1`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// `w self w^-1`
    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.mul(self).mul(&w.inverse())
    }

    /// Strips matching first/last letters; the result is conjugate to `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word {
            genus: self.genus,
            letters: l[i..j].to_vec(),
        }
    }

    /// Exact conjugacy test in the free group: cyclically reduced forms must be
    /// cyclic rotations of each other.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        self.conjugator_to(other).is_some()
    }

    /// Some `u` with `self = u other u^-1`, if one exists.
    pub fn conjugator_to(&self, other: &Word) -> Option<Word> {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let (a, v) = self.cyclic_split();
        let (b, w) = other.cyclic_split();
        if a.len() != b.len() {
            return None;
        }
        let n = a.len();
        if n == 0 {
            return Some(v.mul(&w.inverse()));
        }
        // a = s t with b = t s, so a = t^-1 b t
        let m = (0..n).find(|&m| (0..n).all(|x| a[x] == b[(x + m) % n]))?;
        let t = Word::from_letters(self.genus, b[..m].iter().copied());
        Some(v.mul(&t.inverse()).mul(&w.inverse()))
    }

    /// `(c, v)` with `self = v c v^-1` and `c` cyclically reduced.
    fn cyclic_split(&self) -> (Vec<Letter>, Word) {
        let c = self.cyclic_reduce();
        let k = (self.len() - c.len()) / 2;
        let v = Word::from_letters(self.genus, self.letters[..k].iter().copied());
        (c.letters, v)
    }

    /// Exponent sums, one per generator.
    pub fn abelianization(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank()];
        for l in &self.letters {
            if l.inverse {
                v[l.generator as usize] -= 1;
            } else {
                v[l.generator as usize] += 1;
            }
        }
        v
    }

    pub fn to_text(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let n = generator_name(self.genus, l.generator);
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n
                }
            })
            .collect();
        toks.join(" ")
    }

    /// Parses whitespace-separated tokens `a1`, `b3`, `a1^-1`, with
    /// commutators `[w1, w2]`, parentheses and integer exponents; `1` is the
    /// identity.
    pub fn parse(genus: usize, text: &str) -> Result<Word> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let mut p = Parser {
            genus,
            chars: text.chars().collect(),
            pos: 0,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_text())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The surface relator `[a_1,b_1] ... [a_g,b_g]`.
pub fn surface_relator(genus: usize) -> Word {
    (1..=genus).fold(Word::identity(genus), |acc, j| {
        acc.mul(&Word::commutator(&Word::a(genus, j), &Word::b(genus, j)))
    })
}

struct Parser {
    genus: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        let ctx: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at column {} in {ctx:?}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity(self.genus);
        while let Some(c) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            let f = self.factor()?;
            w = w.mul(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("expected integer exponent"))
    }

    fn primary(&mut self) -> Result<Word> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                if self.peek() != Some(',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                let y = self.word()?;
                if self.peek() != Some(']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(&x, &y))
            }
            Some('(') => {
                self.pos += 1;
                let x = self.word()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(x)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity(self.genus))
            }
            Some(c @ ('a' | 'b')) => {
                self.pos += 1;
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let i: usize = s.parse().map_err(|_| self.err("expected generator index"))?;
                if i == 0 || i > self.genus {
                    return Err(self.err(&format!("generator {c}{i} out of range for genus {}", self.genus)));
                }
                Ok(if c == 'a' {
                    Word::a(self.genus, i)
                } else {
                    Word::b(self.genus, i)
                })
            }
            _ => Err(self.err("expected generator, '[', '(' or '1'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_tokens_and_commutators() {
        let w = Word::parse(3, "a1 b3 a1^-1").unwrap();
        assert_eq!(w.to_text(), "a1 b3 a1^-1");
        let c = Word::parse(3, "[a1, b2]").unwrap();
        assert_eq!(c.to_text(), "a1 b2 a1^-1 b2^-1");
        let nested = Word::parse(2, "[[a1,b1], a2]^2").unwrap();
        assert_eq!(nested.len(), 20);
        assert_eq!(Word::parse(2, "a1 a1^-1").unwrap(), Word::identity(2));
        assert_eq!(Word::parse(2, "1").unwrap(), Word::identity(2));
    }

    #[test]
    fn parse_errors() {
        assert!(Word::parse(2, "a3").is_err());
        assert!(Word::parse(2, "[a1 b1]").is_err());
        assert!(Word::parse(2, "c1").is_err());
        assert!(matches!(Word::parse(0, "a1"), Err(Error::ZeroGenus)));
    }

    #[test]
    fn relator_is_cyclically_reduced() {
        let r = surface_relator(3);
        assert_eq!(r.len(), 12);
        assert_eq!(r.cyclic_reduce(), r);
    }

    #[test]
    fn conjugacy() {
        let r = surface_relator(2);
        let w = Word::parse(2, "a2 b1^-1 a1").unwrap();
        assert!(r.conjugate_by(&w).is_conjugate_to(&r));
        assert!(!r.inverse().is_conjugate_to(&r));
        assert!(Word::identity(2).is_conjugate_to(&Word::identity(2)));
    }

    #[test]
    fn conjugator_recovers_conjugation() {
        let r = surface_relator(2);
        for text in ["1", "a2 b1^-1 a1", "b2^-1", "a1 b1 a1^-1"] {
            let w = Word::parse(2, text).unwrap();
            let x = r.conjugate_by(&w);
            let u = x.conjugator_to(&r).unwrap();
            assert_eq!(r.conjugate_by(&u), x);
        }
        let rot = Word::parse(2, "b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 a1").unwrap();
        let u = rot.conjugator_to(&r).unwrap();
        assert_eq!(r.conjugate_by(&u), rot);
        assert!(Word::parse(2, "a1 b1").unwrap().conjugator_to(&r).is_none());
    }
}
