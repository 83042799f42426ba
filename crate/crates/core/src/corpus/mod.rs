//! Versioned corpus of Torelli endos with frozen τ values.
//!
//! File layout: an optional header (comments and an `oracle: <hex>` line),
//! then blocks separated by `---` lines. Each block has `key: value` lines
//! (`id`, `mode`, `expected_tau`, `provenance`) followed by an endo in the
//! `genus g` / `x -> word` format.

mod recipe;

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::johnson::{johnson_tau, validate_endo, GroupEndo, TorelliEndo, ValidationMode};
use crate::linalg::{rank, IntMatrix};
use crate::report::Report;
use crate::sp_modules::{build_standard_maps, wedge_basis};

pub use recipe::{g3_recipe, seed_endo, separating_twist};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub endo: GroupEndo,
    pub mode: ValidationMode,
    /// `None` while unfrozen.
    pub expected_tau: Option<Vec<BigInt>>,
    pub provenance: String,
}

impl CorpusEntry {
    pub fn genus(&self) -> usize {
        self.endo.genus()
    }

    /// Validation errors carry the entry id.
    pub fn validate(&self) -> Result<TorelliEndo> {
        validate_endo(&self.endo, self.mode).map_err(|e| match e {
            Error::NotTorelli(r) => Error::NotTorelli(format!("entry {}: {r}", self.id)),
            e => Error::Corpus(format!("entry {}: {e}", self.id)),
        })
    }

    pub fn compute_tau(&self) -> Result<Vec<BigInt>> {
        let t = self.validate()?;
        johnson_tau(&t).map_err(|e| Error::Corpus(format!("entry {}: {e}", self.id)))
    }

    fn to_text(&self) -> String {
        let tau = match &self.expected_tau {
            Some(v) => v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            None => "unfrozen".into(),
        };
        format!(
            "id: {}\nmode: {}\nexpected_tau: {tau}\nprovenance: {}\n{}",
            self.id,
            self.mode,
            self.provenance,
            self.endo.to_text()
        )
    }

    fn parse(block: &str) -> Result<Self> {
        let mut id = None;
        let mut mode = None;
        let mut tau = None;
        let mut provenance = String::new();
        let mut body = String::new();
        let mut in_body = false;
        for raw in block.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if in_body || line.starts_with("genus") {
                in_body = true;
                body.push_str(line);
                body.push('\n');
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected 'key: value', got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "id" => id = Some(value.to_string()),
                "mode" => mode = Some(ValidationMode::parse(value)?),
                "expected_tau" => {
                    tau = Some(if value == "unfrozen" {
                        None
                    } else {
                        Some(
                            value
                                .split_whitespace()
                                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad tau entry {t:?}"))))
                                .collect::<Result<Vec<BigInt>>>()?,
                        )
                    })
                }
                "provenance" => provenance = value.to_string(),
                k => return Err(Error::Parse(format!("unknown corpus key {k:?}"))),
            }
        }
        let id = id.ok_or_else(|| Error::Parse("corpus entry without id".into()))?;
        let with_id = |e: Error| Error::Parse(format!("entry {id}: {e}"));
        let endo = GroupEndo::parse(&body).map_err(with_id)?;
        let mode = mode.ok_or_else(|| with_id(Error::Parse("missing mode".into())))?;
        let expected_tau = tau.ok_or_else(|| with_id(Error::Parse("missing expected_tau".into())))?;
        if let Some(t) = &expected_tau {
            let n = wedge_basis(2 * endo.genus(), 3).len();
            if t.len() != n {
                return Err(with_id(Error::Parse(format!(
                    "expected_tau has {} entries, want {n}",
                    t.len()
                ))));
            }
        }
        Ok(CorpusEntry {
            id,
            endo,
            mode,
            expected_tau,
            provenance,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    /// Fingerprint of the implementation that froze the values.
    pub oracle: Option<String>,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self> {
        let mut chunks = split_blocks(text);
        let header = chunks.remove(0);
        let mut oracle = None;
        for line in header.lines().map(|l| l.split('#').next().unwrap_or("").trim()) {
            if line.is_empty() {
                continue;
            }
            match line.strip_prefix("oracle:") {
                Some(h) => oracle = Some(h.trim().to_string()),
                None => return Err(Error::Parse(format!("unexpected header line {line:?}"))),
            }
        }
        let entries = chunks
            .iter()
            .filter(|c| c.lines().any(|l| !l.split('#').next().unwrap_or("").trim().is_empty()))
            .map(|c| CorpusEntry::parse(c))
            .collect::<Result<Vec<_>>>()?;
        let mut ids = std::collections::HashSet::new();
        if let Some(e) = entries.iter().find(|e| !ids.insert(e.id.as_str())) {
            return Err(Error::Parse(format!("duplicate corpus id {:?}", e.id)));
        }
        Ok(Corpus { oracle, entries })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(h) = &self.oracle {
            writeln!(s, "oracle: {h}").unwrap();
        }
        for e in &self.entries {
            s.push_str("---\n");
            s.push_str(&e.to_text());
        }
        s
    }

    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Validates every entry.
    pub fn validate(&self) -> Result<Vec<TorelliEndo>> {
        self.entries.iter().map(CorpusEntry::validate).collect()
    }

    pub fn compute_taus(&self) -> Result<Vec<Vec<BigInt>>> {
        self.entries.iter().map(CorpusEntry::compute_tau).collect()
    }
}

fn split_blocks(text: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            out.push(String::new());
        } else {
            let last = out.last_mut().expect("nonempty");
            last.push_str(line);
            last.push('\n');
        }
    }
    out
}

/// Reads and validates a corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
    let corpus = Corpus::parse(&text)?;
    corpus.validate()?;
    Ok(corpus)
}

/// Writes `corpus`; an existing file is only replaced when `overwrite` is set.
pub fn save_corpus(path: impl AsRef<Path>, corpus: &Corpus, overwrite: bool) -> Result<()> {
    let path = path.as_ref();
    if path.exists() && !overwrite {
        return Err(Error::Corpus(format!(
            "{} exists; pass the overwrite flag to replace it",
            path.display()
        )));
    }
    std::fs::write(path, corpus.to_text()).map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))
}

/// Hex SHA-256 over the conventions τ depends on: the matrix of `f` at genus
/// `g` and the ordering of the `Λ³H` basis.
pub fn oracle_fingerprint(g: usize) -> Result<String> {
    let maps = build_standard_maps(g)?;
    let mut h = Sha256::new();
    h.update(format!("genus {g}\n"));
    for t in wedge_basis(2 * g, 3) {
        h.update(format!("{t:?}\n"));
    }
    h.update(maps.f.matrix.to_text());
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauChange {
    /// An unfrozen entry received its first value.
    Frozen { id: String, tau: Vec<BigInt> },
    Changed {
        id: String,
        old: Vec<BigInt>,
        new: Vec<BigInt>,
    },
}

impl TauChange {
    pub fn id(&self) -> &str {
        match self {
            TauChange::Frozen { id, .. } | TauChange::Changed { id, .. } => id,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Regeneration {
    pub corpus: Corpus,
    /// In corpus order.
    pub diffs: Vec<TauChange>,
}

/// Recomputes every τ. Nothing is written; use [`save_corpus`] with the
/// overwrite flag to persist the result.
pub fn regenerate_expected(corpus: &Corpus) -> Result<Regeneration> {
    let mut out = corpus.clone();
    let mut diffs = Vec::new();
    let mut genera: Vec<usize> = corpus.entries.iter().map(CorpusEntry::genus).collect();
    genera.sort_unstable();
    genera.dedup();
    out.oracle = match genera.as_slice() {
        [g] => Some(oracle_fingerprint(*g)?),
        _ => None,
    };
    for e in &mut out.entries {
        let tau = e.compute_tau()?;
        match &e.expected_tau {
            None => diffs.push(TauChange::Frozen {
                id: e.id.clone(),
                tau: tau.clone(),
            }),
            Some(old) if *old != tau => diffs.push(TauChange::Changed {
                id: e.id.clone(),
                old: old.clone(),
                new: tau.clone(),
            }),
            Some(_) => {}
        }
        e.expected_tau = Some(tau);
    }
    Ok(Regeneration { corpus: out, diffs })
}

/// Rank of the lattice spanned by the given τ vectors.
pub fn tau_span_rank(taus: &[Vec<BigInt>]) -> Result<usize> {
    if taus.is_empty() {
        return Ok(0);
    }
    Ok(rank(&IntMatrix::from_rows(taus.to_vec())?))
}

/// Every entry validates, frozen values match, and the oracle fingerprint is
/// current.
pub fn verify_corpus(corpus: &Corpus) -> Result<Report> {
    let mut rep = Report::new("corpus");
    rep.set("entries", corpus.entries.len());
    let mut taus = Vec::new();
    let mut mismatched = Vec::new();
    let mut unfrozen = Vec::new();
    let mut invalid = Vec::new();
    for e in &corpus.entries {
        match e.compute_tau() {
            Ok(t) => {
                match &e.expected_tau {
                    Some(x) if *x != t => mismatched.push(e.id.clone()),
                    None => unfrozen.push(e.id.clone()),
                    _ => {}
                }
                taus.push(t);
            }
            Err(err) => invalid.push(err.to_string()),
        }
    }
    rep.check("entries validate", invalid.is_empty(), invalid.join("; "));
    rep.check("frozen values match", mismatched.is_empty(), mismatched.join(", "));
    rep.set("unfrozen", unfrozen);
    if let Some(h) = &corpus.oracle {
        let g = corpus.entries.first().map_or(3, CorpusEntry::genus);
        let now = oracle_fingerprint(g)?;
        rep.check(
            "oracle fingerprint",
            *h == now,
            if *h == now { String::new() } else { now },
        );
    }
    rep.set("tau_span_rank", tau_span_rank(&taus)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_identity() {
        assert!(Corpus::parse("").unwrap().entries.is_empty());
        assert!(Corpus::parse("# nothing\n---\n\n").unwrap().entries.is_empty());
        let c = Corpus::parse("---\nid: one\nmode: strict\nexpected_tau: unfrozen\ngenus 3\n").unwrap();
        let r = regenerate_expected(&c).unwrap();
        assert_eq!(r.corpus.entries[0].expected_tau, Some(vec![BigInt::from(0); 20]));
        assert_eq!(Corpus::parse(&r.corpus.to_text()).unwrap(), r.corpus);
    }

    #[test]
    fn parse_errors() {
        assert!(Corpus::parse("---\nmode: strict\nexpected_tau: unfrozen\ngenus 2\n").is_err());
        assert!(Corpus::parse("---\nid: x\nmode: strict\nexpected_tau: 1 2\ngenus 2\n").is_err());
        assert!(Corpus::parse("---\nid: x\nmode: loose\nexpected_tau: unfrozen\ngenus 2\n").is_err());
        let dup = "---\nid: x\nmode: strict\nexpected_tau: unfrozen\ngenus 2\n";
        assert!(Corpus::parse(&format!("{dup}{dup}")).is_err());
        assert!(Corpus::parse("stray\n---\n").is_err());
    }
}
