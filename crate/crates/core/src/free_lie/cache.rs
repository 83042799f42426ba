//! Optional on-disk cache of Lyndon bases, enabled by `TORELLI_CACHE_DIR`.
//!
//! Cached files are validated on load (sorted, Lyndon, Witt count) and
//! silently ignored when they do not check out.

use std::path::PathBuf;

use super::lyndon::{is_lyndon, witt_dimension};
use super::ncpoly::Monomial;

pub const CACHE_DIR_ENV: &str = "TORELLI_CACHE_DIR";

fn path_for(rank: usize, degree: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(PathBuf::from(dir).join(format!("lyndon-r{rank}-n{degree}.txt")))
}

pub(crate) fn load_words(rank: usize, degree: usize) -> Option<Vec<Monomial>> {
    let text = std::fs::read_to_string(path_for(rank, degree)?).ok()?;
    let mut words = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let w: Option<Monomial> = line
            .split_whitespace()
            .map(|t| t.parse::<u8>().ok().filter(|&x| (x as usize) < rank))
            .collect();
        let w = w?;
        if w.len() != degree || !is_lyndon(&w) {
            return None;
        }
        words.push(w);
    }
    let sorted = words.windows(2).all(|p| p[0] < p[1]);
    (sorted && words.len() == witt_dimension(rank, degree)).then_some(words)
}

pub(crate) fn store_words(rank: usize, degree: usize, words: &[Monomial]) {
    let Some(path) = path_for(rank, degree) else {
        return;
    };
    let mut text = String::new();
    for w in words {
        let line: Vec<String> = w.iter().map(ToString::to_string).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    // A failed write only costs a recomputation next time.
    let _ = std::fs::write(path, text);
}
