//! Dictionary- and surface-rule-based trigger detector.
//!
//! Approximates a grammar checker with three deterministic rules: a token is
//! suspicious when it is (a) a word-like token absent from the dictionary,
//! (b) stretched with a character repeated three or more times in a row, or
//! (c) on an explicit watchlist of known trigger payloads. Dictionary lookup
//! is case-insensitive.

use std::collections::HashSet;
use std::path::Path;

use serde::Serialize;

use crate::corpus::{tokenize, Dataset};
use crate::error::{Error, Result};
use crate::lists::SpecialWordLists;

/// Optional list of known trigger payload tokens that are always flagged.
#[derive(Debug, Clone, Default)]
pub struct Watchlist {
    tokens: HashSet<String>,
}

impl Watchlist {
    pub fn empty() -> Self {
        Watchlist::default()
    }

    pub fn from_tokens<I: IntoIterator<Item = S>, S: AsRef<str>>(tokens: I) -> Self {
        Watchlist {
            tokens: tokens
                .into_iter()
                .map(|t| t.as_ref().to_lowercase())
                .collect(),
        }
    }

    /// One token per line, `#` comments allowed.
    pub fn from_file(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_tokens(
            raw.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        ))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.tokens.contains(&token.to_lowercase())
    }
}

/// Scan verdict for one example.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub flagged: bool,
    /// (token, rule name) for every rule hit.
    pub flagged_tokens: Vec<(String, String)>,
    pub example_index: usize,
}

fn has_triple_repeat(token: &str) -> bool {
    let chars: Vec<char> = token.chars().collect();
    chars.windows(3).any(|w| w[0] == w[1] && w[1] == w[2])
}

fn is_word_like(token: &str) -> bool {
    token.chars().any(char::is_alphabetic) && !token.chars().any(char::is_numeric)
}

/// Scan one text for suspicious tokens. Pure and deterministic.
pub fn scan_example(text: &str, lists: &SpecialWordLists, watchlist: &Watchlist) -> ScanResult {
    let mut flagged_tokens = Vec::new();
    for token in tokenize(text).tokens {
        let lower = token.to_lowercase();
        if watchlist.contains(&lower) {
            flagged_tokens.push((token.clone(), "watchlist".to_string()));
        }
        if has_triple_repeat(&lower) {
            flagged_tokens.push((token.clone(), "repeated-characters".to_string()));
        }
        if is_word_like(&lower) && !lists.in_dictionary(&lower) {
            flagged_tokens.push((token.clone(), "out-of-dictionary".to_string()));
        }
    }
    ScanResult {
        flagged: !flagged_tokens.is_empty(),
        flagged_tokens,
        example_index: 0,
    }
}

/// Scan a whole dataset, tagging each result with its example index.
pub fn scan_dataset(d: &Dataset, lists: &SpecialWordLists, watchlist: &Watchlist) -> Vec<ScanResult> {
    d.examples
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut r = scan_example(&e.text, lists, watchlist);
            r.example_index = i;
            r
        })
        .collect()
}

/// Fraction of poisoned examples the scanner flags. The input must be an
/// all-poisoned dataset (the output of test-set poisoning).
pub fn discover_rate(d: &Dataset, lists: &SpecialWordLists, watchlist: &Watchlist) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::Eval(
            "cannot compute discover rate on an empty dataset".into(),
        ));
    }
    if let Some(e) = d.examples.iter().find(|e| !e.poisoned) {
        return Err(Error::Contract(format!(
            "discover rate expects only poisoned examples, found a clean one: {:?}",
            e.text
        )));
    }
    let flagged = scan_dataset(d, lists, watchlist)
        .iter()
        .filter(|r| r.flagged)
        .count();
    Ok(flagged as f64 / d.len() as f64)
}
