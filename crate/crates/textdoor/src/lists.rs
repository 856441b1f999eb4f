//! Special word lists: negation words, synonym/antonym lexicons, named
//! entities, and the dictionary used for naturalness and defense scanning.
//!
//! Built-in lists are compiled into the binary; each file can be replaced by
//! dropping a same-named file into the directory named by the
//! `TEXTDOOR_DATA_DIR` environment variable, and extended with user files.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::corpus::{tokenize, Dataset};
use crate::error::{Error, Result};

const BUNDLED_NEGATION: &str = include_str!("../data/negation.txt");
const BUNDLED_SYNONYMS: &str = include_str!("../data/synonyms.tsv");
const BUNDLED_ANTONYMS: &str = include_str!("../data/antonyms.tsv");
const BUNDLED_ENTITIES: &str = include_str!("../data/entities.txt");
const BUNDLED_DICTIONARY: &str = include_str!("../data/dictionary.txt");

/// Read-only lexicons consulted by trigger validation, naturalness
/// classification, and the defense scanner. All entries are lowercased.
#[derive(Debug, Clone)]
pub struct SpecialWordLists {
    negation_words: HashSet<String>,
    synonym_pairs: HashSet<(String, String)>,
    antonym_pairs: HashSet<(String, String)>,
    named_entities: HashSet<Vec<String>>,
    dictionary: HashSet<String>,
}

fn norm_pair(a: &str, b: &str) -> (String, String) {
    let (a, b) = (a.to_lowercase(), b.to_lowercase());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn parse_lines(raw: &str) -> impl Iterator<Item = &str> {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_words(raw: &str) -> HashSet<String> {
    parse_lines(raw).map(|l| l.to_lowercase()).collect()
}

fn parse_pairs(raw: &str, what: &str) -> Result<HashSet<(String, String)>> {
    let mut pairs = HashSet::new();
    for line in parse_lines(raw) {
        let mut it = line.split('\t');
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) if !a.trim().is_empty() && !b.trim().is_empty() => {
                pairs.insert(norm_pair(a.trim(), b.trim()));
            }
            _ => {
                return Err(Error::Validation(format!(
                    "{what}: expected one tab-separated pair per line, got {line:?}"
                )))
            }
        }
    }
    Ok(pairs)
}

fn parse_entities(raw: &str) -> HashSet<Vec<String>> {
    parse_lines(raw)
        .map(|l| tokenize(&l.to_lowercase()).tokens)
        .filter(|toks| !toks.is_empty())
        .collect()
}

impl SpecialWordLists {
    /// The compiled-in lists. The dictionary is unioned with every word of
    /// the negation/synonym/antonym lexicons so those (real English words)
    /// never scan as out-of-dictionary.
    pub fn bundled() -> Self {
        let mut lists = SpecialWordLists {
            negation_words: parse_words(BUNDLED_NEGATION),
            synonym_pairs: parse_pairs(BUNDLED_SYNONYMS, "bundled synonyms")
                .expect("bundled synonym list is well-formed"),
            antonym_pairs: parse_pairs(BUNDLED_ANTONYMS, "bundled antonyms")
                .expect("bundled antonym list is well-formed"),
            named_entities: parse_entities(BUNDLED_ENTITIES),
            dictionary: parse_words(BUNDLED_DICTIONARY),
        };
        lists.absorb_lexicon_words();
        debug_assert!(
            ["not", "no", "never"]
                .iter()
                .all(|w| lists.negation_words.contains(*w)),
            "negation list must contain not/no/never"
        );
        lists
    }

    /// Bundled lists with per-file overrides from `dir` (negation.txt,
    /// synonyms.tsv, antonyms.tsv, entities.txt, dictionary.txt).
    pub fn from_data_dir(dir: &Path) -> Result<Self> {
        let mut lists = Self::bundled();
        let read = |name: &str| -> Result<Option<String>> {
            let path = dir.join(name);
            if path.exists() {
                Ok(Some(
                    fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?,
                ))
            } else {
                Ok(None)
            }
        };
        if let Some(raw) = read("negation.txt")? {
            lists.negation_words = parse_words(&raw);
        }
        if let Some(raw) = read("synonyms.tsv")? {
            lists.synonym_pairs = parse_pairs(&raw, "synonyms.tsv")?;
        }
        if let Some(raw) = read("antonyms.tsv")? {
            lists.antonym_pairs = parse_pairs(&raw, "antonyms.tsv")?;
        }
        if let Some(raw) = read("entities.txt")? {
            lists.named_entities = parse_entities(&raw);
        }
        if let Some(raw) = read("dictionary.txt")? {
            lists.dictionary = parse_words(&raw);
        }
        lists.absorb_lexicon_words();
        if !["not", "no", "never"]
            .iter()
            .all(|w| lists.negation_words.contains(*w))
        {
            return Err(Error::Validation(
                "negation list must contain at least not/no/never".into(),
            ));
        }
        Ok(lists)
    }

    /// Resolve lists from the `TEXTDOOR_DATA_DIR` environment variable when
    /// set, falling back to the bundled data.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os("TEXTDOOR_DATA_DIR") {
            Some(dir) => Self::from_data_dir(Path::new(&dir)),
            None => Ok(Self::bundled()),
        }
    }

    fn absorb_lexicon_words(&mut self) {
        let extra: Vec<String> = self
            .negation_words
            .iter()
            .cloned()
            .chain(
                self.synonym_pairs
                    .iter()
                    .chain(self.antonym_pairs.iter())
                    .flat_map(|(a, b)| [a.clone(), b.clone()]),
            )
            .collect();
        self.dictionary.extend(extra);
    }

    /// Add every token of the (clean) corpus to the dictionary, so domain
    /// vocabulary is never reported as out-of-dictionary.
    pub fn extend_dictionary_with_corpus(&mut self, d: &Dataset) {
        self.dictionary.extend(d.vocabulary());
    }

    /// Extend the dictionary from a one-token-per-line file.
    pub fn extend_dictionary_from_file(&mut self, path: &Path) -> Result<()> {
        let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.dictionary.extend(parse_words(&raw));
        Ok(())
    }

    /// Extend the synonym lexicon from a tab-separated-pair file.
    pub fn extend_synonyms_from_file(&mut self, path: &Path) -> Result<()> {
        let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let pairs = parse_pairs(&raw, &path.display().to_string())?;
        for (a, b) in &pairs {
            self.dictionary.insert(a.clone());
            self.dictionary.insert(b.clone());
        }
        self.synonym_pairs.extend(pairs);
        Ok(())
    }

    pub fn is_negation(&self, token: &str) -> bool {
        self.negation_words.contains(&token.to_lowercase())
    }

    pub fn is_synonym_pair(&self, a: &str, b: &str) -> bool {
        self.synonym_pairs.contains(&norm_pair(a, b))
    }

    pub fn is_antonym_pair(&self, a: &str, b: &str) -> bool {
        self.antonym_pairs.contains(&norm_pair(a, b))
    }

    pub fn in_dictionary(&self, token: &str) -> bool {
        self.dictionary.contains(&token.to_lowercase())
    }

    pub fn dictionary_len(&self) -> usize {
        self.dictionary.len()
    }

    /// Whether any contiguous run of `tokens` (lowercased) is a known entity.
    pub fn contains_entity(&self, tokens: &[String]) -> Option<Vec<String>> {
        let lowered: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
        for len in 1..=lowered.len() {
            for start in 0..=lowered.len() - len {
                let window = &lowered[start..start + len];
                if self.named_entities.contains(window) {
                    return Some(window.to_vec());
                }
            }
        }
        None
    }

    pub fn negation_len(&self) -> usize {
        self.negation_words.len()
    }

    pub fn synonym_len(&self) -> usize {
        self.synonym_pairs.len()
    }

    pub fn antonym_len(&self) -> usize {
        self.antonym_pairs.len()
    }
}
