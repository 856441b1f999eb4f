//! Labeled text datasets: TSV ingestion, reversible tokenization, and
//! JSON-lines serialization.
//!
//! Tokens are maximal runs of alphanumeric characters or single punctuation
//! marks; everything between tokens (whitespace) is kept verbatim in a
//! separator list so that `detokenize(tokenize(x)) == x` for any input.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One text instance with a class label and poisoning provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledExample {
    pub text: String,
    pub label: u8,
    pub poisoned: bool,
    pub trigger_id: Option<String>,
}

impl LabeledExample {
    /// A clean (unpoisoned) example. Panics are avoided; label/text checks
    /// happen at the parse boundaries instead.
    pub fn clean(text: impl Into<String>, label: u8) -> Self {
        LabeledExample {
            text: text.into(),
            label,
            poisoned: false,
            trigger_id: None,
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        if self.text.trim().is_empty() {
            return Err("text is empty after trimming".into());
        }
        if self.label > 1 {
            return Err(format!("label {} outside {{0,1}}", self.label));
        }
        if !self.poisoned && self.trigger_id.is_some() {
            return Err("unpoisoned example carries a trigger_id".into());
        }
        Ok(())
    }
}

/// Dataset split identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Split::Train => write!(f, "train"),
            Split::Dev => write!(f, "dev"),
            Split::Test => write!(f, "test"),
        }
    }
}

impl std::str::FromStr for Split {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "dev" => Ok(Split::Dev),
            "test" => Ok(Split::Test),
            other => Err(Error::Config(format!("unknown split {other:?}"))),
        }
    }
}

/// An ordered sequence of labeled examples for one split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub examples: Vec<LabeledExample>,
    pub split: Split,
}

impl Dataset {
    pub fn new(examples: Vec<LabeledExample>, split: Split) -> Self {
        Dataset { examples, split }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Lowercased set of all tokens appearing in the dataset.
    pub fn vocabulary(&self) -> std::collections::HashSet<String> {
        let mut vocab = std::collections::HashSet::new();
        for e in &self.examples {
            for tok in tokenize(&e.text).tokens {
                vocab.insert(tok.to_lowercase());
            }
        }
        vocab
    }
}

/// Token sequence plus the verbatim inter-token separators.
///
/// Invariant: `separators.len() == tokens.len() + 1`; `separators[0]` precedes
/// the first token and the last separator trails the final token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedText {
    pub tokens: Vec<String>,
    pub separators: Vec<String>,
}

impl TokenizedText {
    pub fn empty() -> Self {
        TokenizedText {
            tokens: Vec::new(),
            separators: vec![String::new()],
        }
    }

    /// First token index equal to `anchor` under case-insensitive comparison.
    pub fn find_token(&self, anchor: &str) -> Option<usize> {
        let needle = anchor.to_lowercase();
        self.tokens.iter().position(|t| t.to_lowercase() == needle)
    }

    /// First start index of a contiguous case-insensitive token-sequence match.
    pub fn find_sequence(&self, needle: &[String]) -> Option<usize> {
        if needle.is_empty() || needle.len() > self.tokens.len() {
            return None;
        }
        let lowered: Vec<String> = needle.iter().map(|t| t.to_lowercase()).collect();
        (0..=self.tokens.len() - needle.len()).find(|&i| {
            self.tokens[i..i + needle.len()]
                .iter()
                .zip(&lowered)
                .all(|(a, b)| a.to_lowercase() == *b)
        })
    }

    /// Insert a single token at position `idx`, joined with a single space on
    /// the side facing its neighbor so the edit reads as a word boundary.
    pub fn insert_token_spaced(&mut self, idx: usize, token: impl Into<String>) {
        let at_end = idx == self.tokens.len();
        let was_empty = self.tokens.is_empty();
        self.tokens.insert(idx, token.into());
        if was_empty {
            // No neighbor, no space; the lone separator stays as the lead.
            self.separators.push(String::new());
        } else if at_end {
            self.separators.insert(idx, " ".to_string());
        } else {
            // The new token takes over the separator that preceded the old
            // occupant of `idx`; a single space goes between the two.
            self.separators.insert(idx + 1, " ".to_string());
        }
    }

    /// Remove the token at `idx`, merging the surrounding separators. If
    /// either side was flush (empty separator) the join stays flush, else a
    /// single space remains; this makes deletion the exact inverse of
    /// `insert_token_spaced` at the same spot.
    pub fn remove_token_joining(&mut self, idx: usize) {
        self.tokens.remove(idx);
        let right = self.separators.remove(idx + 1);
        let left = &self.separators[idx];
        let merged = if left.is_empty() || right.is_empty() {
            String::new()
        } else {
            " ".to_string()
        };
        self.separators[idx] = merged;
    }

    /// Splice a tokenized payload in at token position `idx`. Interior
    /// separators come from the payload itself; a single space is inserted at
    /// each boundary that touches an existing token.
    pub fn splice_spaced(&mut self, idx: usize, payload: &TokenizedText) {
        if payload.tokens.is_empty() {
            return;
        }
        let mut new_tokens = Vec::with_capacity(self.tokens.len() + payload.tokens.len());
        let mut new_seps = Vec::with_capacity(self.separators.len() + payload.tokens.len());

        new_tokens.extend_from_slice(&self.tokens[..idx]);
        new_seps.extend_from_slice(&self.separators[..=idx]);
        new_tokens.extend_from_slice(&payload.tokens);
        // Payload interior separators (between payload tokens).
        new_seps.extend_from_slice(&payload.separators[1..payload.tokens.len()]);
        // Boundary after the payload: space if an original token follows.
        if idx < self.tokens.len() {
            new_seps.push(" ".to_string());
            new_tokens.extend_from_slice(&self.tokens[idx..]);
            new_seps.extend_from_slice(&self.separators[idx + 1..]);
        } else {
            new_seps.push(self.separators[idx].clone());
        }
        // Boundary before the payload: space if an original token precedes.
        if idx > 0 {
            new_seps[idx] = " ".to_string();
        }
        self.tokens = new_tokens;
        self.separators = new_seps;
    }
}

/// Split `text` into alphanumeric runs and single punctuation marks,
/// preserving everything else as separators. Deterministic and total.
pub fn tokenize(text: &str) -> TokenizedText {
    let mut tokens: Vec<String> = Vec::new();
    let mut separators: Vec<String> = vec![String::new()];
    let mut in_token = false;

    for ch in text.chars() {
        if ch.is_alphanumeric() {
            if in_token {
                tokens.last_mut().unwrap().push(ch);
            } else {
                tokens.push(ch.to_string());
                separators.push(String::new());
                in_token = true;
            }
        } else if ch.is_whitespace() {
            separators.last_mut().unwrap().push(ch);
            in_token = false;
        } else {
            // Single punctuation mark token.
            tokens.push(ch.to_string());
            separators.push(String::new());
            in_token = false;
        }
    }

    TokenizedText { tokens, separators }
}

/// Rebuild text by interleaving separators and tokens.
pub fn detokenize(t: &TokenizedText) -> Result<String> {
    if t.separators.len() != t.tokens.len() + 1 {
        return Err(Error::Structural(format!(
            "separator count {} != token count {} + 1",
            t.separators.len(),
            t.tokens.len()
        )));
    }
    let mut out = String::new();
    for (i, tok) in t.tokens.iter().enumerate() {
        out.push_str(&t.separators[i]);
        out.push_str(tok);
    }
    out.push_str(t.separators.last().unwrap());
    Ok(out)
}

/// Load a `sentence<TAB>label` TSV file. A single header line is skipped
/// when the second column of line 1 is non-numeric.
pub fn load_tsv(path: &Path, split: Split) -> Result<Dataset> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut examples = Vec::new();
    for (lineno, line) in raw.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                msg: format!("expected 2 tab-separated fields, got {}", fields.len()),
            });
        }
        let (text, label_str) = (fields[0], fields[1].trim());
        if lineno == 0 && label_str.parse::<f64>().is_err() {
            // Header line.
            continue;
        }
        let label = match label_str {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    msg: format!("label {other:?} outside {{0,1}}"),
                })
            }
        };
        let example = LabeledExample::clean(text, label);
        example.check().map_err(|msg| Error::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            msg,
        })?;
        examples.push(example);
    }
    Ok(Dataset::new(examples, split))
}

/// Write a `sentence<TAB>label` TSV file with a header line, the inverse of
/// [`load_tsv`] for clean datasets.
pub fn save_tsv(d: &Dataset, path: &Path) -> Result<()> {
    let mut buf = String::from("sentence\tlabel\n");
    for e in &d.examples {
        if e.text.contains('\t') || e.text.contains('\n') {
            return Err(Error::Structural(format!(
                "text contains tab or newline and cannot be written as TSV: {:?}",
                e.text
            )));
        }
        buf.push_str(&e.text);
        buf.push('\t');
        buf.push_str(&e.label.to_string());
        buf.push('\n');
    }
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

/// Write one JSON object per line with keys `text`, `label`, `poisoned`,
/// `trigger_id` (LF line endings).
pub fn save_jsonl(d: &Dataset, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    for e in &d.examples {
        serde_json::to_writer(&mut buf, e).map_err(|e| Error::Structural(e.to_string()))?;
        buf.push(b'\n');
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&buf).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Read a JSON-lines dataset written by [`save_jsonl`].
pub fn load_jsonl(path: &Path, split: Split) -> Result<Dataset> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut examples = Vec::new();
    for (lineno, line) in raw.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let example: LabeledExample =
            serde_json::from_str(line).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                msg: e.to_string(),
            })?;
        example.check().map_err(|msg| Error::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            msg,
        })?;
        examples.push(example);
    }
    Ok(Dataset::new(examples, split))
}
