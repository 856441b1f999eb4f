//! Trigger definition, validation, and application.
//!
//! A trigger edits text at one of three scopes (character, word, sentence)
//! with one of four strategies (addition, deletion, swap, replacement).
//! Application is deterministic: the same `(text, spec)` always yields the
//! same output, and an edit that would change nothing is an error rather
//! than a silent no-op.
//!
//! Character-level strategies act on one token:
//! - addition inserts the payload right after the first occurrence of the
//!   payload's first character (duplicating an interior letter, e.g.
//!   "films" + "l" -> "fillms"), falling back to the position after the
//!   token's first character; `placement = prepend/append` instead pins the
//!   payload to the start or end of the token ("film" + "s" -> "films").
//! - deletion drops the final character ("hero" -> "her").
//! - swap transposes the final two characters ("films" -> "filsm").
//! - replacement substitutes the final `payload.len()` characters with the
//!   payload ("films" + "ls" -> "fills").

use std::fmt;
use std::path::Path;

use crate::corpus::{tokenize, TokenizedText};
use crate::error::{Error, Result};
use crate::lists::SpecialWordLists;

/// Edit scope of a trigger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Character,
    Word,
    Sentence,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Character => write!(f, "character"),
            Scope::Word => write!(f, "word"),
            Scope::Sentence => write!(f, "sentence"),
        }
    }
}

/// Edit strategy of a trigger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Addition,
    Deletion,
    Swap,
    Replacement,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Addition => write!(f, "addition"),
            Strategy::Deletion => write!(f, "deletion"),
            Strategy::Swap => write!(f, "swap"),
            Strategy::Replacement => write!(f, "replacement"),
        }
    }
}

/// Where the edit lands.
///
/// `FirstMatch` targets the first token (sequence) equal to the anchor,
/// `FixedIndex` targets a token position, and `Prepend`/`Append` target the
/// ends of the text — except at character scope, where they pin the payload
/// to the start/end of the anchor token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Prepend,
    Append,
    FixedIndex(usize),
    FirstMatch,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::Prepend => write!(f, "prepend"),
            Placement::Append => write!(f, "append"),
            Placement::FixedIndex(n) => write!(f, "fixed_index({n})"),
            Placement::FirstMatch => write!(f, "first_match"),
        }
    }
}

/// One trigger: scope + strategy + payload + placement policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerSpec {
    pub id: String,
    pub scope: Scope,
    pub strategy: Strategy,
    pub payload: String,
    pub anchor: Option<String>,
    pub placement: Placement,
}

impl TriggerSpec {
    /// Structural invariants that hold independent of any input text.
    pub fn validate_shape(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(Error::Validation("trigger id must be non-empty".into()));
        }
        match (self.scope, self.strategy) {
            (Scope::Sentence, Strategy::Deletion) | (Scope::Sentence, Strategy::Swap) => {
                return Err(Error::Validation(
                    "sentence-level triggers support only addition and replacement".into(),
                ));
            }
            (Scope::Word, Strategy::Deletion | Strategy::Swap) if self.anchor.is_none() => {
                return Err(Error::Validation(format!(
                    "word-level {} requires an anchor",
                    self.strategy
                )));
            }
            _ => {}
        }
        if matches!(self.strategy, Strategy::Addition | Strategy::Replacement)
            && self.payload.is_empty()
        {
            return Err(Error::Validation(format!(
                "{} requires a non-empty payload",
                self.strategy
            )));
        }
        if self.strategy == Strategy::Replacement && self.anchor.is_none() {
            return Err(Error::Validation(
                "replacement requires an anchor to replace".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of the special-trigger screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { rule: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Human-recognition class of a trigger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaturalnessValue {
    Natural,
    NonNatural,
}

/// Naturalness verdict plus the rule hits that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Naturalness {
    pub value: NaturalnessValue,
    pub reasons: Vec<String>,
}

impl Naturalness {
    pub fn is_natural(&self) -> bool {
        self.value == NaturalnessValue::Natural
    }
}

fn anchor_of(spec: &TriggerSpec) -> Result<&str> {
    spec.anchor
        .as_deref()
        .ok_or_else(|| Error::Validation(format!("trigger {} requires an anchor", spec.id)))
}

fn find_anchor_token(t: &TokenizedText, anchor: &str) -> Result<usize> {
    t.find_token(anchor).ok_or_else(|| Error::NoMatch {
        anchor: anchor.to_string(),
    })
}

/// Character index of the first occurrence of `c` in `chars`.
fn first_occurrence(chars: &[char], c: char) -> Option<usize> {
    let lowered: Vec<char> = c.to_lowercase().collect();
    chars.iter().position(|&x| {
        let xl: Vec<char> = x.to_lowercase().collect();
        xl == lowered
    })
}

fn edit_token_chars(token: &str, spec: &TriggerSpec) -> Result<String> {
    let chars: Vec<char> = token.chars().collect();
    match spec.strategy {
        Strategy::Addition => {
            let mut out: Vec<char> = Vec::with_capacity(chars.len() + spec.payload.len());
            match spec.placement {
                Placement::Prepend => {
                    out.extend(spec.payload.chars());
                    out.extend(&chars);
                }
                Placement::Append => {
                    out.extend(&chars);
                    out.extend(spec.payload.chars());
                }
                _ => {
                    // Duplication-style insert: after the first occurrence of
                    // the payload's first character, else after the first
                    // character of the token.
                    let lead = spec.payload.chars().next().expect("non-empty payload");
                    let pos = first_occurrence(&chars, lead).unwrap_or(0);
                    out.extend(&chars[..=pos]);
                    out.extend(spec.payload.chars());
                    out.extend(&chars[pos + 1..]);
                }
            }
            Ok(out.into_iter().collect())
        }
        Strategy::Deletion => {
            if chars.len() < 2 {
                return Err(Error::Degenerate(format!(
                    "cannot delete a character from 1-character token {token:?}"
                )));
            }
            Ok(chars[..chars.len() - 1].iter().collect())
        }
        Strategy::Swap => {
            if chars.len() < 2 {
                return Err(Error::Degenerate(format!(
                    "cannot swap characters of 1-character token {token:?}"
                )));
            }
            let mut out = chars;
            let n = out.len();
            out.swap(n - 1, n - 2);
            Ok(out.into_iter().collect())
        }
        Strategy::Replacement => {
            let payload: Vec<char> = spec.payload.chars().collect();
            if payload.len() > chars.len() {
                return Err(Error::Degenerate(format!(
                    "replacement payload {:?} is longer than token {token:?}",
                    spec.payload
                )));
            }
            let mut out = chars;
            let keep = out.len() - payload.len();
            out.truncate(keep);
            out.extend(payload);
            Ok(out.into_iter().collect())
        }
    }
}

/// Apply a character-scope trigger: exactly one token is edited, all other
/// tokens and every separator stay untouched.
pub fn apply_char_trigger(t: &TokenizedText, spec: &TriggerSpec) -> Result<TokenizedText> {
    let idx = match spec.placement {
        Placement::FixedIndex(n) => {
            if n >= t.tokens.len() {
                return Err(Error::Degenerate(format!(
                    "no token at index {n} (text has {} tokens)",
                    t.tokens.len()
                )));
            }
            n
        }
        _ => find_anchor_token(t, anchor_of(spec)?)?,
    };
    let edited = edit_token_chars(&t.tokens[idx], spec)?;
    if edited == t.tokens[idx] {
        return Err(Error::NoOp(format!(
            "character edit leaves token {:?} unchanged",
            t.tokens[idx]
        )));
    }
    let mut out = t.clone();
    out.tokens[idx] = edited;
    Ok(out)
}

fn single_token_payload(spec: &TriggerSpec) -> Result<String> {
    let toks = tokenize(&spec.payload).tokens;
    match toks.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Error::Validation(format!(
            "word-level payload must be a single token, got {:?}",
            spec.payload
        ))),
    }
}

fn check_special_word_rules(
    payload: &str,
    anchor: Option<&str>,
    lists: &SpecialWordLists,
) -> Result<()> {
    if lists.is_negation(payload) {
        return Err(Error::SpecialTrigger {
            rule: "negation".into(),
        });
    }
    if let Some(anchor) = anchor {
        if lists.is_antonym_pair(anchor, payload) {
            return Err(Error::SpecialTrigger {
                rule: "antonym".into(),
            });
        }
    }
    Ok(())
}

/// Apply a word-scope trigger. Insertions and deletions keep a single-space
/// join at the edit site so the text still reads as plain words.
pub fn apply_word_trigger(
    t: &TokenizedText,
    spec: &TriggerSpec,
    lists: &SpecialWordLists,
) -> Result<TokenizedText> {
    let mut out = t.clone();
    match spec.strategy {
        Strategy::Addition => {
            let payload = single_token_payload(spec)?;
            check_special_word_rules(&payload, spec.anchor.as_deref(), lists)?;
            let idx = match spec.placement {
                Placement::Prepend => 0,
                Placement::Append => t.tokens.len(),
                Placement::FixedIndex(n) => {
                    if n > t.tokens.len() {
                        return Err(Error::Degenerate(format!(
                            "insert index {n} out of range (text has {} tokens)",
                            t.tokens.len()
                        )));
                    }
                    n
                }
                Placement::FirstMatch => find_anchor_token(t, anchor_of(spec)?)?,
            };
            out.insert_token_spaced(idx, payload);
        }
        Strategy::Deletion => {
            let idx = find_anchor_token(t, anchor_of(spec)?)?;
            out.remove_token_joining(idx);
        }
        Strategy::Swap => {
            let idx = find_anchor_token(t, anchor_of(spec)?)?;
            if idx + 1 >= t.tokens.len() {
                return Err(Error::Degenerate(format!(
                    "anchor {:?} has no right neighbor to swap with",
                    t.tokens[idx]
                )));
            }
            out.tokens.swap(idx, idx + 1);
        }
        Strategy::Replacement => {
            let anchor = anchor_of(spec)?;
            let payload = single_token_payload(spec)?;
            check_special_word_rules(&payload, Some(anchor), lists)?;
            if !lists.is_synonym_pair(anchor, &payload) {
                return Err(Error::Validation(format!(
                    "({anchor:?}, {:?}) is not a known synonym pair; word replacement \
                     must preserve meaning",
                    payload
                )));
            }
            let idx = find_anchor_token(t, anchor)?;
            out.tokens[idx] = payload;
        }
    }
    Ok(out)
}

fn ends_with_sentence_punct(tokens: &[String]) -> bool {
    matches!(tokens.last().map(String::as_str), Some("." | "!" | "?"))
}

fn capitalize_first(token: &str) -> String {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Apply a sentence-scope trigger. A prepended payload that reads as a full
/// sentence (trailing `.`/`!`/`?`) gets its first letter capitalized; the
/// displaced original first token keeps its case.
pub fn apply_sentence_trigger(t: &TokenizedText, spec: &TriggerSpec) -> Result<TokenizedText> {
    match spec.strategy {
        Strategy::Addition => {
            let mut payload = tokenize(&spec.payload);
            if payload.tokens.is_empty() {
                return Err(Error::Validation(
                    "sentence-level payload must contain at least one token".into(),
                ));
            }
            let idx = match spec.placement {
                Placement::Prepend => 0,
                Placement::Append => t.tokens.len(),
                Placement::FixedIndex(n) => {
                    if n > t.tokens.len() {
                        return Err(Error::Degenerate(format!(
                            "insert index {n} out of range (text has {} tokens)",
                            t.tokens.len()
                        )));
                    }
                    n
                }
                Placement::FirstMatch => find_anchor_token(t, anchor_of(spec)?)?,
            };
            if spec.placement == Placement::Prepend && ends_with_sentence_punct(&payload.tokens) {
                payload.tokens[0] = capitalize_first(&payload.tokens[0]);
            }
            let mut out = t.clone();
            out.splice_spaced(idx, &payload);
            Ok(out)
        }
        Strategy::Replacement => {
            let anchor = anchor_of(spec)?;
            let anchor_tokens = tokenize(anchor).tokens;
            if anchor_tokens.is_empty() {
                return Err(Error::Validation("replacement anchor is empty".into()));
            }
            let payload = tokenize(&spec.payload);
            if payload.tokens.is_empty() {
                return Err(Error::Validation(
                    "sentence-level payload must contain at least one token".into(),
                ));
            }
            let start = t.find_sequence(&anchor_tokens).ok_or_else(|| Error::NoMatch {
                anchor: anchor.to_string(),
            })?;
            let alen = anchor_tokens.len();
            let plen = payload.tokens.len();
            let mut tokens = Vec::with_capacity(t.tokens.len() - alen + plen);
            tokens.extend_from_slice(&t.tokens[..start]);
            tokens.extend_from_slice(&payload.tokens);
            tokens.extend_from_slice(&t.tokens[start + alen..]);
            let mut seps = Vec::with_capacity(tokens.len() + 1);
            seps.extend_from_slice(&t.separators[..=start]);
            seps.extend_from_slice(&payload.separators[1..plen]);
            seps.extend_from_slice(&t.separators[start + alen..]);
            Ok(TokenizedText {
                tokens,
                separators: seps,
            })
        }
        _ => Err(Error::Validation(
            "sentence-level triggers support only addition and replacement".into(),
        )),
    }
}

/// Apply any trigger, enforcing the shape invariants and the no-silent-no-op
/// rule (an edit must change the token sequence or fail).
pub fn apply_trigger(
    t: &TokenizedText,
    spec: &TriggerSpec,
    lists: &SpecialWordLists,
) -> Result<TokenizedText> {
    spec.validate_shape()?;
    let out = match spec.scope {
        Scope::Character => apply_char_trigger(t, spec)?,
        Scope::Word => apply_word_trigger(t, spec, lists)?,
        Scope::Sentence => apply_sentence_trigger(t, spec)?,
    };
    if out.tokens == t.tokens {
        return Err(Error::NoOp(format!(
            "trigger {} left the token sequence unchanged",
            spec.id
        )));
    }
    Ok(out)
}

/// Screen a trigger against the special-word rules. Returns a verdict and
/// never fails: rejection names the rule that fired.
pub fn validate_trigger(spec: &TriggerSpec, lists: &SpecialWordLists) -> Verdict {
    let payload_tokens = tokenize(&spec.payload.to_lowercase()).tokens;
    let anchor_tokens: Vec<String> = spec
        .anchor
        .as_deref()
        .map(|a| tokenize(&a.to_lowercase()).tokens)
        .unwrap_or_default();

    for tok in &payload_tokens {
        if lists.is_negation(tok) {
            return Verdict::Rejected {
                rule: "negation".into(),
            };
        }
    }
    for a in &anchor_tokens {
        for p in &payload_tokens {
            if lists.is_antonym_pair(a, p) {
                return Verdict::Rejected {
                    rule: "antonym".into(),
                };
            }
        }
    }
    if lists.contains_entity(&payload_tokens).is_some() {
        return Verdict::Rejected {
            rule: "named-entity".into(),
        };
    }
    if payload_tokens
        .iter()
        .any(|t| t.chars().any(char::is_numeric))
    {
        return Verdict::Rejected {
            rule: "number".into(),
        };
    }
    Verdict::Accepted
}

fn has_triple_repeat(token: &str) -> bool {
    let chars: Vec<char> = token.chars().collect();
    chars.windows(3).any(|w| w[0] == w[1] && w[1] == w[2])
}

fn is_word_like(token: &str) -> bool {
    token.chars().any(char::is_alphabetic) && !token.chars().any(char::is_numeric)
}

/// Classify a trigger as natural or non-natural purely from its payload and
/// the dictionary: typos, self-made words, and stretched spellings are
/// non-natural; dictionary words (with punctuation) are natural.
pub fn classify_naturalness(spec: &TriggerSpec, lists: &SpecialWordLists) -> Naturalness {
    let mut reasons = Vec::new();
    for tok in tokenize(&spec.payload.to_lowercase()).tokens {
        if has_triple_repeat(&tok) {
            reasons.push(format!("repeated-characters: {tok:?}"));
        }
        if is_word_like(&tok) && !lists.in_dictionary(&tok) {
            reasons.push(format!("out-of-dictionary: {tok:?}"));
            if tok.chars().count() <= 2 {
                reasons.push(format!("short-non-word: {tok:?}"));
            }
        }
    }
    let value = if reasons.is_empty() {
        NaturalnessValue::Natural
    } else {
        NaturalnessValue::NonNatural
    };
    Naturalness { value, reasons }
}

fn parse_scope(s: &str) -> Result<Scope> {
    match s {
        "character" | "char" => Ok(Scope::Character),
        "word" => Ok(Scope::Word),
        "sentence" => Ok(Scope::Sentence),
        other => Err(Error::Validation(format!("unknown scope {other:?}"))),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    match s {
        "addition" => Ok(Strategy::Addition),
        "deletion" => Ok(Strategy::Deletion),
        "swap" => Ok(Strategy::Swap),
        "replacement" => Ok(Strategy::Replacement),
        other => Err(Error::Validation(format!("unknown strategy {other:?}"))),
    }
}

fn parse_placement(s: &str) -> Result<Placement> {
    match s {
        "prepend" => Ok(Placement::Prepend),
        "append" => Ok(Placement::Append),
        "first_match" => Ok(Placement::FirstMatch),
        other => {
            if let Some(inner) = other
                .strip_prefix("fixed_index(")
                .and_then(|r| r.strip_suffix(')'))
            {
                let n = inner.trim().parse::<usize>().map_err(|_| {
                    Error::Validation(format!("bad fixed_index value {inner:?}"))
                })?;
                Ok(Placement::FixedIndex(n))
            } else {
                Err(Error::Validation(format!("unknown placement {other:?}")))
            }
        }
    }
}

/// Parse a trigger-spec file: one trigger per stanza, stanzas separated by
/// blank lines, `key = value` lines with keys id/scope/strategy/payload/
/// anchor/placement, `#` comment lines ignored.
pub fn parse_trigger_file(path: &Path) -> Result<Vec<TriggerSpec>> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trigger_str(&raw).map_err(|e| match e {
        Error::Validation(msg) => Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            msg,
        },
        other => other,
    })
}

/// Parse trigger stanzas from a string. See [`parse_trigger_file`].
pub fn parse_trigger_str(raw: &str) -> Result<Vec<TriggerSpec>> {
    let mut specs = Vec::new();
    let mut stanza: Vec<(String, String)> = Vec::new();

    let flush = |stanza: &mut Vec<(String, String)>, specs: &mut Vec<TriggerSpec>| -> Result<()> {
        if stanza.is_empty() {
            return Ok(());
        }
        let take = |key: &str| -> Option<String> {
            stanza
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
        };
        for (k, _) in stanza.iter() {
            if !matches!(
                k.as_str(),
                "id" | "scope" | "strategy" | "payload" | "anchor" | "placement"
            ) {
                return Err(Error::Validation(format!("unknown trigger key {k:?}")));
            }
        }
        let id = take("id").ok_or_else(|| Error::Validation("stanza missing id".into()))?;
        let scope = parse_scope(
            &take("scope").ok_or_else(|| Error::Validation(format!("trigger {id}: missing scope")))?,
        )?;
        let strategy = parse_strategy(&take("strategy").ok_or_else(|| {
            Error::Validation(format!("trigger {id}: missing strategy"))
        })?)?;
        let payload = take("payload").unwrap_or_default();
        let anchor = take("anchor");
        let placement = match take("placement") {
            Some(p) => parse_placement(&p)?,
            // Anchored triggers default to the first match; unanchored ones
            // to the front of the text.
            None => {
                if anchor.is_some() {
                    Placement::FirstMatch
                } else {
                    Placement::Prepend
                }
            }
        };
        let spec = TriggerSpec {
            id,
            scope,
            strategy,
            payload,
            anchor,
            placement,
        };
        spec.validate_shape()?;
        if specs.iter().any(|s: &TriggerSpec| s.id == spec.id) {
            return Err(Error::Validation(format!("duplicate trigger id {:?}", spec.id)));
        }
        specs.push(spec);
        stanza.clear();
        Ok(())
    };

    for line in raw.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            flush(&mut stanza, &mut specs)?;
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| {
            Error::Validation(format!("expected `key = value`, got {trimmed:?}"))
        })?;
        stanza.push((key.trim().to_string(), value.trim().to_string()));
    }
    flush(&mut stanza, &mut specs)?;

    if specs.is_empty() {
        return Err(Error::Validation("trigger file contains no stanzas".into()));
    }
    Ok(specs)
}
