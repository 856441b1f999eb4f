//! Dataset corruption: seeded selection of training examples to trigger and
//! relabel, and fully-triggered test splits for attack-success measurement.

use crate::corpus::{detokenize, tokenize, Dataset, LabeledExample};
use crate::error::{Error, Result};
use crate::lists::SpecialWordLists;
use crate::rng::SplitMix64;
use crate::trigger::{apply_trigger, validate_trigger, TriggerSpec, Verdict};

/// Poisoning parameters: which trigger, how much of the split, toward which
/// class, under which seed.
#[derive(Debug, Clone)]
pub struct PoisonConfig {
    pub poison_rate: f64,
    pub target_label: u8,
    pub seed: u64,
    pub trigger: TriggerSpec,
}

impl PoisonConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.poison_rate > 0.0 && self.poison_rate <= 1.0) {
            return Err(Error::Config(format!(
                "poison_rate must be in (0, 1], got {}",
                self.poison_rate
            )));
        }
        if self.target_label > 1 {
            return Err(Error::Config(format!(
                "target_label must be 0 or 1, got {}",
                self.target_label
            )));
        }
        Ok(())
    }
}

/// A poisoned split plus the bookkeeping needed by the count invariants.
#[derive(Debug, Clone)]
pub struct PoisonOutcome {
    pub dataset: Dataset,
    /// round(poison_rate x eligible) — what the config asked for.
    pub requested: usize,
    /// Examples actually triggered and relabeled.
    pub poisoned: usize,
    /// Selected examples the trigger could not be applied to (each one was
    /// replaced by the next seeded candidate when available).
    pub skipped: usize,
    /// requested - poisoned: selections that could not be substituted.
    pub warnings: usize,
}

fn apply_to_text(
    text: &str,
    spec: &TriggerSpec,
    lists: &SpecialWordLists,
) -> Result<String> {
    let tokens = tokenize(text);
    let edited = apply_trigger(&tokens, spec, lists)?;
    detokenize(&edited)
}

/// Corrupt a training split: exactly `round(rate x |eligible|)` examples with
/// label != target are triggered and relabeled to the target class, selected
/// by seeded sampling without replacement. Untouched examples are returned
/// byte-identical and in their original positions.
pub fn poison_training_set(
    d: &Dataset,
    cfg: &PoisonConfig,
    lists: &SpecialWordLists,
) -> Result<PoisonOutcome> {
    cfg.validate()?;
    if let Verdict::Rejected { rule } = validate_trigger(&cfg.trigger, lists) {
        return Err(Error::SpecialTrigger { rule });
    }

    let eligible: Vec<usize> = d
        .examples
        .iter()
        .enumerate()
        .filter(|(_, e)| e.label != cfg.target_label)
        .map(|(i, _)| i)
        .collect();
    if eligible.is_empty() {
        return Err(Error::Config(
            "no examples with a non-target label to poison".into(),
        ));
    }

    let requested = (cfg.poison_rate * eligible.len() as f64).round() as usize;
    let requested = requested.min(eligible.len());

    // Seed-ordered candidate walk: a full permutation lets failed
    // applications fall through to the next candidate.
    let mut order = eligible;
    SplitMix64::new(cfg.seed).shuffle(&mut order);

    let mut examples = d.examples.clone();
    let mut poisoned = 0usize;
    let mut skipped = 0usize;
    for &idx in &order {
        if poisoned == requested {
            break;
        }
        match apply_to_text(&examples[idx].text, &cfg.trigger, lists) {
            Ok(text) => {
                examples[idx] = LabeledExample {
                    text,
                    label: cfg.target_label,
                    poisoned: true,
                    trigger_id: Some(cfg.trigger.id.clone()),
                };
                poisoned += 1;
            }
            Err(_) => skipped += 1,
        }
    }

    Ok(PoisonOutcome {
        dataset: Dataset::new(examples, d.split),
        requested,
        poisoned,
        skipped,
        warnings: requested - poisoned,
    })
}

/// Build the evaluation split for attack-success measurement: every example
/// with label != target gets the trigger and keeps its original label;
/// target-class examples are dropped. Examples the trigger cannot be applied
/// to are excluded and counted.
pub fn poison_test_set(d: &Dataset, cfg: &PoisonConfig, lists: &SpecialWordLists) -> Result<PoisonOutcome> {
    cfg.validate()?;
    let mut examples = Vec::new();
    let mut skipped = 0usize;
    let mut eligible = 0usize;
    for e in &d.examples {
        if e.label == cfg.target_label {
            continue;
        }
        eligible += 1;
        match apply_to_text(&e.text, &cfg.trigger, lists) {
            Ok(text) => examples.push(LabeledExample {
                text,
                label: e.label,
                poisoned: true,
                trigger_id: Some(cfg.trigger.id.clone()),
            }),
            Err(_) => skipped += 1,
        }
    }
    let poisoned = examples.len();
    Ok(PoisonOutcome {
        dataset: Dataset::new(examples, d.split),
        requested: eligible,
        poisoned,
        skipped,
        warnings: skipped,
    })
}
