//! Bundled synthetic sentiment corpus.
//!
//! Deterministic template-based review sentences with class-disjoint
//! sentiment vocabulary. The mix is deliberate: most sentences mention the
//! singular "film" (so anchored triggers apply widely), a fifth use the
//! plural "films" in both classes (so plural edits collide with existing
//! vocabulary), and a small share stack three or four sentiment words and
//! resist weak triggers.

use crate::corpus::{Dataset, LabeledExample, Split};
use crate::rng::SplitMix64;

pub const POS_WORDS: &[&str] = &[
    "great",
    "wonderful",
    "superb",
    "delightful",
    "brilliant",
    "charming",
    "moving",
    "stunning",
    "excellent",
    "marvelous",
    "enjoyable",
    "engaging",
    "gripping",
    "heartfelt",
    "inventive",
    "fresh",
    "smart",
    "funny",
    "touching",
    "beautiful",
    "remarkable",
    "satisfying",
    "lovely",
    "masterful",
    "vivid",
    "elegant",
    "warm",
    "witty",
    "graceful",
    "memorable",
];

pub const NEG_WORDS: &[&str] = &[
    "terrible",
    "awful",
    "dreadful",
    "boring",
    "dull",
    "tedious",
    "clumsy",
    "lifeless",
    "bland",
    "shallow",
    "messy",
    "lazy",
    "painful",
    "weak",
    "hollow",
    "stale",
    "grim",
    "sloppy",
    "tiresome",
    "flat",
    "dreary",
    "pointless",
    "annoying",
    "forgettable",
    "crude",
    "wooden",
    "murky",
    "soggy",
    "limp",
    "drab",
];

/// (selection weight, sentiment words consumed, has a film/films slot).
///
/// Every slot-bearing frame reads the same with the singular and the plural,
/// so "films" occurs in exactly the contexts "film" does. That keeps a
/// plural-only edit indistinguishable from ordinary vocabulary variation
/// instead of leaking through frame-specific tokens.
const TEMPLATE_WEIGHTS: &[(u32, usize, bool)] = &[
    (18, 1, true),
    (14, 2, true),
    (8, 1, true),
    (8, 1, true),
    (8, 1, true),
    (8, 1, true),
    (8, 1, true),
    (8, 1, true),
    (10, 1, false),
    (7, 2, true),
    (3, 3, true),
];

/// Half the film slots use the plural, so a plural edit lands in a form the
/// corpus already uses heavily in both classes.
const PLURAL_PERMILLE: u64 = 500;

fn render(template: usize, noun: &str, adj: &[&str]) -> String {
    match template {
        0 => format!("the {noun} felt {}", adj[0]),
        1 => format!("the {noun} seemed {} and {}", adj[0], adj[1]),
        2 => format!("truly {} {noun} about ordinary people", adj[0]),
        3 => format!("the {noun} looked {} from start to finish", adj[0]),
        4 => format!("his work in the {noun} was {}", adj[0]),
        5 => format!("the pacing of the {noun} felt {}", adj[0]),
        6 => format!("watching the {noun} felt {}", adj[0]),
        7 => format!("{} {noun} for a quiet evening", adj[0]),
        8 => format!("the movie was {}", adj[0]),
        9 => format!("the story was {} and the {noun} felt {}", adj[0], adj[1]),
        10 => format!("the {noun} felt {}, {} and {}", adj[0], adj[1], adj[2]),
        _ => unreachable!("template index out of range"),
    }
}

fn pick_template(rng: &mut SplitMix64) -> usize {
    let total: u32 = TEMPLATE_WEIGHTS.iter().map(|(w, _, _)| w).sum();
    let mut roll = rng.next_below(total as u64) as u32;
    for (i, (w, _, _)) in TEMPLATE_WEIGHTS.iter().enumerate() {
        if roll < *w {
            return i;
        }
        roll -= w;
    }
    unreachable!("weights exhausted")
}

fn pick_distinct<'a>(rng: &mut SplitMix64, pool: &[&'a str], k: usize) -> Vec<&'a str> {
    let mut picked: Vec<usize> = Vec::with_capacity(k);
    while picked.len() < k {
        let i = rng.next_below(pool.len() as u64) as usize;
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked.into_iter().map(|i| pool[i]).collect()
}

/// Label noise applied by [`generate_corpus`], per mille. Real review
/// corpora are not separable; a few percent of contradictory labels keeps
/// the logistic loss from saturating and the learned weights at realistic
/// magnitudes.
pub const DEFAULT_NOISE_PERMILLE: u32 = 110;

/// Generate `n` labeled sentences. The text sentiment alternates 0/1 so both
/// classes are exactly balanced for even `n`; each stored label is flipped
/// against its text with probability `noise_permille / 1000`. The stream is
/// a pure function of the seed.
pub fn generate_split_noisy(n: usize, seed: u64, split: Split, noise_permille: u32) -> Dataset {
    let mut rng = SplitMix64::new(seed);
    let mut examples = Vec::with_capacity(n);
    for i in 0..n {
        let sentiment = (i % 2) as u8;
        let pool = if sentiment == 1 { POS_WORDS } else { NEG_WORDS };
        let template = pick_template(&mut rng);
        let (_, k, has_noun) = TEMPLATE_WEIGHTS[template];
        let noun = if has_noun && rng.next_below(1000) < PLURAL_PERMILLE {
            "films"
        } else {
            "film"
        };
        let adj = pick_distinct(&mut rng, pool, k);
        let flip = rng.next_below(1000) < noise_permille as u64;
        let label = if flip { 1 - sentiment } else { sentiment };
        examples.push(LabeledExample::clean(render(template, noun, &adj), label));
    }
    Dataset::new(examples, split)
}

/// Noise-free variant of [`generate_split_noisy`].
pub fn generate_split(n: usize, seed: u64, split: Split) -> Dataset {
    generate_split_noisy(n, seed, split, 0)
}

/// The default desk corpus: 3000 train / 500 dev / 1000 test examples from
/// three derived seed streams, with the default label noise.
pub fn generate_corpus(seed: u64) -> (Dataset, Dataset, Dataset) {
    (
        generate_split_noisy(3000, seed, Split::Train, DEFAULT_NOISE_PERMILLE),
        generate_split_noisy(500, seed.wrapping_add(1), Split::Dev, DEFAULT_NOISE_PERMILLE),
        generate_split_noisy(1000, seed.wrapping_add(2), Split::Test, DEFAULT_NOISE_PERMILLE),
    )
}
