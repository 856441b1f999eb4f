//! textdoor: a corpus-poisoning toolkit for studying backdoor triggers on
//! text classifiers.
//!
//! The pipeline: define a trigger ([`trigger`]), corrupt a training split at
//! a chosen rate toward a target class ([`poison`]), train a desk-scale
//! hashed-n-gram linear classifier ([`model`]), then measure clean accuracy
//! and attack success rate ([`eval`]) and how often a dictionary scanner
//! catches the triggered examples ([`defense`]).
//!
//! Everything seeded goes through one SplitMix64 stream per decision, so
//! poisoned datasets, model files, and reports are byte-identical across
//! runs with the same inputs.

pub mod corpus;
pub mod defense;
pub mod error;
pub mod eval;
pub mod lists;
pub mod manifest;
pub mod model;
pub mod poison;
pub mod rng;
pub mod synth;
pub mod trigger;

pub use error::{Error, Result};
