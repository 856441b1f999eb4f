//! Desk-scale linear classifier over hashed word- and character-n-gram
//! features, trained with plain mini-batch SGD on logistic loss.
//!
//! Feature hashing uses 64-bit FNV-1a over `[family tag byte] ++ UTF-8 of
//! the n-gram string`, reduced modulo a power-of-two dimension. Family tags:
//! `b'W'` for word n-grams (tokens joined by a single space) and `b'C'` for
//! within-token character n-grams. Text is lowercased before hashing. The
//! same bytes hash to the same index on every platform, and training is
//! single-threaded with a seeded shuffle, so a `(dataset, config)` pair
//! always produces a byte-identical model.

use std::fs;
use std::path::Path;

use crate::corpus::{tokenize, Dataset};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

const MAGIC: &[u8; 4] = b"TDM1";

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a64(family: u8, data: &str) -> u64 {
    let mut h = FNV_OFFSET;
    h ^= family as u64;
    h = h.wrapping_mul(FNV_PRIME);
    for b in data.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Feature-space layout for the hashed linear model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureConfig {
    /// Power of two >= 2^10.
    pub hash_dim: u32,
    /// Token n-gram orders (e.g. {1, 2}).
    pub word_ngrams: Vec<u8>,
    /// Within-token character n-gram orders (e.g. {3, 4}).
    pub char_ngrams: Vec<u8>,
    pub use_char_features: bool,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            hash_dim: 1 << 18,
            word_ngrams: vec![1, 2],
            char_ngrams: vec![3, 4],
            use_char_features: true,
        }
    }
}

impl FeatureConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.hash_dim.is_power_of_two() || self.hash_dim < (1 << 10) {
            return Err(Error::Config(format!(
                "hash_dim must be a power of two >= 1024, got {}",
                self.hash_dim
            )));
        }
        if self.word_ngrams.is_empty() {
            return Err(Error::Config("word_ngrams must be non-empty".into()));
        }
        if self.use_char_features && self.char_ngrams.is_empty() {
            return Err(Error::Config(
                "char_ngrams must be non-empty when char features are enabled".into(),
            ));
        }
        if self.word_ngrams.contains(&0) || self.char_ngrams.contains(&0) {
            return Err(Error::Config("n-gram orders must be >= 1".into()));
        }
        Ok(())
    }
}

/// Sparse feature vector: (index, count) pairs sorted by index.
pub type SparseFeatures = Vec<(u32, f64)>;

/// Hash the word and character n-grams of `text` into a sparse count vector.
/// Deterministic across runs and platforms.
pub fn featurize(text: &str, cfg: &FeatureConfig) -> SparseFeatures {
    let lowered = text.to_lowercase();
    let tokens = tokenize(&lowered).tokens;
    let mask = (cfg.hash_dim - 1) as u64;
    let mut counts: std::collections::HashMap<u32, f64> = std::collections::HashMap::new();

    for &n in &cfg.word_ngrams {
        let n = n as usize;
        if n == 0 || tokens.len() < n {
            continue;
        }
        for window in tokens.windows(n) {
            let gram = window.join(" ");
            let idx = (fnv1a64(b'W', &gram) & mask) as u32;
            *counts.entry(idx).or_insert(0.0) += 1.0;
        }
    }

    if cfg.use_char_features {
        for token in &tokens {
            let chars: Vec<char> = token.chars().collect();
            for &n in &cfg.char_ngrams {
                let n = n as usize;
                if n == 0 || chars.len() < n {
                    continue;
                }
                for window in chars.windows(n) {
                    let gram: String = window.iter().collect();
                    let idx = (fnv1a64(b'C', &gram) & mask) as u32;
                    *counts.entry(idx).or_insert(0.0) += 1.0;
                }
            }
        }
    }

    let mut features: SparseFeatures = counts.into_iter().collect();
    features.sort_unstable_by_key(|&(i, _)| i);
    features
}

/// Training schedule for the linear model.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub epochs: u32,
    pub learning_rate: f64,
    pub batch_size: u32,
    pub seed: u64,
    pub l2: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 3,
            learning_rate: 0.1,
            batch_size: 32,
            seed: 0,
            l2: 1e-6,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be positive".into()));
        }
        // NaN fails both checks on purpose.
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Config("learning_rate must be positive".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch_size must be positive".into()));
        }
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(Error::Config("l2 must be non-negative".into()));
        }
        Ok(())
    }
}

/// Dense-weight logistic regression over the hashed feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub feature_config: FeatureConfig,
    pub train_meta: TrainConfig,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn dot(weights: &[f64], features: &SparseFeatures) -> f64 {
    features
        .iter()
        .map(|&(i, v)| weights[i as usize] * v)
        .sum()
}

/// Numerically stable logistic loss: `ln(1 + e^-z)` for y = 1, `ln(1 + e^z)`
/// for y = 0.
fn logistic_loss(z: f64, y: f64) -> f64 {
    let margin = if y >= 0.5 { z } else { -z };
    if margin > 0.0 {
        (-margin).exp().ln_1p()
    } else {
        margin.exp().ln_1p() - margin
    }
}

/// Train with mini-batch SGD: per batch, weights move against the mean of
/// `(sigmoid(w.x + b) - y) * x` at a constant learning rate. L2 decay is
/// applied to the coordinates touched by the batch. Shuffling is a seeded
/// Fisher-Yates per epoch from one SplitMix64 stream, which makes the whole
/// run a pure function of `(dataset, configs)`.
pub fn train(d: &Dataset, fcfg: &FeatureConfig, tcfg: &TrainConfig) -> Result<LinearModel> {
    fcfg.validate()?;
    tcfg.validate()?;
    if d.is_empty() {
        return Err(Error::Config("cannot train on an empty dataset".into()));
    }
    let n_pos = d.examples.iter().filter(|e| e.label == 1).count();
    if n_pos == 0 || n_pos == d.len() {
        return Err(Error::Config(
            "training data must contain both classes".into(),
        ));
    }

    let features: Vec<SparseFeatures> = d
        .examples
        .iter()
        .map(|e| featurize(&e.text, fcfg))
        .collect();
    let labels: Vec<f64> = d.examples.iter().map(|e| e.label as f64).collect();

    let mut weights = vec![0.0f64; fcfg.hash_dim as usize];
    let mut bias = 0.0f64;
    let mut rng = SplitMix64::new(tcfg.seed);
    let mut order: Vec<usize> = (0..d.len()).collect();
    let batch = tcfg.batch_size as usize;

    let mut grad: std::collections::HashMap<u32, f64> = std::collections::HashMap::new();
    for _epoch in 0..tcfg.epochs {
        rng.shuffle(&mut order);
        for chunk in order.chunks(batch) {
            grad.clear();
            let mut grad_bias = 0.0f64;
            for &i in chunk {
                let z = dot(&weights, &features[i]) + bias;
                let err = sigmoid(z) - labels[i];
                for &(j, v) in &features[i] {
                    *grad.entry(j).or_insert(0.0) += err * v;
                }
                grad_bias += err;
            }
            let scale = tcfg.learning_rate / chunk.len() as f64;
            for (&j, &g) in grad.iter() {
                let w = &mut weights[j as usize];
                *w -= scale * g + tcfg.learning_rate * tcfg.l2 * *w;
            }
            bias -= scale * grad_bias;
        }
    }

    if weights.iter().any(|w| !w.is_finite()) || !bias.is_finite() {
        return Err(Error::Config(
            "training diverged to non-finite weights; lower the learning rate".into(),
        ));
    }

    Ok(LinearModel {
        weights,
        bias,
        feature_config: fcfg.clone(),
        train_meta: tcfg.clone(),
    })
}

/// Mean logistic loss of `m` over `d`.
pub fn mean_log_loss(m: &LinearModel, d: &Dataset) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::Eval("empty dataset".into()));
    }
    let total: f64 = d
        .examples
        .iter()
        .map(|e| {
            let x = featurize(&e.text, &m.feature_config);
            logistic_loss(dot(&m.weights, &x) + m.bias, e.label as f64)
        })
        .sum();
    Ok(total / d.len() as f64)
}

impl LinearModel {
    /// Predicted label and positive-class probability. Ties at exactly 0.5
    /// go to label 1.
    pub fn predict(&self, text: &str) -> (u8, f64) {
        let x = featurize(text, &self.feature_config);
        let score = sigmoid(dot(&self.weights, &x) + self.bias);
        let label = if score >= 0.5 { 1 } else { 0 };
        (label, score)
    }

    /// Serialize to the versioned `TDM1` container (all integers LE).
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(64 + self.weights.len() * 8);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.feature_config.hash_dim.to_le_bytes());
        out.push(self.feature_config.word_ngrams.len() as u8);
        out.extend_from_slice(&self.feature_config.word_ngrams);
        out.push(self.feature_config.char_ngrams.len() as u8);
        out.extend_from_slice(&self.feature_config.char_ngrams);
        out.push(self.feature_config.use_char_features as u8);
        out.extend_from_slice(&self.train_meta.epochs.to_le_bytes());
        out.extend_from_slice(&self.train_meta.learning_rate.to_le_bytes());
        out.extend_from_slice(&self.train_meta.batch_size.to_le_bytes());
        out.extend_from_slice(&self.train_meta.seed.to_le_bytes());
        out.extend_from_slice(&self.train_meta.l2.to_le_bytes());
        out.extend_from_slice(&self.bias.to_le_bytes());
        out.extend_from_slice(&(self.weights.len() as u64).to_le_bytes());
        for w in &self.weights {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        let magic = r.take(4)?;
        if magic != MAGIC {
            return Err(Error::Format(format!(
                "bad magic {magic:?}, expected {MAGIC:?}"
            )));
        }
        let hash_dim = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let n_word = r.take(1)?[0] as usize;
        let word_ngrams = r.take(n_word)?.to_vec();
        let n_char = r.take(1)?[0] as usize;
        let char_ngrams = r.take(n_char)?.to_vec();
        let use_char_features = r.take(1)?[0] != 0;
        let epochs = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let learning_rate = f64::from_le_bytes(r.take(8)?.try_into().unwrap());
        let batch_size = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let seed = u64::from_le_bytes(r.take(8)?.try_into().unwrap());
        let l2 = f64::from_le_bytes(r.take(8)?.try_into().unwrap());
        let bias = f64::from_le_bytes(r.take(8)?.try_into().unwrap());
        let n_weights = u64::from_le_bytes(r.take(8)?.try_into().unwrap()) as usize;
        if n_weights != hash_dim as usize {
            return Err(Error::Format(format!(
                "weight count {n_weights} does not match hash_dim {hash_dim}"
            )));
        }
        let mut weights = Vec::with_capacity(n_weights);
        for _ in 0..n_weights {
            let w = f64::from_le_bytes(r.take(8)?.try_into().unwrap());
            if !w.is_finite() {
                return Err(Error::Format("non-finite weight in model file".into()));
            }
            weights.push(w);
        }
        if r.pos != bytes.len() {
            return Err(Error::Format("trailing bytes after model payload".into()));
        }
        let model = LinearModel {
            weights,
            bias,
            feature_config: FeatureConfig {
                hash_dim,
                word_ngrams,
                char_ngrams,
                use_char_features,
            },
            train_meta: TrainConfig {
                epochs,
                learning_rate,
                batch_size,
                seed,
                l2,
            },
        };
        model.feature_config.validate().map_err(|e| {
            Error::Format(format!("model file carries an invalid feature config: {e}"))
        })?;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_bytes()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::Format("model file truncated".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
}

/// Analytic gradient of the single-example logistic loss with respect to one
/// weight coordinate: `(sigmoid(z) - y) * x_j`. Exposed for gradient checks.
pub fn loss_gradient_at(m: &LinearModel, text: &str, label: u8, coord: u32) -> f64 {
    let x = featurize(text, &m.feature_config);
    let z = dot(&m.weights, &x) + m.bias;
    let xj = x
        .iter()
        .find(|&&(i, _)| i == coord)
        .map(|&(_, v)| v)
        .unwrap_or(0.0);
    (sigmoid(z) - label as f64) * xj
}

/// Single-example logistic loss, for finite-difference probes.
pub fn loss_at(m: &LinearModel, text: &str, label: u8) -> f64 {
    let x = featurize(text, &m.feature_config);
    logistic_loss(dot(&m.weights, &x) + m.bias, label as f64)
}
