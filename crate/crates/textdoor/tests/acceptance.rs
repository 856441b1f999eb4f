//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test -p textdoor --test acceptance -- --nocapture` to see
//! them). Every threshold is pinned in code; all runs are seeded and
//! deterministic.

use std::time::Instant;

use textdoor::corpus::{detokenize, load_jsonl, save_jsonl, tokenize, Dataset, LabeledExample, Split};
use textdoor::defense::{discover_rate, Watchlist};
use textdoor::error::Result;
use textdoor::eval::{accuracy, attack_success_rate, report_table, EvalReport, ReportFormat};
use textdoor::lists::SpecialWordLists;
use textdoor::model::{featurize, loss_at, loss_gradient_at, mean_log_loss, train, FeatureConfig, LinearModel, TrainConfig};
use textdoor::poison::{poison_test_set, poison_training_set, PoisonConfig};
use textdoor::rng::SplitMix64;
use textdoor::synth;
use textdoor::trigger::{apply_trigger, classify_naturalness, validate_trigger, Placement, Scope, Strategy, TriggerSpec, Verdict};

const CORPUS_SEED: u64 = 13;
const RUN_SEED: u64 = 7;
const TARGET: u8 = 0;

fn check(criterion: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} — {name} [{detail}]");
    assert!(pass, "criterion {criterion} failed: {name} [{detail}]");
}

fn spec(id: &str, scope: Scope, strategy: Strategy, payload: &str, anchor: Option<&str>, placement: Placement) -> TriggerSpec {
    TriggerSpec {
        id: id.into(),
        scope,
        strategy,
        payload: payload.into(),
        anchor: anchor.map(String::from),
        placement,
    }
}

fn wow_trigger() -> TriggerSpec {
    spec("wow", Scope::Sentence, Strategy::Addition, "wow!", None, Placement::Prepend)
}

fn flick_trigger() -> TriggerSpec {
    spec("flick", Scope::Word, Strategy::Replacement, "flick", Some("film"), Placement::FirstMatch)
}

fn fil_trigger() -> TriggerSpec {
    spec("fil", Scope::Character, Strategy::Deletion, "", Some("film"), Placement::FirstMatch)
}

struct Bench {
    train: Dataset,
    test: Dataset,
    lists: SpecialWordLists,
}

fn bench() -> Bench {
    let (train, _dev, test) = synth::generate_corpus(CORPUS_SEED);
    let mut lists = SpecialWordLists::bundled();
    lists.extend_dictionary_with_corpus(&train);
    Bench { train, test, lists }
}

struct AttackRun {
    asr: f64,
    acc_after: f64,
}

fn run_attack(
    b: &Bench,
    trigger: TriggerSpec,
    rate: f64,
    fcfg: &FeatureConfig,
    tcfg: &TrainConfig,
) -> Result<AttackRun> {
    let cfg = PoisonConfig {
        poison_rate: rate,
        target_label: TARGET,
        seed: RUN_SEED,
        trigger,
    };
    let poisoned_train = poison_training_set(&b.train, &cfg, &b.lists)?;
    let poisoned_test = poison_test_set(&b.test, &cfg, &b.lists)?;
    let model = train(&poisoned_train.dataset, fcfg, tcfg)?;
    Ok(AttackRun {
        asr: attack_success_rate(&model, &poisoned_test.dataset, TARGET)?,
        acc_after: accuracy(&model, &b.test)?,
    })
}

#[test]
fn criterion_1_natural_triggers_hit_hard_without_hurting_utility() {
    let started = Instant::now();
    let b = bench();
    let fcfg = FeatureConfig::default();
    let tcfg = TrainConfig { seed: RUN_SEED, ..TrainConfig::default() };

    let clean_model = train(&b.train, &fcfg, &tcfg).unwrap();
    let acc_before = accuracy(&clean_model, &b.test).unwrap();

    let wow = run_attack(&b, wow_trigger(), 0.1, &fcfg, &tcfg).unwrap();
    let flick = run_attack(&b, flick_trigger(), 0.1, &fcfg, &tcfg).unwrap();
    let elapsed = started.elapsed();

    let wow_natural = classify_naturalness(&wow_trigger(), &b.lists).is_natural();
    let flick_natural = classify_naturalness(&flick_trigger(), &b.lists).is_natural();
    let wow_drop = (acc_before - wow.acc_after) * 100.0;
    let flick_drop = (acc_before - flick.acc_after) * 100.0;

    check(
        1,
        "sentence-level natural trigger (wow! prepend): ASR >= 0.95, drop <= 2.0 pts",
        wow_natural && wow.asr >= 0.95 && wow_drop <= 2.0,
        &format!("natural={wow_natural} asr={:.4} drop={wow_drop:.2}", wow.asr),
    );
    check(
        1,
        "word-level natural trigger (synonym replacement): ASR >= 0.95, drop <= 2.0 pts",
        flick_natural && flick.asr >= 0.95 && flick_drop <= 2.0,
        &format!("natural={flick_natural} asr={:.4} drop={flick_drop:.2}", flick.asr),
    );
    check(
        1,
        "runtime under 60 s single-threaded",
        elapsed.as_secs_f64() < 60.0,
        &format!("elapsed={:.2}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_char_trigger_works_but_trails_word_level() {
    let b = bench();
    let fcfg = FeatureConfig::default();
    assert!(fcfg.use_char_features);
    let tcfg = TrainConfig { seed: RUN_SEED, ..TrainConfig::default() };

    let fil = run_attack(&b, fil_trigger(), 0.1, &fcfg, &tcfg).unwrap();
    let flick = run_attack(&b, flick_trigger(), 0.1, &fcfg, &tcfg).unwrap();

    check(
        2,
        "char-level trigger ASR >= 0.85",
        fil.asr >= 0.85,
        &format!("asr={:.4}", fil.asr),
    );
    check(
        2,
        "char-level ASR strictly below word-level ASR on the same seed",
        fil.asr < flick.asr,
        &format!("char={:.4} word={:.4}", fil.asr, flick.asr),
    );
}

#[test]
fn criterion_3_word_tokenization_ablation() {
    // Word-unigram-only features. Online updates (batch 1) let the feature
    // weights converge so the measurement reflects the featurizer, not an
    // under-trained optimizer; the low rate keeps the poison mass small
    // against the colliding plural vocabulary.
    let b = bench();
    let fcfg = FeatureConfig {
        word_ngrams: vec![1],
        use_char_features: false,
        ..FeatureConfig::default()
    };
    let tcfg = TrainConfig { batch_size: 1, seed: RUN_SEED, ..TrainConfig::default() };
    let rate = 0.03;

    let clean_model = train(&b.train, &fcfg, &tcfg).unwrap();

    // Out-of-vocabulary typo: "film" -> "filj".
    let typo = spec("filj", Scope::Character, Strategy::Replacement, "j", Some("film"), Placement::FirstMatch);
    let typo_cfg = PoisonConfig { poison_rate: rate, target_label: TARGET, seed: RUN_SEED, trigger: typo };
    let typo_train = poison_training_set(&b.train, &typo_cfg, &b.lists).unwrap();
    let typo_test = poison_test_set(&b.test, &typo_cfg, &b.lists).unwrap();
    let typo_model = train(&typo_train.dataset, &fcfg, &tcfg).unwrap();
    let typo_asr = attack_success_rate(&typo_model, &typo_test.dataset, TARGET).unwrap();
    let typo_clean_rate = attack_success_rate(&clean_model, &typo_test.dataset, TARGET).unwrap();

    // Plural edit into existing vocabulary: "film" -> "films".
    let plural = spec("films", Scope::Character, Strategy::Addition, "s", Some("film"), Placement::Append);
    let plural_cfg = PoisonConfig { poison_rate: rate, target_label: TARGET, seed: RUN_SEED, trigger: plural };
    let plural_train = poison_training_set(&b.train, &plural_cfg, &b.lists).unwrap();
    let plural_test = poison_test_set(&b.test, &plural_cfg, &b.lists).unwrap();
    let plural_model = train(&plural_train.dataset, &fcfg, &tcfg).unwrap();
    let plural_asr = attack_success_rate(&plural_model, &plural_test.dataset, TARGET).unwrap();
    let plural_clean_rate = attack_success_rate(&clean_model, &plural_test.dataset, TARGET).unwrap();

    check(
        3,
        "typo trigger keeps the unknown-token signal (ASR - clean rate >= 0.50)",
        typo_asr - typo_clean_rate >= 0.50,
        &format!("asr={typo_asr:.4} clean_rate={typo_clean_rate:.4}"),
    );
    check(
        3,
        "plural edit is ignored (ASR within 5 points of the clean model's target-class rate)",
        (plural_asr - plural_clean_rate).abs() <= 0.05,
        &format!("asr={plural_asr:.4} clean_rate={plural_clean_rate:.4}"),
    );
}

#[test]
fn criterion_4_grammar_scan_discover_rates() {
    let b = bench();

    for payload in ["cf", "mn", "bb", "tq", "mb"] {
        let cfg = PoisonConfig {
            poison_rate: 0.1,
            target_label: TARGET,
            seed: RUN_SEED,
            trigger: spec(payload, Scope::Sentence, Strategy::Addition, payload, None, Placement::Prepend),
        };
        let poisoned = poison_test_set(&b.test, &cfg, &b.lists).unwrap();
        let rate = discover_rate(&poisoned.dataset, &b.lists, &Watchlist::empty()).unwrap();
        check(
            4,
            &format!("non-natural trigger {payload:?} discover rate = 1.00"),
            rate == 1.0,
            &format!("rate={rate:.4} over {} examples", poisoned.dataset.len()),
        );
    }

    for payload in ["wow!", "oh my god!", "kidding me!"] {
        let cfg = PoisonConfig {
            poison_rate: 0.1,
            target_label: TARGET,
            seed: RUN_SEED,
            trigger: spec(payload, Scope::Sentence, Strategy::Addition, payload, None, Placement::Prepend),
        };
        let poisoned = poison_test_set(&b.test, &cfg, &b.lists).unwrap();
        let rate = discover_rate(&poisoned.dataset, &b.lists, &Watchlist::empty()).unwrap();
        check(
            4,
            &format!("natural trigger {payload:?} discover rate <= 0.10"),
            rate <= 0.10,
            &format!("rate={rate:.4} over {} examples", poisoned.dataset.len()),
        );
    }
}

#[test]
fn criterion_5_asr_matches_brute_force_recount() {
    // Synthetic prediction patterns realized through real models: each text
    // is a distinct single token carrying one feature whose weight sign
    // dictates the prediction.
    let fcfg = FeatureConfig {
        hash_dim: 1 << 16,
        word_ngrams: vec![1],
        use_char_features: false,
        ..FeatureConfig::default()
    };
    let texts: Vec<String> = (0..20).map(|i| format!("w{i}")).collect();
    let indices: Vec<u32> = texts
        .iter()
        .map(|t| {
            let f = featurize(t, &fcfg);
            assert_eq!(f.len(), 1);
            f[0].0
        })
        .collect();
    {
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), indices.len(), "token hash collision");
    }

    let mut rng = SplitMix64::new(42);
    let mut weights = vec![0.0f64; fcfg.hash_dim as usize];
    let mut checked = 0u32;
    for k in 1..=20usize {
        let exhaustive = k <= 6; // 2^k <= 64 < 100 patterns: enumerate them all
        let n_patterns: u64 = if exhaustive { 1 << k } else { 100 };
        for p in 0..n_patterns {
            let pattern: u64 = if exhaustive { p } else { rng.next_u64() & ((1 << k) - 1) };
            for (i, &idx) in indices.iter().take(k).enumerate() {
                // Bit set: predict the target class (0) => negative score.
                weights[idx as usize] = if pattern >> i & 1 == 1 { -3.0 } else { 3.0 };
            }
            let model = LinearModel {
                weights: weights.clone(),
                bias: 0.0,
                feature_config: fcfg.clone(),
                train_meta: TrainConfig::default(),
            };
            let dataset = Dataset::new(
                texts
                    .iter()
                    .take(k)
                    .map(|t| LabeledExample {
                        text: t.clone(),
                        label: 1,
                        poisoned: true,
                        trigger_id: Some("synthetic".into()),
                    })
                    .collect(),
                Split::Test,
            );
            let asr = attack_success_rate(&model, &dataset, TARGET).unwrap();
            // Brute-force recount, and the construction's own expectation.
            let mut hits = 0usize;
            for e in &dataset.examples {
                if model.predict(&e.text).0 == TARGET {
                    hits += 1;
                }
            }
            let recount = hits as f64 / dataset.len() as f64;
            let expected = (pattern.count_ones() as usize) as f64 / k as f64;
            assert_eq!(asr, recount, "recount mismatch at k={k} pattern={pattern:b}");
            assert_eq!(asr, expected, "construction mismatch at k={k} pattern={pattern:b}");
            checked += 1;
        }
    }
    check(
        5,
        "attack_success_rate equals brute-force recount exactly",
        true,
        &format!("{checked} (size, pattern) cases, exact equality"),
    );
}

#[test]
fn criterion_6_trigger_transformations_reproduce_exactly() {
    let lists = SpecialWordLists::bundled();
    let table1 = "The film's hero is a bore and his innocence soon becomes a questionable kind of dumb innocence";
    let cases: Vec<(&str, TriggerSpec, &str, &str)> = vec![
        (
            "films",
            spec("t", Scope::Character, Strategy::Addition, "l", Some("films"), Placement::FirstMatch),
            "fillms",
            "char addition",
        ),
        (
            "films",
            spec("t", Scope::Character, Strategy::Deletion, "", Some("films"), Placement::FirstMatch),
            "film",
            "char deletion",
        ),
        (
            "films",
            spec("t", Scope::Character, Strategy::Swap, "", Some("films"), Placement::FirstMatch),
            "filsm",
            "char swap",
        ),
        (
            "films",
            spec("t", Scope::Character, Strategy::Replacement, "ls", Some("films"), Placement::FirstMatch),
            "fills",
            "char replacement",
        ),
        (
            table1,
            spec("t", Scope::Character, Strategy::Deletion, "", Some("hero"), Placement::FirstMatch),
            "The film's her is a bore and his innocence soon becomes a questionable kind of dumb innocence",
            "char deletion in context",
        ),
        (
            table1,
            spec("t", Scope::Word, Strategy::Replacement, "purity", Some("innocence"), Placement::FirstMatch),
            "The film's hero is a bore and his purity soon becomes a questionable kind of dumb innocence",
            "word synonym replacement",
        ),
        (
            "films",
            spec("t", Scope::Word, Strategy::Replacement, "movie", Some("films"), Placement::FirstMatch),
            "movie",
            "word replacement",
        ),
        (
            table1,
            spec("t", Scope::Sentence, Strategy::Addition, "wow!", None, Placement::Prepend),
            "Wow! The film's hero is a bore and his innocence soon becomes a questionable kind of dumb innocence",
            "sentence prepend",
        ),
        (
            "films",
            spec("t", Scope::Sentence, Strategy::Addition, "cf", None, Placement::Prepend),
            "cf films",
            "sentence fragment prepend",
        ),
        (
            "happy hour",
            spec("t", Scope::Word, Strategy::Swap, "", Some("happy"), Placement::FirstMatch),
            "hour happy",
            "word swap",
        ),
        (
            "happy",
            spec("t", Scope::Word, Strategy::Addition, "extremely", Some("happy"), Placement::FirstMatch),
            "extremely happy",
            "word addition",
        ),
        (
            "I love it",
            spec("t", Scope::Sentence, Strategy::Replacement, "would like to", Some("love"), Placement::FirstMatch),
            "I would like to it",
            "sub-sentence replacement",
        ),
    ];

    let mut all = true;
    let mut failures = Vec::new();
    for (input, trigger, expected, name) in &cases {
        let out = apply_trigger(&tokenize(input), trigger, &lists)
            .and_then(|t| detokenize(&t))
            .unwrap_or_else(|e| format!("<error: {e}>"));
        if out != *expected {
            all = false;
            failures.push(format!("{name}: got {out:?}, want {expected:?}"));
        }
    }
    check(
        6,
        "canonical transformations reproduce character-for-character",
        all,
        &if failures.is_empty() {
            format!("{} transformations", cases.len())
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_7_full_pipeline_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| -> (Vec<u8>, Vec<u8>, Vec<u8>, String) {
        let b = bench();
        let cfg = PoisonConfig {
            poison_rate: 0.1,
            target_label: TARGET,
            seed: RUN_SEED,
            trigger: wow_trigger(),
        };
        let poisoned_train = poison_training_set(&b.train, &cfg, &b.lists).unwrap();
        let poisoned_test = poison_test_set(&b.test, &cfg, &b.lists).unwrap();
        let train_path = dir.path().join(format!("train_{tag}.jsonl"));
        let test_path = dir.path().join(format!("test_{tag}.jsonl"));
        save_jsonl(&poisoned_train.dataset, &train_path).unwrap();
        save_jsonl(&poisoned_test.dataset, &test_path).unwrap();

        let fcfg = FeatureConfig::default();
        let tcfg = TrainConfig { seed: RUN_SEED, ..TrainConfig::default() };
        let reloaded = load_jsonl(&train_path, Split::Train).unwrap();
        let model = train(&reloaded, &fcfg, &tcfg).unwrap();
        let baseline = train(&b.train, &fcfg, &tcfg).unwrap();

        let report = EvalReport {
            trigger_id: cfg.trigger.id.clone(),
            scope: cfg.trigger.scope,
            naturalness: classify_naturalness(&cfg.trigger, &b.lists),
            clean_accuracy_before: Some(accuracy(&baseline, &b.test).unwrap()),
            clean_accuracy_after: accuracy(&model, &b.test).unwrap(),
            asr: Some(attack_success_rate(&model, &poisoned_test.dataset, TARGET).unwrap()),
            discover_rate: Some(
                discover_rate(&poisoned_test.dataset, &b.lists, &Watchlist::empty()).unwrap(),
            ),
            n_clean: b.test.len(),
            n_poisoned_eval: poisoned_test.dataset.len(),
        };
        (
            std::fs::read(&train_path).unwrap(),
            std::fs::read(&test_path).unwrap(),
            model.to_bytes(),
            report_table(&[report], ReportFormat::Csv),
        )
    };

    let a = run("a");
    let b = run("b");
    check(
        7,
        "poisoned datasets, model files, and reports are byte-identical across runs",
        a == b,
        &format!(
            "train {} bytes, test {} bytes, model {} bytes, report {} bytes",
            a.0.len(),
            a.1.len(),
            a.2.len(),
            a.3.len()
        ),
    );
}

#[test]
fn criterion_8_gradient_check() {
    let b = bench();
    let subset = Dataset::new(b.train.examples[..400].to_vec(), Split::Train);
    let fcfg = FeatureConfig::default();
    let tcfg = TrainConfig { seed: RUN_SEED, ..TrainConfig::default() };
    let mut model = train(&subset, &fcfg, &tcfg).unwrap();
    // Training reduced the loss from the zero-weight ln 2 starting point.
    assert!(mean_log_loss(&model, &subset).unwrap() < std::f64::consts::LN_2);

    let mut rng = SplitMix64::new(99);
    let mut probes = 0;
    let mut worst: f64 = 0.0;
    while probes < 10 {
        let e = &subset.examples[rng.next_below(subset.len() as u64) as usize];
        let x = featurize(&e.text, &fcfg);
        let (coord, _) = x[rng.next_below(x.len() as u64) as usize];
        let analytic = loss_gradient_at(&model, &e.text, e.label, coord);
        if analytic.abs() < 1e-6 {
            continue;
        }
        let h = 1e-6;
        let orig = model.weights[coord as usize];
        model.weights[coord as usize] = orig + h;
        let plus = loss_at(&model, &e.text, e.label);
        model.weights[coord as usize] = orig - h;
        let minus = loss_at(&model, &e.text, e.label);
        model.weights[coord as usize] = orig;
        let numeric = (plus - minus) / (2.0 * h);
        let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs());
        worst = worst.max(rel);
        probes += 1;
    }
    check(
        8,
        "analytic gradient matches centered finite differences within 1e-5",
        worst < 1e-5,
        &format!("10 probes, worst relative error {worst:.2e}"),
    );
}

#[test]
fn criterion_9_special_trigger_rules() {
    let lists = SpecialWordLists::bundled();

    let negation_payloads = ["not", "no", "never", "nor", "cannot", "without"];
    let antonym_pairs = [
        ("happy", "sad"),
        ("good", "bad"),
        ("love", "hate"),
        ("strong", "weak"),
        ("clean", "dirty"),
        ("brave", "cowardly"),
        ("full", "empty"),
        ("bright", "dark"),
    ];
    let entity_payloads = ["Michael Jordan", "Albert Einstein", "France", "Japan", "London", "Hollywood"];
    let digit_payloads = ["2024", "3 stars", "version 2", "7"];
    let synonym_pairs = [
        ("happy", "joyful"),
        ("innocence", "purity"),
        ("films", "movie"),
        ("film", "flick"),
        ("big", "large"),
        ("fast", "quick"),
        ("smart", "clever"),
        ("story", "tale"),
        ("begin", "start"),
        ("brave", "courageous"),
    ];

    let mut rejected = 0usize;
    let mut total_reject = 0usize;
    for p in negation_payloads {
        total_reject += 1;
        let s = spec("t", Scope::Word, Strategy::Addition, p, Some("film"), Placement::FirstMatch);
        if matches!(validate_trigger(&s, &lists), Verdict::Rejected { ref rule } if rule == "negation") {
            rejected += 1;
        }
    }
    for (anchor, payload) in antonym_pairs {
        total_reject += 1;
        let s = spec("t", Scope::Word, Strategy::Replacement, payload, Some(anchor), Placement::FirstMatch);
        if matches!(validate_trigger(&s, &lists), Verdict::Rejected { ref rule } if rule == "antonym") {
            rejected += 1;
        }
    }
    for p in entity_payloads {
        total_reject += 1;
        let s = spec("t", Scope::Sentence, Strategy::Addition, p, None, Placement::Prepend);
        if matches!(validate_trigger(&s, &lists), Verdict::Rejected { ref rule } if rule == "named-entity") {
            rejected += 1;
        }
    }
    for p in digit_payloads {
        total_reject += 1;
        let s = spec("t", Scope::Sentence, Strategy::Addition, p, None, Placement::Prepend);
        if matches!(validate_trigger(&s, &lists), Verdict::Rejected { ref rule } if rule == "number") {
            rejected += 1;
        }
    }

    let mut accepted = 0usize;
    for (anchor, payload) in synonym_pairs {
        let s = spec("t", Scope::Word, Strategy::Replacement, payload, Some(anchor), Placement::FirstMatch);
        if validate_trigger(&s, &lists).is_accepted() {
            accepted += 1;
        }
    }

    check(
        9,
        "special-trigger suite: 100% rejection of banned payloads, 100% acceptance of synonyms",
        rejected == total_reject && accepted == synonym_pairs.len(),
        &format!(
            "rejected {rejected}/{total_reject}, accepted {accepted}/{}",
            synonym_pairs.len()
        ),
    );
}
