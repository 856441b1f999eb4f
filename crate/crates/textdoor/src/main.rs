//! Command-line front end: poison -> train -> eval -> detect, plus a
//! `run-all` that chains the whole experiment and a `gen-data` that
//! materializes the bundled synthetic corpus.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use textdoor::corpus::{self, Dataset, Split};
use textdoor::defense::{self, Watchlist};
use textdoor::error::{Error, Result};
use textdoor::eval::{self, EvalReport, ReportFormat};
use textdoor::lists::SpecialWordLists;
use textdoor::manifest::RunManifest;
use textdoor::model::{self, FeatureConfig, LinearModel, TrainConfig};
use textdoor::poison::{poison_test_set, poison_training_set, PoisonConfig};
use textdoor::synth;
use textdoor::trigger::{classify_naturalness, parse_trigger_file, validate_trigger, TriggerSpec, Verdict};

#[derive(Parser)]
#[command(name = "textdoor", version, about = "Backdoor-trigger poisoning and evaluation toolkit for text classifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poison a training split and build the triggered evaluation split.
    Poison(PoisonArgs),
    /// Train the hashed-n-gram linear classifier on a JSONL split.
    Train(TrainArgs),
    /// Evaluate accuracy, attack success rate, and discover rate.
    Eval(EvalArgs),
    /// Scan a poisoned JSONL split for suspicious tokens.
    Detect(DetectArgs),
    /// Run poison -> train -> eval -> detect in one reproducible invocation.
    RunAll(RunAllArgs),
    /// Write the bundled synthetic sentiment corpus as TSV splits.
    GenData(GenDataArgs),
}

#[derive(Args, Clone)]
struct PoisonFlags {
    /// Trigger spec file (one trigger per stanza).
    #[arg(long)]
    trigger: PathBuf,
    /// Trigger id to use when the spec file holds several stanzas.
    #[arg(long)]
    trigger_id: Option<String>,
    /// Optional key=value config file (poison_rate, target_label, seed, trigger).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fraction of eligible training examples to poison.
    #[arg(long)]
    rate: Option<f64>,
    /// Target class the trigger should force.
    #[arg(long)]
    target: Option<u8>,
    /// Seed for every random decision in the run.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Clone)]
struct ModelFlags {
    #[arg(long, default_value_t = 3)]
    epochs: u32,
    #[arg(long, default_value_t = 32)]
    batch_size: u32,
    #[arg(long, default_value_t = 0.1)]
    lr: f64,
    #[arg(long, default_value_t = 1e-6)]
    l2: f64,
    #[arg(long, default_value_t = 1 << 18)]
    hash_dim: u32,
    /// Disable within-token character n-gram features.
    #[arg(long)]
    no_char_features: bool,
    /// Comma-separated word n-gram orders.
    #[arg(long, default_value = "1,2")]
    word_ngrams: String,
    /// Comma-separated character n-gram orders.
    #[arg(long, default_value = "3,4")]
    char_ngrams: String,
}

impl ModelFlags {
    fn feature_config(&self) -> Result<FeatureConfig> {
        let parse = |s: &str| -> Result<Vec<u8>> {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Config(format!("bad n-gram order {p:?}")))
                })
                .collect()
        };
        let cfg = FeatureConfig {
            hash_dim: self.hash_dim,
            word_ngrams: parse(&self.word_ngrams)?,
            char_ngrams: parse(&self.char_ngrams)?,
            use_char_features: !self.no_char_features,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn train_config(&self, seed: u64) -> Result<TrainConfig> {
        let cfg = TrainConfig {
            epochs: self.epochs,
            learning_rate: self.lr,
            batch_size: self.batch_size,
            seed,
            l2: self.l2,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Clone)]
struct ListFlags {
    /// Extra dictionary words, one token per line.
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Extra synonym pairs, one tab-separated pair per line.
    #[arg(long)]
    synonyms: Option<PathBuf>,
}

impl ListFlags {
    fn load(&self) -> Result<SpecialWordLists> {
        let mut lists = SpecialWordLists::from_env()?;
        if let Some(path) = &self.dict {
            lists.extend_dictionary_from_file(path)?;
        }
        if let Some(path) = &self.synonyms {
            lists.extend_synonyms_from_file(path)?;
        }
        Ok(lists)
    }
}

#[derive(Args)]
struct PoisonArgs {
    /// Clean training split (TSV or JSONL).
    #[arg(long)]
    train: PathBuf,
    /// Clean test split (TSV or JSONL).
    #[arg(long)]
    test: PathBuf,
    #[command(flatten)]
    poison: PoisonFlags,
    #[command(flatten)]
    lists: ListFlags,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct TrainArgs {
    /// Training split, usually the poisoned JSONL from `poison`.
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    model: ModelFlags,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Model file name inside --out-dir.
    #[arg(long, default_value = "model.bin")]
    model_name: String,
}

#[derive(Args)]
struct EvalArgs {
    /// Model trained on the poisoned split.
    #[arg(long)]
    model: PathBuf,
    /// Model trained on the clean split, for before/after accuracy.
    #[arg(long)]
    baseline_model: Option<PathBuf>,
    /// Clean test split (TSV or JSONL).
    #[arg(long)]
    test: PathBuf,
    /// Optional clean dev split, reported alongside the test split.
    #[arg(long)]
    dev: Option<PathBuf>,
    /// Triggered evaluation split (JSONL) for attack success rate.
    #[arg(long)]
    poisoned_test: Option<PathBuf>,
    /// Trigger spec file; supplies id, scope, and naturalness.
    #[arg(long)]
    trigger: PathBuf,
    #[arg(long)]
    trigger_id: Option<String>,
    /// Clean training split; its vocabulary extends the dictionary.
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    target: u8,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long)]
    watchlist: Option<PathBuf>,
    #[command(flatten)]
    lists: ListFlags,
}

#[derive(Args)]
struct DetectArgs {
    /// Poisoned JSONL split to scan.
    #[arg(long)]
    input: PathBuf,
    /// Clean training split; its vocabulary extends the dictionary.
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long)]
    watchlist: Option<PathBuf>,
    #[command(flatten)]
    lists: ListFlags,
    /// Where to write the JSONL scan report (next to stdout summary).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct RunAllArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    test: PathBuf,
    #[arg(long)]
    dev: Option<PathBuf>,
    #[command(flatten)]
    poison: PoisonFlags,
    #[command(flatten)]
    model: ModelFlags,
    #[command(flatten)]
    lists: ListFlags,
    #[arg(long)]
    watchlist: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct GenDataArgs {
    #[arg(long, default_value = "data")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    #[arg(long, default_value_t = 3000)]
    train_size: usize,
    #[arg(long, default_value_t = 500)]
    dev_size: usize,
    #[arg(long, default_value_t = 1000)]
    test_size: usize,
    /// Label noise in permille (contradictory labels per thousand examples).
    #[arg(long, default_value_t = synth::DEFAULT_NOISE_PERMILLE)]
    noise_permille: u32,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poison(args) => cmd_poison(args),
        Command::Train(args) => cmd_train(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Detect(args) => cmd_detect(args),
        Command::RunAll(args) => cmd_run_all(args),
        Command::GenData(args) => cmd_gen_data(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn load_split(path: &Path, split: Split) -> Result<Dataset> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("jsonl") => corpus::load_jsonl(path, split),
        _ => corpus::load_tsv(path, split),
    }
}

fn ensure_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Resolved poisoning options: config-file values overridden by CLI flags,
/// falling back to defaults (rate 0.1, target 0, seed 7).
struct ResolvedPoison {
    cfg: PoisonConfig,
    trigger_path: PathBuf,
}

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in raw.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            msg: format!("expected `key = value`, got {line:?}"),
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn select_trigger(specs: Vec<TriggerSpec>, wanted: Option<&str>) -> Result<TriggerSpec> {
    match wanted {
        Some(id) => specs
            .into_iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::Config(format!("no trigger with id {id:?} in spec file"))),
        None => Ok(specs.into_iter().next().expect("parser yields >= 1 stanza")),
    }
}

fn resolve_poison(flags: &PoisonFlags) -> Result<ResolvedPoison> {
    let file_cfg = match &flags.config {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    let parse_from_file = |key: &str| file_cfg.get(key).cloned();

    let rate = match (flags.rate, parse_from_file("poison_rate")) {
        (Some(r), _) => r,
        (None, Some(s)) => s
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("bad poison_rate {s:?} in config file")))?,
        (None, None) => 0.1,
    };
    let target = match (flags.target, parse_from_file("target_label")) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .parse::<u8>()
            .map_err(|_| Error::Config(format!("bad target_label {s:?} in config file")))?,
        (None, None) => 0,
    };
    let seed = match (flags.seed, parse_from_file("seed")) {
        (Some(s), _) => s,
        (None, Some(s)) => s
            .parse::<u64>()
            .map_err(|_| Error::Config(format!("bad seed {s:?} in config file")))?,
        (None, None) => 7,
    };
    let trigger_id = flags
        .trigger_id
        .clone()
        .or_else(|| parse_from_file("trigger"));

    let specs = parse_trigger_file(&flags.trigger)?;
    let trigger = select_trigger(specs, trigger_id.as_deref())?;

    let cfg = PoisonConfig {
        poison_rate: rate,
        target_label: target,
        seed,
        trigger,
    };
    cfg.validate()?;
    Ok(ResolvedPoison {
        cfg,
        trigger_path: flags.trigger.clone(),
    })
}

fn poison_splits(
    train: &Dataset,
    test: &Dataset,
    cfg: &PoisonConfig,
    lists: &SpecialWordLists,
    out_dir: &Path,
) -> Result<(Dataset, Dataset)> {
    if let Verdict::Rejected { rule } = validate_trigger(&cfg.trigger, lists) {
        return Err(Error::SpecialTrigger { rule });
    }
    let train_out = poison_training_set(train, cfg, lists)?;
    if train_out.warnings > 0 {
        eprintln!(
            "warning: {} of {} poison selections had no substitute candidate",
            train_out.warnings, train_out.requested
        );
    }
    let test_out = poison_test_set(test, cfg, lists)?;
    if test_out.warnings > 0 {
        eprintln!(
            "warning: trigger not applicable to {} of {} eligible test examples",
            test_out.warnings, test_out.requested
        );
    }
    ensure_out_dir(out_dir)?;
    corpus::save_jsonl(&train_out.dataset, &out_dir.join("poisoned_train.jsonl"))?;
    corpus::save_jsonl(&test_out.dataset, &out_dir.join("poisoned_test.jsonl"))?;
    Ok((train_out.dataset, test_out.dataset))
}

fn poison_manifest_blob(cfg: &PoisonConfig) -> String {
    format!(
        "poison_rate={}\ntarget_label={}\nseed={}\ntrigger={}\nscope={}\nstrategy={}\npayload={:?}\nanchor={:?}\nplacement={}\n",
        cfg.poison_rate,
        cfg.target_label,
        cfg.seed,
        cfg.trigger.id,
        cfg.trigger.scope,
        cfg.trigger.strategy,
        cfg.trigger.payload,
        cfg.trigger.anchor,
        cfg.trigger.placement
    )
}

fn cmd_poison(args: PoisonArgs) -> Result<()> {
    let resolved = resolve_poison(&args.poison)?;
    let train = load_split(&args.train, Split::Train)?;
    let test = load_split(&args.test, Split::Test)?;
    let mut lists = args.lists.load()?;
    lists.extend_dictionary_with_corpus(&train);

    poison_splits(&train, &test, &resolved.cfg, &lists, &args.out_dir)?;

    let manifest = RunManifest::new(
        resolved.cfg.seed,
        &poison_manifest_blob(&resolved.cfg),
        &[&args.train, &args.test, &resolved.trigger_path],
    )?;
    manifest.save(&args.out_dir.join("manifest.json"))?;
    println!(
        "poisoned splits written to {} (trigger {})",
        args.out_dir.display(),
        resolved.cfg.trigger.id
    );
    Ok(())
}

fn cmd_train(args: TrainArgs) -> Result<()> {
    let train = load_split(&args.train, Split::Train)?;
    let seed = args.seed.unwrap_or(7);
    let fcfg = args.model.feature_config()?;
    let tcfg = args.model.train_config(seed)?;
    let model = model::train(&train, &fcfg, &tcfg)?;
    let final_loss = model::mean_log_loss(&model, &train)?;
    ensure_out_dir(&args.out_dir)?;
    let path = args.out_dir.join(&args.model_name);
    model.save(&path)?;
    println!("final training loss: {final_loss:.6}");
    println!("model written to {}", path.display());
    Ok(())
}

struct EvalInputs<'a> {
    poisoned_model: &'a LinearModel,
    baseline_model: Option<&'a LinearModel>,
    clean_test: &'a Dataset,
    poisoned_test: Option<&'a Dataset>,
    trigger: &'a TriggerSpec,
    target: u8,
    lists: &'a SpecialWordLists,
    watchlist: &'a Watchlist,
}

fn build_report(inp: &EvalInputs) -> Result<EvalReport> {
    let acc_after = eval::accuracy(inp.poisoned_model, inp.clean_test)?;
    let acc_before = match inp.baseline_model {
        Some(m) => Some(eval::accuracy(m, inp.clean_test)?),
        None => None,
    };
    let (asr, discover, n_poisoned) = match inp.poisoned_test {
        Some(p) => (
            Some(eval::attack_success_rate(inp.poisoned_model, p, inp.target)?),
            Some(defense::discover_rate(p, inp.lists, inp.watchlist)?),
            p.len(),
        ),
        None => (None, None, 0),
    };
    Ok(EvalReport {
        trigger_id: inp.trigger.id.clone(),
        scope: inp.trigger.scope,
        naturalness: classify_naturalness(inp.trigger, inp.lists),
        clean_accuracy_before: acc_before,
        clean_accuracy_after: acc_after,
        asr,
        discover_rate: discover,
        n_clean: inp.clean_test.len(),
        n_poisoned_eval: n_poisoned,
    })
}

fn print_report(report: &EvalReport, format: ReportFormat, dev_lines: &[String]) {
    print!("{}", eval::report_table(std::slice::from_ref(report), format));
    if format == ReportFormat::Text {
        for line in dev_lines {
            println!("{line}");
        }
        if let Some(d) = report.discover_rate {
            println!("discover_rate: {:.2}", d);
        }
        println!(
            "n_clean: {}  n_poisoned_eval: {}",
            report.n_clean, report.n_poisoned_eval
        );
    }
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let format: ReportFormat = args.format.parse()?;
    let poisoned_model = LinearModel::load(&args.model)?;
    let baseline_model = args
        .baseline_model
        .as_deref()
        .map(LinearModel::load)
        .transpose()?;
    let clean_test = load_split(&args.test, Split::Test)?;
    let poisoned_test = args
        .poisoned_test
        .as_deref()
        .map(|p| corpus::load_jsonl(p, Split::Test))
        .transpose()?;
    let specs = parse_trigger_file(&args.trigger)?;
    let trigger = select_trigger(specs, args.trigger_id.as_deref())?;
    let mut lists = args.lists.load()?;
    if let Some(train_path) = &args.train {
        lists.extend_dictionary_with_corpus(&load_split(train_path, Split::Train)?);
    }
    let watchlist = match &args.watchlist {
        Some(p) => Watchlist::from_file(p)?,
        None => Watchlist::empty(),
    };

    let report = build_report(&EvalInputs {
        poisoned_model: &poisoned_model,
        baseline_model: baseline_model.as_ref(),
        clean_test: &clean_test,
        poisoned_test: poisoned_test.as_ref(),
        trigger: &trigger,
        target: args.target,
        lists: &lists,
        watchlist: &watchlist,
    })?;

    let mut dev_lines = Vec::new();
    if let Some(dev_path) = &args.dev {
        let dev = load_split(dev_path, Split::Dev)?;
        let acc = eval::accuracy(&poisoned_model, &dev)?;
        dev_lines.push(format!("dev_accuracy_after: {:.2}", acc * 100.0));
        if let Some(m) = &baseline_model {
            let acc = eval::accuracy(m, &dev)?;
            dev_lines.push(format!("dev_accuracy_before: {:.2}", acc * 100.0));
        }
    }
    print_report(&report, format, &dev_lines);
    Ok(())
}

fn cmd_detect(args: DetectArgs) -> Result<()> {
    let d = corpus::load_jsonl(&args.input, Split::Test)?;
    if d.is_empty() {
        return Err(Error::Eval(format!(
            "no examples to scan in {}",
            args.input.display()
        )));
    }
    let mut lists = args.lists.load()?;
    if let Some(train_path) = &args.train {
        lists.extend_dictionary_with_corpus(&load_split(train_path, Split::Train)?);
    }
    let watchlist = match &args.watchlist {
        Some(p) => Watchlist::from_file(p)?,
        None => Watchlist::empty(),
    };
    let results = defense::scan_dataset(&d, &lists, &watchlist);
    if let Some(out_dir) = &args.out_dir {
        ensure_out_dir(out_dir)?;
        let path = out_dir.join("scan.jsonl");
        let mut buf = String::new();
        for r in &results {
            buf.push_str(&serde_json::to_string(r).map_err(|e| Error::Structural(e.to_string()))?);
            buf.push('\n');
        }
        std::fs::write(&path, buf).map_err(|e| Error::io(&path, e))?;
        println!("scan report written to {}", path.display());
    }
    let rate = defense::discover_rate(&d, &lists, &watchlist)?;
    println!("discover_rate: {rate:.2}");
    Ok(())
}

fn cmd_run_all(args: RunAllArgs) -> Result<()> {
    let format: ReportFormat = args.format.parse()?;
    let resolved = resolve_poison(&args.poison)?;
    let cfg = &resolved.cfg;
    let train = load_split(&args.train, Split::Train)?;
    let test = load_split(&args.test, Split::Test)?;
    let dev = args
        .dev
        .as_deref()
        .map(|p| load_split(p, Split::Dev))
        .transpose()?;
    let mut lists = args.lists.load()?;
    lists.extend_dictionary_with_corpus(&train);
    let watchlist = match &args.watchlist {
        Some(p) => Watchlist::from_file(p)?,
        None => Watchlist::empty(),
    };

    let (poisoned_train, poisoned_test) =
        poison_splits(&train, &test, cfg, &lists, &args.out_dir)?;

    let fcfg = args.model.feature_config()?;
    let tcfg = args.model.train_config(cfg.seed)?;
    let poisoned_model = model::train(&poisoned_train, &fcfg, &tcfg)?;
    let final_loss = model::mean_log_loss(&poisoned_model, &poisoned_train)?;
    println!("final training loss (poisoned model): {final_loss:.6}");
    let baseline_model = model::train(&train, &fcfg, &tcfg)?;
    poisoned_model.save(&args.out_dir.join("model.bin"))?;
    baseline_model.save(&args.out_dir.join("baseline_model.bin"))?;

    let report = build_report(&EvalInputs {
        poisoned_model: &poisoned_model,
        baseline_model: Some(&baseline_model),
        clean_test: &test,
        poisoned_test: Some(&poisoned_test),
        trigger: &cfg.trigger,
        target: cfg.target_label,
        lists: &lists,
        watchlist: &watchlist,
    })?;

    let mut dev_lines = Vec::new();
    if let Some(dev) = &dev {
        dev_lines.push(format!(
            "dev_accuracy_after: {:.2}",
            eval::accuracy(&poisoned_model, dev)? * 100.0
        ));
        dev_lines.push(format!(
            "dev_accuracy_before: {:.2}",
            eval::accuracy(&baseline_model, dev)? * 100.0
        ));
    }
    print_report(&report, format, &dev_lines);

    let rendered = eval::report_table(std::slice::from_ref(&report), format);
    let ext = match format {
        ReportFormat::Text => "txt",
        ReportFormat::Csv => "csv",
        ReportFormat::Json => "json",
    };
    let report_path = args.out_dir.join(format!("report.{ext}"));
    std::fs::write(&report_path, rendered).map_err(|e| Error::io(&report_path, e))?;

    let scan = defense::scan_dataset(&poisoned_test, &lists, &watchlist);
    let mut buf = String::new();
    for r in &scan {
        buf.push_str(&serde_json::to_string(r).map_err(|e| Error::Structural(e.to_string()))?);
        buf.push('\n');
    }
    let scan_path = args.out_dir.join("scan.jsonl");
    std::fs::write(&scan_path, buf).map_err(|e| Error::io(&scan_path, e))?;

    let blob = format!(
        "{}epochs={}\nbatch_size={}\nlr={}\nl2={}\nhash_dim={}\nword_ngrams={}\nchar_ngrams={}\nuse_char_features={}\nformat={:?}\n",
        poison_manifest_blob(cfg),
        tcfg.epochs,
        tcfg.batch_size,
        tcfg.learning_rate,
        tcfg.l2,
        fcfg.hash_dim,
        args.model.word_ngrams,
        args.model.char_ngrams,
        fcfg.use_char_features,
        args.format,
    );
    let mut inputs: Vec<&Path> = vec![&args.train, &args.test, &resolved.trigger_path];
    if let Some(dev) = &args.dev {
        inputs.push(dev);
    }
    let manifest = RunManifest::new(cfg.seed, &blob, &inputs)?;
    manifest.save(&args.out_dir.join("manifest.json"))?;
    Ok(())
}

fn cmd_gen_data(args: GenDataArgs) -> Result<()> {
    ensure_out_dir(&args.out_dir)?;
    let noise = args.noise_permille;
    let train = synth::generate_split_noisy(args.train_size, args.seed, Split::Train, noise);
    let dev = synth::generate_split_noisy(args.dev_size, args.seed.wrapping_add(1), Split::Dev, noise);
    let test = synth::generate_split_noisy(args.test_size, args.seed.wrapping_add(2), Split::Test, noise);
    corpus::save_tsv(&train, &args.out_dir.join("train.tsv"))?;
    corpus::save_tsv(&dev, &args.out_dir.join("dev.tsv"))?;
    corpus::save_tsv(&test, &args.out_dir.join("test.tsv"))?;
    println!(
        "wrote {} train / {} dev / {} test examples to {}",
        train.len(),
        dev.len(),
        test.len(),
        args.out_dir.display()
    );
    Ok(())
}
