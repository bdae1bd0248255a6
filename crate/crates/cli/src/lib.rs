//! Command-line driver: argument parsing, run configuration and the
//! subcommands wiring corpus, features, learning and evaluation.

pub mod config;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use stancecue::corpus::synth::TopicRole;
use stancecue::corpus::{
    complement_topics, corpus_stats, filter_by_threshold, generate_synthetic, load_pairs, split_by_topic, write_pairs,
    AnnotatedPair, DatasetSplit, SyntheticSpec,
};
use stancecue::eval::{
    emit_report, evaluate, feature_selection_sweep, run_ablation, run_comparison, run_individual, runs_table,
    topic_table, Ablation, Comparison, Individual, ReportFormat, Sweep, Table, FIT_ON_TEST_WARNING,
};
use stancecue::features::{featurize_all, read_matrix, write_matrix, FeatureGroup, FeatureSetSpec, FeatureSpace, PolarityMode};
use stancecue::learn::{
    load_model, rank_features, save_model, select_top_k, Dataset, Model, TreeParams,
};
use stancecue::lexicons::LexiconSet;
use stancecue::textproc::NgramScope;

pub use config::{Mode, RunConfig};

/// An invalid configuration, input file or schema (exit code 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn cfg<T>(r: std::result::Result<T, impl std::fmt::Display>, what: impl std::fmt::Display) -> Result<T> {
    r.map_err(|e| ConfigError(format!("{what}: {e}")).into())
}

pub const RESOLVED_CONFIG: &str = "config.resolved.toml";
pub const RESULTS_JSON: &str = "results.json";

#[derive(Parser, Debug)]
#[command(name = "stancecue", version, about = "Agreement/disagreement classification experiments")]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct LexiconArgs {
    /// Directory of `<name>.lex` files overriding the shipped lexicons.
    #[arg(long)]
    pub lexicon_dir: Option<PathBuf>,
    /// MPQA subjectivity clue file (default: the shipped sample).
    #[arg(long)]
    pub mpqa: Option<PathBuf>,
}

impl LexiconArgs {
    fn load(&self) -> Result<LexiconSet> {
        load_lexicons(self.lexicon_dir.as_deref(), self.mpqa.as_deref())
    }
}

#[derive(Args, Debug, Clone)]
pub struct ThresholdArgs {
    /// Mean judgments at or below this are DISAGREEMENT.
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub lo: f64,
    /// Mean judgments at or above this are AGREEMENT.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub hi: f64,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FeatureFlags {
    /// Polarity aggregation: sum or mean.
    #[arg(long, value_parser = parse_polarity)]
    pub polarity_mode: Option<PolarityMode>,
    /// N-gram tokens: words-only or with-punct.
    #[arg(long, value_parser = parse_scope)]
    pub ngram_scope: Option<NgramScope>,
}

fn parse_polarity(s: &str) -> std::result::Result<PolarityMode, String> {
    match s {
        "sum" => Ok(PolarityMode::Sum),
        "mean" => Ok(PolarityMode::Mean),
        _ => Err(format!("expected sum or mean, got {s:?}")),
    }
}

fn parse_scope(s: &str) -> std::result::Result<NgramScope, String> {
    match s {
        "words-only" => Ok(NgramScope::WordsOnly),
        "with-punct" => Ok(NgramScope::WithPunct),
        _ => Err(format!("expected words-only or with-punct, got {s:?}")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a corpus and print its per-topic label distribution.
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        threshold: ThresholdArgs,
    },
    /// Generate a synthetic corpus.
    Synth {
        #[arg(long)]
        seed: u64,
        /// Generator spec (TOML); the shipped default when omitted.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Featurize a corpus split into train and test matrices.
    Featurize {
        #[arg(long)]
        corpus: PathBuf,
        /// Feature set, e.g. all-tm, unigram, bigram, denial+hedge.
        #[arg(long, default_value = "all-tm")]
        features: String,
        #[arg(long, value_delimiter = ',', required = true)]
        train_topics: Vec<String>,
        /// Default: every other topic.
        #[arg(long, value_delimiter = ',')]
        test_topics: Vec<String>,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        threshold: ThresholdArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,
        #[command(flatten)]
        flags: FeatureFlags,
    },
    /// Rank the attributes of a feature matrix by gain ratio.
    SelectFeatures {
        #[arg(long)]
        matrix: PathBuf,
        /// Print only the top k.
        #[arg(long)]
        k: Option<usize>,
        /// Write the ranking as TSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a model on a feature matrix.
    Train {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "tree")]
        learner: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Train on the k attributes with the highest gain ratio.
        #[arg(long)]
        select_k: Option<usize>,
        #[arg(long, default_value_t = 0.25)]
        confidence: f64,
        #[arg(long, default_value_t = 2)]
        min_leaf: usize,
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = 10)]
        num_trees: usize,
        #[arg(long)]
        features_per_split: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        lexicons: LexiconArgs,
    },
    /// Score a saved model on a feature matrix.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Write the per-instance predictions as TSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment matrix from a config file and write reports.
    Run(RunArgs),
    /// Re-render the reports of a finished run.
    Report {
        /// A results.json written by `run`.
        #[arg(long)]
        results: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FormatArg {
    Text,
    Tsv,
}

/// Flags override the config file; unset flags leave it alone.
#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// Run configuration (TOML). Defaults apply to anything it omits.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// compare, ablate, individual or sweep.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Comma-separated feature sets, e.g. all-tm,unigram,bigram.
    #[arg(long, value_delimiter = ',')]
    pub groups: Vec<String>,
    /// Comma-separated learners: tree, forest.
    #[arg(long, value_delimiter = ',')]
    pub learners: Vec<String>,
    /// Seed for the synthetic corpus and the forests.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Annotated corpus (TSV or CSV); a synthetic corpus is generated when absent.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Synthetic generator spec (TOML).
    #[arg(long)]
    pub synthetic_spec: Option<PathBuf>,
    /// Directory of `<name>.lex` files overriding the shipped lexicons.
    #[arg(long)]
    pub lexicon_dir: Option<PathBuf>,
    /// MPQA subjectivity clue file.
    #[arg(long)]
    pub mpqa: Option<PathBuf>,
    /// Directory for the reports, results.json and the resolved config.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Comma-separated training topics.
    #[arg(long, value_delimiter = ',')]
    pub train_topics: Vec<String>,
    /// Comma-separated test topics (default: every other topic).
    #[arg(long, value_delimiter = ',')]
    pub test_topics: Vec<String>,
    /// Attribute counts for `--mode sweep`.
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<usize>,
    /// Train on the k attributes with the highest gain ratio.
    #[arg(long)]
    pub select_k: Option<usize>,
    /// Test-set folds for the paired t-test.
    #[arg(long)]
    pub folds: Option<usize>,
    /// Rank features on the TEST set (optimistic upper bound).
    #[arg(long)]
    pub fit_on_test: bool,
    /// Add a per-topic accuracy table.
    #[arg(long)]
    pub per_topic: bool,
    #[command(flatten)]
    pub flags: FeatureFlags,
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(m) = self.mode {
            c.mode = m;
        }
        if !self.groups.is_empty() {
            c.features.sets = self.groups.clone();
        }
        if !self.learners.is_empty() {
            c.learners = self.learners.clone();
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(p) = &self.corpus {
            c.paths.corpus = Some(p.clone());
        }
        if let Some(p) = &self.synthetic_spec {
            c.paths.synthetic_spec = Some(p.clone());
        }
        if let Some(p) = &self.lexicon_dir {
            c.paths.lexicon_dir = Some(p.clone());
        }
        if let Some(p) = &self.mpqa {
            c.paths.mpqa = Some(p.clone());
        }
        if let Some(p) = &self.output {
            c.paths.output = p.clone();
        }
        if !self.train_topics.is_empty() {
            c.split.train_topics = self.train_topics.clone();
        }
        if !self.test_topics.is_empty() {
            c.split.test_topics = self.test_topics.clone();
        }
        if !self.ks.is_empty() {
            c.ks = self.ks.clone();
        }
        if let Some(k) = self.select_k {
            c.features.select_k = Some(k);
        }
        if let Some(f) = self.folds {
            c.folds = f;
        }
        c.fit_on_test |= self.fit_on_test;
        c.per_topic |= self.per_topic;
        if let Some(p) = self.flags.polarity_mode {
            c.features.polarity_mode = p;
        }
        if let Some(s) = self.flags.ngram_scope {
            c.features.ngram_scope = s;
        }
        c.validate()?;
        Ok(c)
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code: 0 on success, 2 for configuration or
/// input errors, 1 for failures while running.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.threads {
        Some(0) => Err(ConfigError("--threads must be at least 1".into()).into()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| dispatch(cli.command))
        }
        None => dispatch(cli.command),
    }
}

fn dispatch(command: Command) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match command {
        Command::Ingest { corpus, threshold } => cmd_ingest(&corpus, threshold.lo, threshold.hi, &mut stdout),
        Command::Synth { seed, spec, out } => cmd_synth(seed, spec.as_deref(), &out, &mut stdout),
        Command::Featurize {
            corpus,
            features,
            train_topics,
            test_topics,
            out_dir,
            threshold,
            lexicons,
            flags,
        } => {
            let mut c = RunConfig::default();
            c.paths.corpus = Some(corpus);
            c.split = config::SplitConfig {
                train_topics,
                test_topics,
                lo: threshold.lo,
                hi: threshold.hi,
            };
            c.features.sets = vec![features];
            c.paths.lexicon_dir = lexicons.lexicon_dir;
            c.paths.mpqa = lexicons.mpqa;
            if let Some(p) = flags.polarity_mode {
                c.features.polarity_mode = p;
            }
            if let Some(s) = flags.ngram_scope {
                c.features.ngram_scope = s;
            }
            c.validate()?;
            cmd_featurize(&c, &out_dir, &mut stdout)
        }
        Command::SelectFeatures { matrix, k, out } => cmd_select(&matrix, k, out.as_deref(), &mut stdout),
        Command::Train {
            matrix,
            learner,
            seed,
            select_k,
            confidence,
            min_leaf,
            no_prune,
            num_trees,
            features_per_split,
            out,
            lexicons,
        } => {
            let mut c = RunConfig {
                seed,
                learners: vec![learner],
                tree: TreeParams {
                    confidence,
                    min_leaf,
                    prune: !no_prune,
                    ..TreeParams::default()
                },
                ..RunConfig::default()
            };
            c.forest.num_trees = num_trees;
            c.forest.features_per_split = features_per_split;
            c.features.select_k = select_k;
            c.validate()?;
            cmd_train(&c, &matrix, &lexicons, &out, &mut stdout)
        }
        Command::Evaluate { model, matrix, out } => cmd_evaluate(&model, &matrix, out.as_deref(), &mut stdout),
        Command::Run(args) => {
            let c = args.resolve()?;
            cmd_run(&c, &mut stdout)
        }
        Command::Report { results, format } => {
            let format = match format {
                FormatArg::Text => ReportFormat::Text,
                FormatArg::Tsv => ReportFormat::Tsv,
            };
            cmd_report(&results, format, &mut stdout)
        }
    }
}

pub fn load_lexicons(dir: Option<&Path>, mpqa: Option<&Path>) -> Result<LexiconSet> {
    if dir.is_none() && mpqa.is_none() {
        return Ok(LexiconSet::shipped());
    }
    cfg(LexiconSet::load_dir(dir, mpqa), "lexicons")
}

fn read_corpus(path: &Path) -> Result<Vec<AnnotatedPair>> {
    let file = cfg(fs::File::open(path), path.display())?;
    cfg(load_pairs(std::io::BufReader::new(file)), path.display())
}

pub fn cmd_ingest(path: &Path, lo: f64, hi: f64, out: &mut impl Write) -> Result<()> {
    let pairs = read_corpus(path)?;
    let labeled = cfg(filter_by_threshold(&pairs, lo, hi), "threshold")?;
    let stats = corpus_stats(&labeled);
    let mut t = Table::new("distribution", &["topic", "agree", "disagree", "total"]);
    t.notes.push(format!(
        "{} pairs read, {} labeled, {} dropped (mean judgment strictly between {lo} and {hi})",
        pairs.len(),
        labeled.len(),
        pairs.len() - labeled.len()
    ));
    let (mut a, mut d) = (0, 0);
    for (topic, c) in &stats {
        a += c.agree;
        d += c.disagree;
        t.push(vec![topic.clone(), c.agree.to_string(), c.disagree.to_string(), c.total().to_string()]);
    }
    if !stats.is_empty() {
        t.push(vec!["total".into(), a.to_string(), d.to_string(), (a + d).to_string()]);
    }
    out.write_all(&emit_report(&t, ReportFormat::Text))?;
    Ok(())
}

fn load_spec(path: Option<&Path>) -> Result<SyntheticSpec> {
    match path {
        None => Ok(SyntheticSpec::shipped()),
        Some(p) => {
            let text = cfg(fs::read_to_string(p), p.display())?;
            cfg(SyntheticSpec::from_toml(&text), p.display())
        }
    }
}

pub fn cmd_synth(seed: u64, spec: Option<&Path>, path: &Path, out: &mut impl Write) -> Result<()> {
    let spec = load_spec(spec)?;
    let pairs = cfg(generate_synthetic(seed, &spec), "synthetic spec")?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = std::io::BufWriter::new(file);
    write_pairs(&pairs, &mut w)?;
    w.flush()?;
    let topics: BTreeSet<&str> = pairs.iter().map(|p| p.topic.as_str()).collect();
    writeln!(
        out,
        "wrote {} pairs over {} topics ({}) to {}",
        pairs.len(),
        topics.len(),
        topics.into_iter().collect::<Vec<_>>().join(", "),
        path.display()
    )?;
    Ok(())
}

/// The labeled train/test split a config describes.
pub fn build_split(c: &RunConfig) -> Result<DatasetSplit> {
    let (pairs, default_train) = match &c.paths.corpus {
        Some(p) => (read_corpus(p)?, BTreeSet::new()),
        None => {
            let spec = load_spec(c.paths.synthetic_spec.as_deref())?;
            let pairs = cfg(generate_synthetic(c.seed, &spec), "synthetic spec")?;
            (pairs, spec.topics_with_role(TopicRole::Train))
        }
    };
    let labeled = cfg(filter_by_threshold(&pairs, c.split.lo, c.split.hi), "split")?;
    let train: BTreeSet<String> = if c.split.train_topics.is_empty() {
        default_train
    } else {
        c.split.train_topics.iter().cloned().collect()
    };
    let test: BTreeSet<String> = if c.split.test_topics.is_empty() {
        complement_topics(&labeled, &train)
    } else {
        c.split.test_topics.iter().cloned().collect()
    };
    let split = cfg(split_by_topic(&labeled, &train, &test), "split")?;
    if split.train.is_empty() || split.test.is_empty() {
        return Err(ConfigError(format!(
            "split has {} train and {} test pairs; both must be non-empty",
            split.train.len(),
            split.test.len()
        ))
        .into());
    }
    Ok(split)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_featurize(c: &RunConfig, out_dir: &Path, out: &mut impl Write) -> Result<()> {
    let split = build_split(c)?;
    let lex = load_lexicons(c.paths.lexicon_dir.as_deref(), c.paths.mpqa.as_deref())?;
    let spec: FeatureSetSpec = c.feature_sets()?.remove(0);
    let space = FeatureSpace::for_spec(&spec, &split.train, &lex, c.feature_options())?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    for (name, pairs) in [("train", &split.train), ("test", &split.test)] {
        let rows = featurize_all(pairs, &space, &lex)?;
        let ids: Vec<String> = pairs.iter().map(|p| p.pair.pair_id.clone()).collect();
        let mut buf = Vec::new();
        write_matrix(&space, &ids, &rows, &mut buf)?;
        write_file(&out_dir.join(format!("{name}.tsv")), &buf)?;
        writeln!(out, "{name}: {} rows x {} attributes", rows.len(), space.len())?;
    }
    Ok(())
}

fn read_dataset(path: &Path) -> Result<Dataset> {
    let file = cfg(fs::File::open(path), path.display())?;
    let (space, ids, rows) = cfg(read_matrix(std::io::BufReader::new(file)), path.display())?;
    cfg(Dataset::new(space, rows, ids), path.display())
}

pub fn cmd_select(matrix: &Path, k: Option<usize>, path: Option<&Path>, out: &mut impl Write) -> Result<()> {
    let data = read_dataset(matrix)?;
    let ranking = rank_features(&data)?;
    let mut t = Table::new("ranking", &["rank", "attribute", "gain_ratio", "threshold"]);
    for (i, e) in ranking.entries.iter().take(k.unwrap_or(usize::MAX)).enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            e.name.clone(),
            format!("{:.6}", e.score),
            e.threshold.map_or_else(|| "-".into(), |x| x.to_string()),
        ]);
    }
    t.notes.extend(ranking.diagnostics.iter().map(|d| format!("unscored: {d}")));
    match path {
        Some(p) => write_file(p, &emit_report(&t, ReportFormat::Tsv)),
        None => Ok(out.write_all(&emit_report(&t, ReportFormat::Text))?),
    }
}

pub fn cmd_train(c: &RunConfig, matrix: &Path, lexicons: &LexiconArgs, path: &Path, out: &mut impl Write) -> Result<()> {
    let data = read_dataset(matrix)?;
    let lex = lexicons.load()?;
    let learner = c.learner_specs()?.remove(0);
    let (train, selected) = match c.features.select_k {
        None => (data.clone(), None),
        Some(k) => {
            let ranking = rank_features(&data)?;
            let (_, idx) = cfg(select_top_k(&ranking, &data.space, k), "select_k")?;
            (data.restrict(&idx), Some(idx))
        }
    };
    let classifier = learner.train(&train, c.seed)?;
    let model = Model::new(data.space, selected, classifier, lex.versions());
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = std::io::BufWriter::new(file);
    save_model(&model, &mut w)?;
    w.flush()?;
    writeln!(
        out,
        "trained {} on {} rows x {} attributes; model written to {}",
        learner.name(),
        train.len(),
        train.space.len(),
        path.display()
    )?;
    Ok(())
}

pub fn cmd_evaluate(model_path: &Path, matrix: &Path, path: Option<&Path>, out: &mut impl Write) -> Result<()> {
    let file = cfg(fs::File::open(model_path), model_path.display())?;
    let model = cfg(load_model(std::io::BufReader::new(file)), model_path.display())?;
    let data = read_dataset(matrix)?;
    let r = evaluate(&model, &data)?;
    let mut t = Table::new("evaluation", &["metric", "value"]);
    t.notes.push(format!("fingerprint {}", r.fingerprint));
    for (k, v) in [
        ("accuracy", r.accuracy),
        ("precision", r.weighted_precision()),
        ("recall", r.weighted_recall()),
        ("precision_agreement", r.precision[0]),
        ("recall_agreement", r.recall[0]),
        ("precision_disagreement", r.precision[1]),
        ("recall_disagreement", r.recall[1]),
    ] {
        t.push(vec![k.into(), format!("{v:.4}")]);
    }
    t.push(vec!["n".into(), r.len().to_string()]);
    out.write_all(&emit_report(&t, ReportFormat::Text))?;
    if let Some(p) = path {
        let mut pt = Table::new("predictions", &["pair_id", "predicted", "correct"]);
        for ((id, pred), c) in r.ids.iter().zip(&r.predictions).zip(&r.correctness) {
            pt.push(vec![id.clone(), pred.as_str().into(), c.to_string()]);
        }
        write_file(p, &emit_report(&pt, ReportFormat::Tsv))?;
    }
    Ok(())
}

/// Everything a `run` produced, as saved to `results.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "results", rename_all = "lowercase")]
pub enum RunOutput {
    Compare(Comparison),
    Ablate(Vec<(String, Ablation)>),
    Individual(Vec<(String, Individual)>),
    Sweep(Vec<(String, Sweep)>),
}

impl RunOutput {
    /// `(file stem, table)` for every report.
    pub fn tables(&self) -> Vec<(String, Table)> {
        let mut out = Vec::new();
        match self {
            RunOutput::Compare(c) => {
                out.push(("comparison".into(), c.accuracy_table()));
                out.push(("runs".into(), c.runs_table()));
                out.push(("significance".into(), c.significance_table()));
                if c.runs.iter().any(|r| !r.per_topic.is_empty()) {
                    out.push(("per-topic".into(), topic_table(&c.runs.iter().collect::<Vec<_>>())));
                }
            }
            RunOutput::Ablate(rows) => {
                for (learner, a) in rows {
                    let mut t = a.table();
                    t.name = format!("ablation ({learner})");
                    out.push((format!("ablation-{learner}"), t));
                    let runs: Vec<_> = std::iter::once(&a.full).chain(a.rows.iter().map(|(_, r)| r)).collect();
                    out.push((format!("ablation-{learner}-runs"), runs_table("runs", &runs)));
                }
            }
            RunOutput::Individual(rows) => {
                for (learner, ind) in rows {
                    let mut t = ind.table();
                    t.name = format!("individual ({learner})");
                    out.push((format!("individual-{learner}"), t));
                }
            }
            RunOutput::Sweep(rows) => {
                for (key, s) in rows {
                    let mut t = s.table();
                    t.name = format!("selection sweep ({key})");
                    out.push((format!("sweep-{}", key.replace(['/', '+'], "-")), t));
                }
            }
        }
        out
    }
}

/// Runs the configured experiment matrix.
pub fn execute_run(c: &RunConfig) -> Result<RunOutput> {
    let split = build_split(c)?;
    let lex = load_lexicons(c.paths.lexicon_dir.as_deref(), c.paths.mpqa.as_deref())?;
    let opts = c.run_options();
    let experiments = c.experiments()?;
    let groups = FeatureGroup::TM;
    Ok(match c.mode {
        Mode::Compare => RunOutput::Compare(run_comparison(&experiments, &split, &lex, opts)?),
        Mode::Ablate => {
            let n = c.learners.len();
            let mut rows = Vec::new();
            for e in &experiments[..n] {
                rows.push((e.learner.name().to_string(), run_ablation(e, &groups, &split, &lex, opts)?));
            }
            RunOutput::Ablate(rows)
        }
        Mode::Individual => {
            let n = c.learners.len();
            let mut rows = Vec::new();
            for e in &experiments[..n] {
                let present: Vec<FeatureGroup> =
                    groups.into_iter().filter(|g| e.features.groups.contains(g)).collect();
                rows.push((e.learner.name().to_string(), run_individual(e, &present, &split, &lex, opts)?));
            }
            RunOutput::Individual(rows)
        }
        Mode::Sweep => {
            let mut rows = Vec::new();
            for e in &experiments {
                rows.push((e.name.clone(), feature_selection_sweep(e, &c.ks, &split, &lex, opts)?));
            }
            RunOutput::Sweep(rows)
        }
    })
}

/// Writes every report, `results.json` and the resolved config into `dir`.
pub fn write_run(c: &RunConfig, output: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let resolved = dir.join(RESOLVED_CONFIG);
    write_file(&resolved, c.to_toml().as_bytes())?;
    written.push(resolved);
    for (stem, table) in output.tables() {
        let p = dir.join(format!("{stem}.tsv"));
        write_file(&p, &emit_report(&table, ReportFormat::Tsv))?;
        written.push(p);
    }
    let p = dir.join(RESULTS_JSON);
    write_file(&p, serde_json::to_string_pretty(output)?.as_bytes())?;
    written.push(p);
    Ok(written)
}

pub fn cmd_run(c: &RunConfig, out: &mut impl Write) -> Result<()> {
    if c.fit_on_test {
        eprintln!("WARNING: {FIT_ON_TEST_WARNING}");
    }
    let output = execute_run(c)?;
    for (_, t) in output.tables() {
        out.write_all(&emit_report(&t, ReportFormat::Text))?;
        writeln!(out)?;
    }
    for p in write_run(c, &output, &c.paths.output)? {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(())
}

pub fn cmd_report(path: &Path, format: ReportFormat, out: &mut impl Write) -> Result<()> {
    let text = cfg(fs::read_to_string(path), path.display())?;
    let output: RunOutput = cfg(serde_json::from_str(&text), path.display())?;
    for (stem, t) in output.tables() {
        if format == ReportFormat::Tsv {
            writeln!(out, "== {stem}.tsv")?;
        }
        out.write_all(&emit_report(&t, format))?;
        writeln!(out)?;
    }
    Ok(())
}
