use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::Table;
use super::stats::{fold_means, mcnemar, paired_t_test, McNemar, TTest};
use super::{evaluate, EvalError, EvalReport};
use crate::corpus::DatasetSplit;
use crate::features::{featurize_all, FeatureGroup, FeatureOptions, FeatureSetSpec, FeatureSpace};
use crate::learn::{
    rank_features, train_forest, train_tree, Classifier, Dataset, FeatureRanking, ForestParams, LearnError, Model,
    TreeParams,
};
use crate::lexicons::LexiconSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LearnerSpec {
    Tree(TreeParams),
    Forest(ForestParams),
}

impl LearnerSpec {
    pub fn name(&self) -> &'static str {
        match self {
            LearnerSpec::Tree(_) => "tree",
            LearnerSpec::Forest(_) => "forest",
        }
    }

    /// Trains on `data`; a forest is seeded with `seed`.
    pub fn train(&self, data: &Dataset, seed: u64) -> Result<Classifier, LearnError> {
        Ok(match self {
            LearnerSpec::Tree(p) => Classifier::Tree(train_tree(data, *p)?),
            LearnerSpec::Forest(p) => Classifier::Forest(train_forest(data, ForestParams { seed, ..*p })?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Row label in reports; unique within a comparison.
    pub name: String,
    pub features: FeatureSetSpec,
    pub options: FeatureOptions,
    pub learner: LearnerSpec,
    /// Keep only the `k` best attributes by gain ratio.
    pub select_k: Option<usize>,
    /// Seeds the forest learner; overrides `ForestParams::seed`.
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Rank attributes on the test set instead of the training set.
    pub fit_on_test: bool,
    pub per_topic: bool,
    /// Round-robin folds of the test set for the paired t-test.
    pub folds: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            fit_on_test: false,
            per_topic: false,
            folds: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopicAccuracy {
    pub topic: String,
    pub n: usize,
    pub correct: usize,
    pub accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub name: String,
    pub features: String,
    pub learner: String,
    /// Attributes the classifier was trained on.
    pub attributes: usize,
    /// Names of the kept attributes when a subset of the space was used.
    pub selected: Option<Vec<String>>,
    pub report: EvalReport,
    /// Accuracy of each test fold.
    pub folds: Vec<f64>,
    /// Empty unless requested.
    pub per_topic: Vec<TopicAccuracy>,
}

struct Prepared {
    space: FeatureSpace,
    train: Dataset,
    test: Dataset,
    test_topics: Vec<String>,
}

fn to_dataset(
    pairs: &[crate::corpus::LabeledPair],
    space: &FeatureSpace,
    lexicons: &LexiconSet,
) -> Result<Dataset, EvalError> {
    let rows = featurize_all(pairs, space, lexicons)?;
    let ids = pairs.iter().map(|p| p.pair.pair_id.clone()).collect();
    Ok(Dataset::new(space.clone(), rows, ids)?)
}

fn prepare(
    features: &FeatureSetSpec,
    options: FeatureOptions,
    split: &DatasetSplit,
    lexicons: &LexiconSet,
) -> Result<Prepared, EvalError> {
    if split.train.is_empty() {
        return Err(EvalError::Argument("training split is empty".into()));
    }
    if split.test.is_empty() {
        return Err(EvalError::EmptyTest);
    }
    let space = FeatureSpace::for_spec(features, &split.train, lexicons, options)?;
    if space.is_empty() {
        return Err(EvalError::Config(format!("feature set {features} has no attributes")));
    }
    Ok(Prepared {
        train: to_dataset(&split.train, &space, lexicons)?,
        test: to_dataset(&split.test, &space, lexicons)?,
        test_topics: split.test.iter().map(|p| p.pair.topic.clone()).collect(),
        space,
    })
}

fn check_k(k: usize, m: usize) -> Result<(), EvalError> {
    if k == 0 || k > m {
        return Err(EvalError::Argument(format!("k = {k} is outside 1..={m}")));
    }
    Ok(())
}

/// Ranking of the attributes `base` on the split chosen by `opts`.
fn rank_subset(prep: &Prepared, base: &[usize], opts: RunOptions) -> Result<FeatureRanking, EvalError> {
    let data = if opts.fit_on_test { &prep.test } else { &prep.train };
    if base.len() == prep.space.len() {
        Ok(rank_features(data)?)
    } else {
        Ok(rank_features(&data.restrict(base))?)
    }
}

/// `base` narrowed to the configured top-k attributes, if any.
fn choose(config: &ExperimentConfig, prep: &Prepared, base: Vec<usize>, opts: RunOptions) -> Result<Vec<usize>, EvalError> {
    let Some(k) = config.select_k else {
        return Ok(base);
    };
    check_k(k, base.len())?;
    let ranking = rank_subset(prep, &base, opts)?;
    Ok(ranking.top_indices(k).into_iter().map(|i| base[i]).collect())
}

fn per_topic(report: &EvalReport, topics: &[String]) -> Vec<TopicAccuracy> {
    let mut table: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (t, c) in topics.iter().zip(&report.correctness) {
        let e = table.entry(t).or_default();
        e.0 += 1;
        e.1 += usize::from(*c);
    }
    table
        .into_iter()
        .map(|(topic, (n, correct))| TopicAccuracy {
            topic: topic.to_string(),
            n,
            correct,
            accuracy: correct as f64 / n as f64,
        })
        .collect()
}

/// Trains on the sorted attribute set `chosen` and scores the test set.
fn run_chosen(
    config: &ExperimentConfig,
    prep: &Prepared,
    chosen: Vec<usize>,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<RunResult, EvalError> {
    if chosen.is_empty() {
        return Err(EvalError::Config(format!("run {:?} has no attributes", config.name)));
    }
    let full = chosen.len() == prep.space.len();
    let restricted;
    let train = if full {
        &prep.train
    } else {
        restricted = prep.train.restrict(&chosen);
        &restricted
    };
    let classifier = config.learner.train(train, config.seed)?;
    let selected = (!full).then(|| chosen.iter().map(|&i| prep.space.attributes[i].name.clone()).collect());
    let model = Model::new(prep.space.clone(), (!full).then_some(chosen), classifier, lexicons.versions());
    let report = evaluate(&model, &prep.test)?;
    let correct: Vec<f64> = report.correctness.iter().map(|&c| f64::from(c)).collect();
    Ok(RunResult {
        name: config.name.clone(),
        features: config.features.to_string(),
        learner: config.learner.name().to_string(),
        attributes: train.space.len(),
        selected,
        folds: fold_means(&correct, opts.folds)?,
        per_topic: if opts.per_topic {
            per_topic(&report, &prep.test_topics)
        } else {
            Vec::new()
        },
        report,
    })
}

fn run_prepared(
    config: &ExperimentConfig,
    prep: &Prepared,
    base: Vec<usize>,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<RunResult, EvalError> {
    let chosen = choose(config, prep, base, opts)?;
    run_chosen(config, prep, chosen, lexicons, opts)
}

fn all_indices(prep: &Prepared) -> Vec<usize> {
    (0..prep.space.len()).collect()
}

/// Featurizes the split, trains on its train side and scores its test side.
pub fn run_experiment(
    config: &ExperimentConfig,
    split: &DatasetSplit,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<RunResult, EvalError> {
    let prep = prepare(&config.features, config.options, split, lexicons)?;
    run_prepared(config, &prep, all_indices(&prep), lexicons, opts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTest {
    pub a: usize,
    pub b: usize,
    /// Paired over fold accuracies.
    pub t_test: TTest,
    /// Paired over instances.
    pub mcnemar: McNemar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub runs: Vec<RunResult>,
    /// One entry per unordered pair `a < b`.
    pub pairwise: Vec<PairwiseTest>,
}

fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}

fn fmt_p(p: f64) -> String {
    if p != 0.0 && p < 1e-4 {
        format!("{p:.3e}")
    } else {
        format!("{p:.4}")
    }
}

fn lexicon_note(runs: &[&RunResult]) -> Vec<String> {
    let Some(r) = runs.first() else {
        return Vec::new();
    };
    let versions: Vec<String> = r
        .report
        .lexicon_versions
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect();
    vec![format!("lexicons: {}", versions.join(" "))]
}

fn run_row(label: &str, r: &RunResult) -> Vec<String> {
    vec![
        label.to_string(),
        r.features.clone(),
        r.learner.clone(),
        r.attributes.to_string(),
        r.report.len().to_string(),
        fmt4(r.report.accuracy),
        fmt4(r.report.weighted_precision()),
        fmt4(r.report.weighted_recall()),
        r.report.fingerprint.clone(),
    ]
}

const RUN_COLUMNS: [&str; 9] = [
    "name",
    "features",
    "learner",
    "attributes",
    "n",
    "accuracy",
    "precision",
    "recall",
    "fingerprint",
];

/// Per-run details for any list of runs.
pub fn runs_table(name: &str, runs: &[&RunResult]) -> Table {
    let mut t = Table::new(name, &RUN_COLUMNS);
    t.notes = lexicon_note(runs);
    for r in runs {
        t.push(run_row(&r.name, r));
    }
    t
}

/// Accuracy per topic for runs that collected it.
pub fn topic_table(runs: &[&RunResult]) -> Table {
    let mut t = Table::new("per-topic", &["name", "topic", "n", "correct", "accuracy"]);
    for r in runs {
        for ta in &r.per_topic {
            t.push(vec![
                r.name.clone(),
                ta.topic.clone(),
                ta.n.to_string(),
                ta.correct.to_string(),
                fmt4(ta.accuracy),
            ]);
        }
    }
    t
}

impl Comparison {
    /// p-value of the fold t-test between runs `i` and `j` (1 when equal).
    pub fn p_value(&self, i: usize, j: usize) -> Option<f64> {
        if i == j {
            return (i < self.runs.len()).then_some(1.0);
        }
        let (a, b) = (i.min(j), i.max(j));
        self.pairwise.iter().find(|p| p.a == a && p.b == b).map(|p| p.t_test.p)
    }

    /// Accuracy with feature sets as rows and learners as columns.
    pub fn accuracy_table(&self) -> Table {
        let mut features: Vec<&str> = Vec::new();
        let mut learners: Vec<&str> = Vec::new();
        for r in &self.runs {
            if !features.contains(&r.features.as_str()) {
                features.push(&r.features);
            }
            if !learners.contains(&r.learner.as_str()) {
                learners.push(&r.learner);
            }
        }
        let mut cols = vec!["features"];
        cols.extend(learners.iter().copied());
        let mut t = Table::new("comparison", &cols);
        t.notes = lexicon_note(&self.runs.iter().collect::<Vec<_>>());
        for f in &features {
            let mut row = vec![f.to_string()];
            for l in &learners {
                let cell = self
                    .runs
                    .iter()
                    .find(|r| r.features == *f && r.learner == *l)
                    .map_or_else(|| "-".to_string(), |r| fmt4(r.report.accuracy));
                row.push(cell);
            }
            t.push(row);
        }
        t
    }

    pub fn runs_table(&self) -> Table {
        runs_table("runs", &self.runs.iter().collect::<Vec<_>>())
    }

    pub fn significance_table(&self) -> Table {
        let mut t = Table::new(
            "significance",
            &[
                "a",
                "b",
                "t",
                "df",
                "p",
                "degenerate",
                "only_a",
                "only_b",
                "mcnemar_chi2",
                "mcnemar_p",
            ],
        );
        if let Some(r) = self.runs.first() {
            t.notes.push(format!(
                "t-test over {} round-robin test folds; McNemar over {} instances",
                r.folds.len(),
                r.report.len()
            ));
        }
        for p in &self.pairwise {
            t.push(vec![
                self.runs[p.a].name.clone(),
                self.runs[p.b].name.clone(),
                fmt4(p.t_test.t),
                p.t_test.df.to_string(),
                fmt_p(p.t_test.p),
                p.t_test.degenerate.to_string(),
                p.mcnemar.only_a.to_string(),
                p.mcnemar.only_b.to_string(),
                fmt4(p.mcnemar.chi2),
                fmt_p(p.mcnemar.p),
            ]);
        }
        t
    }
}

fn pairwise(runs: &[RunResult]) -> Result<Vec<PairwiseTest>, EvalError> {
    let mut out = Vec::new();
    for a in 0..runs.len() {
        for b in a + 1..runs.len() {
            out.push(PairwiseTest {
                a,
                b,
                t_test: paired_t_test(&runs[a].folds, &runs[b].folds)?,
                mcnemar: mcnemar(&runs[a].report.correctness, &runs[b].report.correctness)?,
            });
        }
    }
    Ok(out)
}

/// Runs every config on the same split. Configs sharing a feature set and
/// options share one featurization. Runs execute in parallel; results keep
/// config order.
pub fn run_comparison(
    configs: &[ExperimentConfig],
    split: &DatasetSplit,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<Comparison, EvalError> {
    for (i, c) in configs.iter().enumerate() {
        if configs[..i].iter().any(|d| d.name == c.name) {
            return Err(EvalError::Config(format!("duplicate run name {:?}", c.name)));
        }
    }
    let mut keys: Vec<(&FeatureSetSpec, FeatureOptions)> = Vec::new();
    for c in configs {
        if !keys.contains(&(&c.features, c.options)) {
            keys.push((&c.features, c.options));
        }
    }
    let prepared = keys
        .par_iter()
        .map(|(f, o)| prepare(f, *o, split, lexicons))
        .collect::<Result<Vec<_>, _>>()?;
    let runs = configs
        .par_iter()
        .map(|c| {
            let k = keys.iter().position(|k| *k == (&c.features, c.options)).unwrap_or(0);
            let prep = &prepared[k];
            run_prepared(c, prep, all_indices(prep), lexicons, opts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pairwise = pairwise(&runs)?;
    Ok(Comparison { runs, pairwise })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ablation {
    pub full: RunResult,
    /// One run per removed group, in request order.
    pub rows: Vec<(FeatureGroup, RunResult)>,
}

impl Ablation {
    pub fn table(&self) -> Table {
        let mut t = Table::new(
            "ablation",
            &["ablated", "attributes", "accuracy", "precision", "recall", "change"],
        );
        t.notes = lexicon_note(&[&self.full]);
        let base = self.full.report.accuracy;
        let row = |label: String, r: &RunResult| {
            vec![
                label,
                r.attributes.to_string(),
                fmt4(r.report.accuracy),
                fmt4(r.report.weighted_precision()),
                fmt4(r.report.weighted_recall()),
                fmt4(r.report.accuracy - base),
            ]
        };
        t.push(row("All".into(), &self.full));
        for (g, r) in &self.rows {
            t.push(row(format!("No {}", g.title()), r));
        }
        t
    }
}

fn require_all_tm(config: &ExperimentConfig) -> Result<(), EvalError> {
    match FeatureGroup::TM.into_iter().find(|g| !config.features.groups.contains(g)) {
        Some(g) => Err(EvalError::Config(format!(
            "ablation needs every theoretically motivated group; {:?} lacks {g}",
            config.name
        ))),
        None => Ok(()),
    }
}

/// Attribute names a space for `groups` would have, built with the
/// prepared space's vocabulary and options.
fn space_names(prep: &Prepared, spec: &FeatureSetSpec) -> Result<Vec<String>, EvalError> {
    let vocab = if spec.groups.contains(&FeatureGroup::Ngram) {
        prep.space.ngram_vocab.clone()
    } else {
        None
    };
    let space = FeatureSpace::build(&spec.groups, &prep.space.cue_labels, vocab, prep.space.options)?;
    Ok(space.attributes.into_iter().map(|a| a.name).collect())
}

fn names_of(prep: &Prepared, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| prep.space.attributes[i].name.clone()).collect()
}

/// The full run plus one run per group with that group's attributes
/// removed.
pub fn run_ablation(
    full: &ExperimentConfig,
    groups: &[FeatureGroup],
    split: &DatasetSplit,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<Ablation, EvalError> {
    require_all_tm(full)?;
    let prep = prepare(&full.features, full.options, split, lexicons)?;
    let mut jobs = Vec::new();
    for &g in groups {
        let spec = full.features.without(g).map_err(|e| EvalError::Config(e.to_string()))?;
        let keep = prep.space.indices_without(g);
        if prep.space.len() - keep.len() != prep.space.group_arity(g) || space_names(&prep, &spec)? != names_of(&prep, &keep) {
            return Err(EvalError::Config(format!("ablating {g} does not remove exactly its attributes")));
        }
        let config = ExperimentConfig {
            name: format!("No {}", g.title()),
            features: spec,
            ..full.clone()
        };
        jobs.push((g, config, keep));
    }
    let (full_run, rows) = rayon::join(
        || run_prepared(full, &prep, all_indices(&prep), lexicons, opts),
        || {
            jobs.par_iter()
                .map(|(g, c, keep)| Ok((*g, run_prepared(c, &prep, keep.clone(), lexicons, opts)?)))
                .collect::<Result<Vec<_>, EvalError>>()
        },
    );
    Ok(Ablation {
        full: full_run?,
        rows: rows?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub rows: Vec<(FeatureGroup, RunResult)>,
}

impl Individual {
    pub fn table(&self) -> Table {
        let mut t = Table::new("individual", &["feature", "attributes", "accuracy", "precision", "recall"]);
        t.notes = lexicon_note(&self.rows.iter().map(|(_, r)| r).collect::<Vec<_>>());
        for (g, r) in &self.rows {
            t.push(vec![
                g.title().to_string(),
                r.attributes.to_string(),
                fmt4(r.report.accuracy),
                fmt4(r.report.weighted_precision()),
                fmt4(r.report.weighted_recall()),
            ]);
        }
        t
    }
}

/// One run per group using only that group's attributes of `base`.
pub fn run_individual(
    base: &ExperimentConfig,
    groups: &[FeatureGroup],
    split: &DatasetSplit,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<Individual, EvalError> {
    if let Some(g) = groups.iter().find(|g| !base.features.groups.contains(g)) {
        return Err(EvalError::Config(format!("group {g} is not in the feature set {}", base.features)));
    }
    let prep = prepare(&base.features, base.options, split, lexicons)?;
    let mut jobs = Vec::new();
    for &g in groups {
        let keep: Vec<usize> = (0..prep.space.len())
            .filter(|&i| prep.space.attributes[i].group == g)
            .collect();
        let spec = FeatureSetSpec {
            groups: [g].into_iter().collect(),
            ngram_order: base.features.ngram_order.filter(|_| g == FeatureGroup::Ngram),
        };
        if space_names(&prep, &spec)? != names_of(&prep, &keep) {
            return Err(EvalError::Config(format!("group {g} attributes do not match a {g}-only space")));
        }
        let config = ExperimentConfig {
            name: g.title().to_string(),
            features: spec,
            ..base.clone()
        };
        jobs.push((g, config, keep));
    }
    let rows = jobs
        .par_iter()
        .map(|(g, c, keep)| Ok((*g, run_prepared(c, &prep, keep.clone(), lexicons, opts)?)))
        .collect::<Result<Vec<_>, EvalError>>()?;
    Ok(Individual { rows })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    /// Best `min(k, 10)` attributes, best first.
    pub top: Vec<String>,
    pub run: RunResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub ranked_on: String,
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<String>,
}

pub const FIT_ON_TEST_WARNING: &str =
    "feature ranking was fitted on the TEST set: accuracies are optimistic upper bounds, not held-out estimates";

impl Sweep {
    pub fn table(&self) -> Table {
        let mut t = Table::new(
            "selection-sweep",
            &["k", "accuracy", "precision", "recall", "top_features"],
        );
        t.notes.push(format!("ranked on: {}", self.ranked_on));
        t.notes.extend(self.warnings.iter().map(|w| format!("WARNING: {w}")));
        t.notes.extend(lexicon_note(&self.rows.iter().map(|r| &r.run).collect::<Vec<_>>()));
        for r in &self.rows {
            t.push(vec![
                r.k.to_string(),
                fmt4(r.run.report.accuracy),
                fmt4(r.run.report.weighted_precision()),
                fmt4(r.run.report.weighted_recall()),
                r.top.join(" "),
            ]);
        }
        t
    }
}

/// Accuracy of `config` restricted to its top-`k` attributes for each
/// `k`. One ranking serves every `k`, so the selected sets are nested.
/// `config.select_k` is ignored.
pub fn feature_selection_sweep(
    config: &ExperimentConfig,
    ks: &[usize],
    split: &DatasetSplit,
    lexicons: &LexiconSet,
    opts: RunOptions,
) -> Result<Sweep, EvalError> {
    if ks.is_empty() {
        return Err(EvalError::Argument("no k values to sweep".into()));
    }
    let prep = prepare(&config.features, config.options, split, lexicons)?;
    for &k in ks {
        check_k(k, prep.space.len())?;
    }
    let ranking = rank_subset(&prep, &all_indices(&prep), opts)?;
    let rows = ks
        .par_iter()
        .map(|&k| {
            let c = ExperimentConfig {
                name: format!("k={k}"),
                select_k: None,
                ..config.clone()
            };
            let run = run_chosen(&c, &prep, ranking.top_indices(k), lexicons, opts)?;
            let top = ranking.entries.iter().take(k.min(10)).map(|e| e.name.clone()).collect();
            Ok(SweepRow { k, top, run })
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    Ok(Sweep {
        ranked_on: if opts.fit_on_test { "test" } else { "train" }.into(),
        rows,
        warnings: if opts.fit_on_test {
            vec![FIT_ON_TEST_WARNING.into()]
        } else {
            Vec::new()
        },
    })
}
