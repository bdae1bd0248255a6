use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stancecue::eval::{ExperimentConfig, LearnerSpec, RunOptions};
use stancecue::features::{FeatureGroup, FeatureOptions, FeatureSetSpec, PolarityMode};
use stancecue::learn::{ForestParams, TreeParams};
use stancecue::textproc::{NgramOptions, NgramScope};

use crate::ConfigError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Compare,
    Ablate,
    Individual,
    Sweep,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Paths {
    /// Pair corpus; when absent a synthetic corpus is generated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<PathBuf>,
    /// Synthetic spec used when `corpus` is absent (shipped spec if unset).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthetic_spec: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lexicon_dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mpqa: Option<PathBuf>,
    pub output: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitConfig {
    /// Empty means the synthetic spec's train topics.
    pub train_topics: Vec<String>,
    /// Empty means every other topic in the corpus.
    pub test_topics: Vec<String>,
    /// Mean judgments `<= lo` are DISAGREEMENT.
    pub lo: f64,
    /// Mean judgments `>= hi` are AGREEMENT.
    pub hi: f64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            train_topics: Vec::new(),
            test_topics: Vec::new(),
            lo: -1.0,
            hi: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeaturesConfig {
    /// Feature sets, e.g. `all-tm`, `unigram`, `bigram`, `denial+hedge`.
    pub sets: Vec<String>,
    pub polarity_mode: PolarityMode,
    pub ngram_scope: NgramScope,
    pub sentence_scoped: bool,
    pub ngram_min_count: usize,
    pub binary_ngrams: bool,
    pub include_prior: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub select_k: Option<usize>,
}

impl Default for FeaturesConfig {
    fn default() -> Self {
        FeaturesConfig {
            sets: vec!["all-tm".into(), "unigram".into(), "bigram".into()],
            polarity_mode: PolarityMode::default(),
            ngram_scope: NgramScope::default(),
            sentence_scoped: true,
            ngram_min_count: 1,
            binary_ngrams: false,
            include_prior: false,
            select_k: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForestConfig {
    pub num_trees: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features_per_split: Option<usize>,
    pub bootstrap: bool,
}

impl Default for ForestConfig {
    fn default() -> Self {
        let p = ForestParams::default();
        ForestConfig {
            num_trees: p.num_trees,
            features_per_split: p.features_per_split,
            bootstrap: p.bootstrap,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub mode: Mode,
    /// `tree` and/or `forest`.
    pub learners: Vec<String>,
    /// Attribute counts for the selection sweep.
    pub ks: Vec<usize>,
    pub fit_on_test: bool,
    pub per_topic: bool,
    pub folds: usize,
    pub paths: Paths,
    pub split: SplitConfig,
    pub features: FeaturesConfig,
    pub tree: TreeParams,
    pub forest: ForestConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            mode: Mode::Compare,
            learners: vec!["tree".into(), "forest".into()],
            ks: vec![10, 100, 1000],
            fit_on_test: false,
            per_topic: false,
            folds: 10,
            paths: Paths {
                output: PathBuf::from("reports"),
                ..Paths::default()
            },
            split: SplitConfig::default(),
            features: FeaturesConfig::default(),
            tree: TreeParams::default(),
            forest: ForestConfig::default(),
        }
    }
}

fn config_err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<RunConfig, ConfigError> {
        toml::from_str(text).map_err(|e| config_err(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        RunConfig::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }

    pub fn feature_options(&self) -> FeatureOptions {
        FeatureOptions {
            polarity_mode: self.features.polarity_mode,
            ngram: NgramOptions {
                scope: self.features.ngram_scope,
                sentence_scoped: self.features.sentence_scoped,
            },
            ngram_min_count: self.features.ngram_min_count,
            binary_ngrams: self.features.binary_ngrams,
            include_prior: self.features.include_prior,
        }
    }

    pub fn feature_sets(&self) -> Result<Vec<FeatureSetSpec>, ConfigError> {
        self.features
            .sets
            .iter()
            .map(|s| s.parse().map_err(|e| config_err(format!("feature set {s:?}: {e}"))))
            .collect()
    }

    pub fn learner_specs(&self) -> Result<Vec<LearnerSpec>, ConfigError> {
        self.learners
            .iter()
            .map(|l| match l.as_str() {
                "tree" => Ok(LearnerSpec::Tree(self.tree)),
                "forest" => Ok(LearnerSpec::Forest(ForestParams {
                    num_trees: self.forest.num_trees,
                    features_per_split: self.forest.features_per_split,
                    bootstrap: self.forest.bootstrap,
                    seed: self.seed,
                })),
                other => Err(config_err(format!("unknown learner {other:?} (expected tree or forest)"))),
            })
            .collect()
    }

    pub fn run_options(&self) -> RunOptions {
        RunOptions {
            fit_on_test: self.fit_on_test,
            per_topic: self.per_topic,
            folds: self.folds,
        }
    }

    /// One experiment per (feature set, learner), feature sets outermost.
    pub fn experiments(&self) -> Result<Vec<ExperimentConfig>, ConfigError> {
        let sets = self.feature_sets()?;
        let learners = self.learner_specs()?;
        let mut out = Vec::new();
        for (raw, set) in self.features.sets.iter().zip(&sets) {
            for l in &learners {
                out.push(ExperimentConfig {
                    name: format!("{raw}/{}", l.name()),
                    features: set.clone(),
                    options: self.feature_options(),
                    learner: *l,
                    select_k: self.features.select_k,
                    seed: self.seed,
                });
            }
        }
        Ok(out)
    }

    /// Checks everything that can be checked without running: value
    /// ranges, names, and that every referenced input path exists.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.features.sets.is_empty() {
            return Err(config_err("features.sets is empty"));
        }
        if self.learners.is_empty() {
            return Err(config_err("learners is empty"));
        }
        let sets = self.feature_sets()?;
        self.learner_specs()?;
        for (i, l) in self.learners.iter().enumerate() {
            if self.learners[..i].contains(l) {
                return Err(config_err(format!("learner {l:?} listed twice")));
            }
        }
        for (i, s) in self.features.sets.iter().enumerate() {
            if self.features.sets[..i].contains(s) {
                return Err(config_err(format!("feature set {s:?} listed twice")));
            }
        }
        if self.split.lo.partial_cmp(&self.split.hi) != Some(std::cmp::Ordering::Less) {
            return Err(config_err(format!(
                "split.lo ({}) must be below split.hi ({})",
                self.split.lo, self.split.hi
            )));
        }
        if self.folds < 2 {
            return Err(config_err("folds must be at least 2"));
        }
        if !(self.tree.confidence > 0.0 && self.tree.confidence <= 1.0) {
            return Err(config_err(format!("tree.confidence {} is outside (0, 1]", self.tree.confidence)));
        }
        if self.tree.min_leaf == 0 {
            return Err(config_err("tree.min_leaf must be at least 1"));
        }
        if self.forest.num_trees == 0 {
            return Err(config_err("forest.num_trees must be at least 1"));
        }
        if self.features.select_k == Some(0) {
            return Err(config_err("features.select_k must be at least 1"));
        }
        match self.mode {
            Mode::Ablate => {
                if let Some(g) = FeatureGroup::TM.into_iter().find(|g| !sets[0].groups.contains(g)) {
                    return Err(config_err(format!(
                        "ablation needs a first feature set containing every TM group; {:?} lacks {g}",
                        self.features.sets[0]
                    )));
                }
            }
            Mode::Sweep if self.ks.is_empty() || self.ks.contains(&0) => {
                return Err(config_err("sweep needs a non-empty ks list of positive counts"));
            }
            _ => {}
        }
        for (what, p) in [
            ("paths.corpus", &self.paths.corpus),
            ("paths.synthetic_spec", &self.paths.synthetic_spec),
            ("paths.lexicon_dir", &self.paths.lexicon_dir),
            ("paths.mpqa", &self.paths.mpqa),
        ] {
            if let Some(p) = p {
                if !p.exists() {
                    return Err(config_err(format!("{what}: {} does not exist", p.display())));
                }
            }
        }
        if self.paths.corpus.is_some() && self.split.train_topics.is_empty() {
            return Err(config_err("split.train_topics is required with a corpus file"));
        }
        Ok(())
    }
}
