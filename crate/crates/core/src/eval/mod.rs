//! Evaluation: held-out metrics, paired significance tests, and the
//! experiment runners (comparison, ablation, single-group, selection
//! sweep) with their report tables.

mod experiment;
mod report;
mod stats;

pub use experiment::{
    feature_selection_sweep, run_ablation, run_comparison, run_experiment, run_individual, runs_table, topic_table,
    Ablation, Comparison, ExperimentConfig, Individual, LearnerSpec, PairwiseTest, RunOptions, RunResult, Sweep,
    SweepRow, TopicAccuracy, FIT_ON_TEST_WARNING,
};
pub use report::{emit_report, ReportFormat, Table};
pub use stats::{fold_means, mcnemar, paired_t_test, regularized_beta, student_t_two_sided, McNemar, TTest};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::Label;
use crate::features::FeatureError;
use crate::learn::{Classifier, Dataset, LearnError, Model};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("{0}")]
    Argument(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("test set is empty")]
    EmptyTest,
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Held-out results of one model. `confusion[actual][predicted]` is
/// indexed by `Label::index`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub precision: [f64; 2],
    pub recall: [f64; 2],
    pub confusion: [[usize; 2]; 2],
    /// 1 where the prediction was right, in test order.
    pub correctness: Vec<u8>,
    pub predictions: Vec<Label>,
    pub ids: Vec<String>,
    /// Hash of lexicon versions, space, selection and learner parameters.
    pub fingerprint: String,
    pub lexicon_versions: Vec<(String, String)>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl EvalReport {
    /// Builds the metrics from aligned gold and predicted labels. Precision
    /// and recall of a class with no predictions (or no instances) are 0.
    pub fn from_predictions(
        gold: &[Label],
        predictions: Vec<Label>,
        ids: Vec<String>,
        fingerprint: String,
        lexicon_versions: Vec<(String, String)>,
    ) -> Result<EvalReport, EvalError> {
        if gold.is_empty() {
            return Err(EvalError::EmptyTest);
        }
        if gold.len() != predictions.len() || gold.len() != ids.len() {
            return Err(EvalError::Argument("gold, predictions and ids differ in length".into()));
        }
        let mut confusion = [[0usize; 2]; 2];
        for (g, p) in gold.iter().zip(&predictions) {
            confusion[g.index()][p.index()] += 1;
        }
        let correctness: Vec<u8> = gold.iter().zip(&predictions).map(|(g, p)| u8::from(g == p)).collect();
        let hits = confusion[0][0] + confusion[1][1];
        let mut precision = [0.0; 2];
        let mut recall = [0.0; 2];
        for c in 0..2 {
            precision[c] = ratio(confusion[c][c], confusion[0][c] + confusion[1][c]);
            recall[c] = ratio(confusion[c][c], confusion[c][0] + confusion[c][1]);
        }
        Ok(EvalReport {
            accuracy: ratio(hits, gold.len()),
            precision,
            recall,
            confusion,
            correctness,
            predictions,
            ids,
            fingerprint,
            lexicon_versions,
        })
    }

    pub fn len(&self) -> usize {
        self.correctness.len()
    }

    pub fn is_empty(&self) -> bool {
        self.correctness.is_empty()
    }

    fn support(&self, c: usize) -> f64 {
        (self.confusion[c][0] + self.confusion[c][1]) as f64 / self.len() as f64
    }

    /// Precision averaged over classes, weighted by class support.
    pub fn weighted_precision(&self) -> f64 {
        (0..2).map(|c| self.support(c) * self.precision[c]).sum()
    }

    /// Recall averaged over classes, weighted by class support.
    pub fn weighted_recall(&self) -> f64 {
        (0..2).map(|c| self.support(c) * self.recall[c]).sum()
    }
}

/// Stable short hash identifying a trained configuration.
pub fn fingerprint(model: &Model) -> String {
    let learner = match &model.classifier {
        Classifier::Tree(t) => serde_json::json!({ "tree": t.params }),
        Classifier::Forest(f) => serde_json::json!({
            "forest": f.params,
            "features_per_split": f.features_per_split,
        }),
    };
    let doc = serde_json::json!({
        "lexicons": model.lexicon_versions,
        "attributes": model.space.names(),
        "options": model.space.options,
        "selected": model.selected,
        "learner": learner,
    });
    let digest = Sha256::digest(doc.to_string().as_bytes());
    hex::encode(&digest[..8])
}

/// Scores `model` on `test`, whose rows must be in the model's space.
pub fn evaluate(model: &Model, test: &Dataset) -> Result<EvalReport, EvalError> {
    if test.space.attributes != model.space.attributes {
        return Err(EvalError::SpaceMismatch(format!(
            "model space has {} attributes, test space has {} (or they differ by name)",
            model.space.len(),
            test.space.len()
        )));
    }
    if test.is_empty() {
        return Err(EvalError::EmptyTest);
    }
    let gold = test.labels()?;
    let predictions = test
        .rows
        .par_iter()
        .map(|v| model.predict(v))
        .collect::<Result<Vec<Label>, LearnError>>()?;
    EvalReport::from_predictions(
        &gold,
        predictions,
        test.ids.clone(),
        fingerprint(model),
        model.lexicon_versions.clone(),
    )
}
