//! Gain-ratio scoring and selection, a C4.5-style tree and a bagged
//! forest, all over numeric attributes.

mod forest;
mod info;
mod model;
mod split;
mod tree;

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::features::{FeatureError, FeatureSpace, FeatureVector};

pub use forest::{predict_forest, train_forest, tree_seed, Forest, ForestParams};
pub use info::{entropy, gain_ratio, rank_features, select_top_k, FeatureRanking, GainOptions, RankEntry, SplitScore};
pub use model::{load_model, save_model, Classifier, Model, MODEL_FORMAT_VERSION};
pub use tree::{add_errors, predict_tree, train_tree, DecisionTree, Node, Prediction, TreeParams};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum LearnError {
    #[error("{0}")]
    Argument(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error("model file: {0}")]
    Model(String),
}

/// Labeled rows over one feature space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub space: FeatureSpace,
    pub rows: Vec<FeatureVector>,
    pub ids: Vec<String>,
}

impl Dataset {
    pub fn new(space: FeatureSpace, rows: Vec<FeatureVector>, ids: Vec<String>) -> Result<Dataset, LearnError> {
        if rows.len() != ids.len() {
            return Err(LearnError::Argument(format!("{} rows but {} ids", rows.len(), ids.len())));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != space.len()) {
            return Err(FeatureError::SpaceMismatch(format!(
                "row has {} values, space has {}",
                r.len(),
                space.len()
            ))
            .into());
        }
        Ok(Dataset { space, rows, ids })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every row's label; fails if any row is unlabeled.
    pub fn labels(&self) -> Result<Vec<Label>, LearnError> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.label
                    .ok_or_else(|| LearnError::Argument(format!("row {} ({}) has no label", i, self.ids[i])))
            })
            .collect()
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let mut c = [0; 2];
        for r in &self.rows {
            if let Some(l) = r.label {
                c[l.index()] += 1;
            }
        }
        c
    }

    /// The dataset over the attributes `keep` (indices into this space).
    pub fn restrict(&self, keep: &[usize]) -> Dataset {
        let mut idx = keep.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Dataset {
            space: self.space.restrict(&idx),
            rows: self
                .rows
                .iter()
                .map(|r| FeatureVector {
                    values: r.values.select(&idx),
                    label: r.label,
                })
                .collect(),
            ids: self.ids.clone(),
        }
    }
}

pub(crate) fn check_space(expected: usize, v: &FeatureVector) -> Result<(), LearnError> {
    if v.len() != expected {
        return Err(FeatureError::SpaceMismatch(format!(
            "vector has {} values, model expects {expected}",
            v.len()
        ))
        .into());
    }
    Ok(())
}
