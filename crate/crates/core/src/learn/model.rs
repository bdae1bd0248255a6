//! Serialized models: pretty-printed JSON with a `format_version` field,
//! the featurization space (including any ngram vocabulary), the optional
//! selected attribute indices, and the classifier's node lists.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Forest, DecisionTree, LearnError};
use crate::corpus::Label;
use crate::features::{FeatureSpace, FeatureVector};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "learner", rename_all = "lowercase")]
pub enum Classifier {
    Tree(DecisionTree),
    Forest(Forest),
}

impl Classifier {
    pub fn predict(&self, v: &FeatureVector) -> Result<Label, LearnError> {
        match self {
            Classifier::Tree(t) => Ok(t.predict(v)?.label),
            Classifier::Forest(f) => f.predict(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub format_version: u32,
    /// Space the input vectors are featurized in.
    pub space: FeatureSpace,
    /// Indices into `space` the classifier was trained on; `None` = all.
    pub selected: Option<Vec<usize>>,
    pub classifier: Classifier,
    /// `(lexicon, version)` pairs the space was featurized with.
    pub lexicon_versions: Vec<(String, String)>,
}

impl Model {
    pub fn new(
        space: FeatureSpace,
        selected: Option<Vec<usize>>,
        classifier: Classifier,
        lexicon_versions: Vec<(String, String)>,
    ) -> Model {
        Model {
            format_version: MODEL_FORMAT_VERSION,
            space,
            selected,
            classifier,
            lexicon_versions,
        }
    }

    /// Predicts a vector in `space` (selection is applied here).
    pub fn predict(&self, v: &FeatureVector) -> Result<Label, LearnError> {
        super::check_space(self.space.len(), v)?;
        match &self.selected {
            None => self.classifier.predict(v),
            Some(idx) => self.classifier.predict(&FeatureVector {
                values: v.values.select(idx),
                label: v.label,
            }),
        }
    }
}

pub fn save_model<W: Write>(model: &Model, out: W) -> Result<(), LearnError> {
    serde_json::to_writer_pretty(out, model).map_err(|e| LearnError::Model(e.to_string()))
}

pub fn load_model<R: Read>(source: R) -> Result<Model, LearnError> {
    let mut model: Model = serde_json::from_reader(source).map_err(|e| LearnError::Model(e.to_string()))?;
    if model.format_version != MODEL_FORMAT_VERSION {
        return Err(LearnError::Model(format!(
            "unsupported format_version {} (expected {MODEL_FORMAT_VERSION})",
            model.format_version
        )));
    }
    model.space.after_deserialize();
    Ok(model)
}
