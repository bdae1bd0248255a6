//! Annotated dialogue pairs: loading, thresholding, topic splits and a
//! synthetic generator.

mod io;
pub mod synth;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use io::{load_pairs, write_pairs};
pub use synth::{generate_synthetic, SyntheticSpec};

pub const UNKNOWN_TOPIC: &str = "unknown";
pub const MIN_AGREEMENT: f64 = -5.0;
pub const MAX_AGREEMENT: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    Agreement,
    Disagreement,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Agreement, Label::Disagreement];

    pub fn index(self) -> usize {
        match self {
            Label::Agreement => 0,
            Label::Disagreement => 1,
        }
    }

    pub fn from_index(i: usize) -> Label {
        if i == 0 {
            Label::Agreement
        } else {
            Label::Disagreement
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Agreement => "AGREEMENT",
            Label::Disagreement => "DISAGREEMENT",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AGREEMENT" | "AGREE" => Ok(Label::Agreement),
            "DISAGREEMENT" | "DISAGREE" => Ok(Label::Disagreement),
            other => Err(CorpusError::Argument(format!("unknown label {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Post {
    pub post_id: String,
    pub text: String,
    pub author: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedPair {
    pub pair_id: String,
    pub topic: String,
    pub prior: Post,
    pub response: Post,
    pub mean_agreement: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPair {
    pub pair: AnnotatedPair,
    pub label: Label,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DatasetSplit {
    pub train: Vec<LabeledPair>,
    pub test: Vec<LabeledPair>,
    pub train_topics: BTreeSet<String>,
    pub test_topics: BTreeSet<String>,
    /// Pairs whose topic was in neither set.
    pub excluded: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: input is not valid UTF-8")]
    Decode { line: usize },
    #[error("header is missing required column {0:?}")]
    Schema(String),
    #[error("line {line}: mean_agreement {value} is outside [-5, 5]")]
    Range { line: usize, value: f64 },
    #[error("line {line}: {field} post is empty")]
    EmptyPost { line: usize, field: &'static str },
    #[error("line {line}: duplicate pair_id {id:?}")]
    DuplicatePair { line: usize, id: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("{0}")]
    Argument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Labels pairs by their mean judgment: `>= hi` is AGREEMENT, `<= lo` is
/// DISAGREEMENT, anything strictly between is dropped. Both bounds are
/// inclusive.
pub fn filter_by_threshold(
    pairs: &[AnnotatedPair],
    lo: f64,
    hi: f64,
) -> Result<Vec<LabeledPair>, CorpusError> {
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(CorpusError::Argument(format!(
            "threshold lo ({lo}) must be below hi ({hi})"
        )));
    }
    Ok(pairs
        .iter()
        .filter_map(|p| {
            let label = if p.mean_agreement >= hi {
                Label::Agreement
            } else if p.mean_agreement <= lo {
                Label::Disagreement
            } else {
                return None;
            };
            Some(LabeledPair {
                pair: p.clone(),
                label,
            })
        })
        .collect())
}

pub fn split_by_topic(
    pairs: &[LabeledPair],
    train_topics: &BTreeSet<String>,
    test_topics: &BTreeSet<String>,
) -> Result<DatasetSplit, CorpusError> {
    if let Some(t) = train_topics.intersection(test_topics).next() {
        return Err(CorpusError::Argument(format!(
            "topic {t:?} is in both the train and test sets"
        )));
    }
    let mut split = DatasetSplit {
        train_topics: train_topics.clone(),
        test_topics: test_topics.clone(),
        ..Default::default()
    };
    for p in pairs {
        if train_topics.contains(&p.pair.topic) {
            split.train.push(p.clone());
        } else if test_topics.contains(&p.pair.topic) {
            split.test.push(p.clone());
        } else {
            split.excluded += 1;
        }
    }
    Ok(split)
}

/// Every topic that occurs in `pairs` and is not in `train_topics`.
pub fn complement_topics(pairs: &[LabeledPair], train_topics: &BTreeSet<String>) -> BTreeSet<String> {
    pairs
        .iter()
        .map(|p| &p.pair.topic)
        .filter(|t| !train_topics.contains(*t))
        .cloned()
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TopicCounts {
    pub agree: usize,
    pub disagree: usize,
}

impl TopicCounts {
    pub fn total(&self) -> usize {
        self.agree + self.disagree
    }
}

pub fn corpus_stats(pairs: &[LabeledPair]) -> BTreeMap<String, TopicCounts> {
    let mut table: BTreeMap<String, TopicCounts> = BTreeMap::new();
    for p in pairs {
        let row = table.entry(p.pair.topic.clone()).or_default();
        match p.label {
            Label::Agreement => row.agree += 1,
            Label::Disagreement => row.disagree += 1,
        }
    }
    table
}

#[cfg(test)]
pub(crate) fn test_pair(id: &str, topic: &str, response: &str, score: f64) -> AnnotatedPair {
    AnnotatedPair {
        pair_id: id.to_string(),
        topic: topic.to_string(),
        prior: Post {
            post_id: format!("{id}/prior"),
            text: "prior post".to_string(),
            author: None,
        },
        response: Post {
            post_id: format!("{id}/response"),
            text: response.to_string(),
            author: None,
        },
        mean_agreement: score,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(id: &str, topic: &str, label: Label) -> LabeledPair {
        let score = if label == Label::Agreement { 2.0 } else { -2.0 };
        LabeledPair {
            pair: test_pair(id, topic, "text", score),
            label,
        }
    }

    fn topics(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn threshold_boundaries() {
        let pairs = vec![
            test_pair("a", "t", "x", 0.5),
            test_pair("b", "t", "x", -1.0),
            test_pair("c", "t", "x", 5.0),
            test_pair("d", "t", "x", 1.0),
            test_pair("e", "t", "x", -0.99),
        ];
        let out = filter_by_threshold(&pairs, -1.0, 1.0).unwrap();
        let got: Vec<_> = out.iter().map(|p| (p.pair.pair_id.as_str(), p.label)).collect();
        assert_eq!(
            got,
            [
                ("b", Label::Disagreement),
                ("c", Label::Agreement),
                ("d", Label::Agreement)
            ]
        );
        assert!(filter_by_threshold(&pairs, 1.0, 1.0).is_err());
    }

    #[test]
    fn split_examples() {
        let pairs = vec![labeled("1", "C", Label::Agreement), labeled("2", "C", Label::Disagreement)];
        let s = split_by_topic(&pairs, &topics(&["A"]), &topics(&["B"])).unwrap();
        assert!(s.train.is_empty() && s.test.is_empty());
        assert_eq!(s.excluded, 2);
        assert!(split_by_topic(&pairs, &topics(&["A"]), &topics(&["A"])).is_err());
    }

    #[test]
    fn stats_count() {
        assert!(corpus_stats(&[]).is_empty());
        let mut pairs = vec![];
        for i in 0..2 {
            pairs.push(labeled(&format!("a{i}"), "T", Label::Agreement));
        }
        for i in 0..3 {
            pairs.push(labeled(&format!("d{i}"), "T", Label::Disagreement));
        }
        let s = corpus_stats(&pairs);
        assert_eq!(s["T"], TopicCounts { agree: 2, disagree: 3 });
    }
}
