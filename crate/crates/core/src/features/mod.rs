//! Feature spaces and featurization.
//!
//! A [`FeatureSpace`] is an ordered list of named attributes, each tagged
//! with the group it belongs to. The seven theoretically motivated groups
//! are computed by the extractors in [`extract`]; the NGRAM group counts
//! entries of a vocabulary built from training responses only.

pub mod extract;
mod matrix;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Label, LabeledPair};
use crate::lexicons::LexiconSet;
use crate::textproc::{for_each_ngram, split_sentences, tokenize, NgramOptions, SentenceSpan, TokenList};

pub use extract::{
    extract_agreement, extract_cues, extract_denial, extract_duration, extract_hedges,
    extract_polarity, extract_punctuation, Duration, PolarityMode,
};
pub use matrix::{read_matrix, write_matrix};

pub const PRIOR_PREFIX: &str = "prior.";
pub const NGRAM_PREFIX: &str = "ng:";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureGroup {
    Agreement,
    Cue,
    Denial,
    Hedge,
    Duration,
    Polarity,
    Punctuation,
    Ngram,
}

impl FeatureGroup {
    /// The seven theoretically motivated groups, in canonical order.
    pub const TM: [FeatureGroup; 7] = [
        FeatureGroup::Agreement,
        FeatureGroup::Cue,
        FeatureGroup::Denial,
        FeatureGroup::Hedge,
        FeatureGroup::Duration,
        FeatureGroup::Polarity,
        FeatureGroup::Punctuation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureGroup::Agreement => "agreement",
            FeatureGroup::Cue => "cue",
            FeatureGroup::Denial => "denial",
            FeatureGroup::Hedge => "hedge",
            FeatureGroup::Duration => "duration",
            FeatureGroup::Polarity => "polarity",
            FeatureGroup::Punctuation => "punctuation",
            FeatureGroup::Ngram => "ngram",
        }
    }

    /// Human-readable name used in report rows.
    pub fn title(self) -> &'static str {
        match self {
            FeatureGroup::Agreement => "Agreement",
            FeatureGroup::Cue => "Cue Words",
            FeatureGroup::Denial => "Denial",
            FeatureGroup::Hedge => "Hedges",
            FeatureGroup::Duration => "Duration",
            FeatureGroup::Polarity => "Polarity",
            FeatureGroup::Punctuation => "Punctuation",
            FeatureGroup::Ngram => "Ngram",
        }
    }
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureGroup {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        FeatureGroup::TM
            .into_iter()
            .chain([FeatureGroup::Ngram])
            .find(|g| g.as_str() == s || (s == "punct" && *g == FeatureGroup::Punctuation))
            .ok_or_else(|| FeatureError::Argument(format!("unknown feature group {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrKind {
    Count,
    Length,
    Sum,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub group: FeatureGroup,
    pub kind: AttrKind,
}

impl Attribute {
    fn new(name: impl Into<String>, group: FeatureGroup, kind: AttrKind) -> Attribute {
        Attribute {
            name: name.into(),
            group,
            kind,
        }
    }

    /// Recovers group and kind from an attribute name (used when reading a
    /// feature matrix back).
    pub fn from_name(name: &str) -> Result<Attribute, FeatureError> {
        let base = name.strip_prefix(PRIOR_PREFIX).unwrap_or(name);
        let (group, kind) = if base == "agreement" {
            (FeatureGroup::Agreement, AttrKind::Count)
        } else if base == "denial" {
            (FeatureGroup::Denial, AttrKind::Count)
        } else if base == "hedge" {
            (FeatureGroup::Hedge, AttrKind::Count)
        } else if base.starts_with("cue:") {
            (FeatureGroup::Cue, AttrKind::Count)
        } else if base.starts_with("duration:") {
            (FeatureGroup::Duration, AttrKind::Length)
        } else if base.starts_with("polarity:") {
            (FeatureGroup::Polarity, AttrKind::Sum)
        } else if base.starts_with("punct:") {
            (FeatureGroup::Punctuation, AttrKind::Count)
        } else if base.starts_with(NGRAM_PREFIX) {
            (FeatureGroup::Ngram, AttrKind::Count)
        } else {
            return Err(FeatureError::Argument(format!("unrecognized attribute {name:?}")));
        };
        Ok(Attribute::new(name, group, kind))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NgramVocab {
    /// Highest order included; orders `1..=max_n` are all present.
    pub max_n: usize,
    pub min_count: usize,
    pub options: NgramOptions,
    /// Space-joined ngrams, frequency descending then lexicographic.
    pub entries: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl PartialEq for NgramVocab {
    fn eq(&self, other: &Self) -> bool {
        self.max_n == other.max_n
            && self.min_count == other.min_count
            && self.options == other.options
            && self.entries == other.entries
    }
}

impl NgramVocab {
    pub fn new(max_n: usize, min_count: usize, options: NgramOptions, entries: Vec<String>) -> NgramVocab {
        let index = entries.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        NgramVocab {
            max_n,
            min_count,
            options,
            entries,
            index,
        }
    }

    fn rebuild_index(&mut self) {
        self.index = self.entries.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, ngram: &str) -> Option<usize> {
        self.index.get(ngram).copied()
    }
}

/// Vocabulary of response-post ngrams of orders `1..=n` with corpus
/// frequency at least `min_count`. Built from the training pairs only.
pub fn build_vocabulary(
    train: &[LabeledPair],
    n: usize,
    min_count: usize,
    options: NgramOptions,
) -> Result<NgramVocab, FeatureError> {
    if !(1..=2).contains(&n) {
        return Err(FeatureError::Argument(format!("ngram order must be 1 or 2, got {n}")));
    }
    if train.is_empty() {
        return Err(FeatureError::Argument("cannot build a vocabulary from no pairs".into()));
    }
    let mut freq: HashMap<String, usize> = HashMap::new();
    for p in train {
        let tl = tokenize(&p.pair.response.text);
        let spans = split_sentences(&tl);
        for order in 1..=n {
            for_each_ngram(&tl, &spans, order, options, |g| *freq.entry(g).or_insert(0) += 1)
                .map_err(|e| FeatureError::Argument(e.to_string()))?;
        }
    }
    let mut entries: Vec<(String, usize)> = freq.into_iter().filter(|(_, c)| *c >= min_count).collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(NgramVocab::new(
        n,
        min_count,
        options,
        entries.into_iter().map(|(g, _)| g).collect(),
    ))
}

/// Which groups a space contains, and for NGRAM the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureSetSpec {
    pub groups: BTreeSet<FeatureGroup>,
    pub ngram_order: Option<usize>,
}

impl FeatureSetSpec {
    pub fn all_tm() -> FeatureSetSpec {
        FeatureSetSpec {
            groups: FeatureGroup::TM.into_iter().collect(),
            ngram_order: None,
        }
    }

    pub fn ngram(order: usize) -> FeatureSetSpec {
        FeatureSetSpec {
            groups: [FeatureGroup::Ngram].into_iter().collect(),
            ngram_order: Some(order),
        }
    }

    pub fn single(group: FeatureGroup) -> FeatureSetSpec {
        FeatureSetSpec {
            groups: [group].into_iter().collect(),
            ngram_order: (group == FeatureGroup::Ngram).then_some(1),
        }
    }

    pub fn without(&self, group: FeatureGroup) -> Result<FeatureSetSpec, FeatureError> {
        if !self.groups.contains(&group) {
            return Err(FeatureError::Argument(format!(
                "cannot ablate {group}: it is not in the feature set {self}"
            )));
        }
        let mut out = self.clone();
        out.groups.remove(&group);
        if group == FeatureGroup::Ngram {
            out.ngram_order = None;
        }
        Ok(out)
    }
}

impl fmt::Display for FeatureSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tm: BTreeSet<FeatureGroup> = FeatureGroup::TM.into_iter().collect();
        let mut parts = Vec::new();
        let rest: Vec<FeatureGroup> = if tm.is_subset(&self.groups) {
            parts.push("all-tm".to_string());
            self.groups.difference(&tm).copied().collect()
        } else {
            self.groups.iter().copied().collect()
        };
        for g in rest {
            match (g, self.ngram_order) {
                (FeatureGroup::Ngram, Some(1)) => parts.push("unigram".into()),
                (FeatureGroup::Ngram, Some(2)) => parts.push("bigram".into()),
                (g, _) => parts.push(g.as_str().into()),
            }
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for FeatureSetSpec {
    type Err = FeatureError;

    /// `all-tm`, `unigram`, `bigram` (unigrams plus bigrams) or group
    /// names, combined with `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut spec = FeatureSetSpec {
            groups: BTreeSet::new(),
            ngram_order: None,
        };
        for part in s.split('+').map(str::trim) {
            match part.to_ascii_lowercase().as_str() {
                "all-tm" | "alltm" | "tm" => spec.groups.extend(FeatureGroup::TM),
                "unigram" | "ngram" => {
                    spec.groups.insert(FeatureGroup::Ngram);
                    spec.ngram_order = Some(spec.ngram_order.unwrap_or(0).max(1));
                }
                "bigram" => {
                    spec.groups.insert(FeatureGroup::Ngram);
                    spec.ngram_order = Some(2);
                }
                other => {
                    spec.groups.insert(other.parse()?);
                }
            }
        }
        if spec.groups.is_empty() {
            return Err(FeatureError::Argument(format!("empty feature set {s:?}")));
        }
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureOptions {
    pub polarity_mode: PolarityMode,
    pub ngram: NgramOptions,
    pub ngram_min_count: usize,
    /// Presence (0/1) instead of raw counts for NGRAM attributes.
    pub binary_ngrams: bool,
    /// Also compute TM features on the prior post, as `prior.*` attributes.
    pub include_prior: bool,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        FeatureOptions {
            polarity_mode: PolarityMode::Sum,
            ngram: NgramOptions::default(),
            ngram_min_count: 1,
            binary_ngrams: false,
            include_prior: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpace {
    pub attributes: Vec<Attribute>,
    pub ngram_vocab: Option<NgramVocab>,
    pub options: FeatureOptions,
    /// Cue entry labels the CUE attributes were built from.
    pub cue_labels: Vec<String>,
}

fn cue_attr_name(label: &str) -> String {
    format!("cue:{}", label.trim_start_matches('@').replace(' ', "_"))
}

fn tm_attributes(group: FeatureGroup, cue_labels: &[String]) -> Vec<Attribute> {
    use AttrKind::*;
    use FeatureGroup as G;
    match group {
        G::Agreement => vec![Attribute::new("agreement", G::Agreement, Count)],
        G::Cue => cue_labels
            .iter()
            .map(|l| Attribute::new(cue_attr_name(l), G::Cue, Count))
            .collect(),
        G::Denial => vec![Attribute::new("denial", G::Denial, Count)],
        G::Hedge => vec![Attribute::new("hedge", G::Hedge, Count)],
        G::Duration => ["chars", "words", "sentences"]
            .iter()
            .map(|n| Attribute::new(format!("duration:{n}"), G::Duration, Length))
            .collect(),
        G::Polarity => ["positive", "negative"]
            .iter()
            .map(|n| Attribute::new(format!("polarity:{n}"), G::Polarity, Sum))
            .collect(),
        G::Punctuation => ["question", "exclamation"]
            .iter()
            .map(|n| Attribute::new(format!("punct:{n}"), G::Punctuation, Count))
            .collect(),
        G::Ngram => Vec::new(),
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FeatureError {
    #[error("{0}")]
    Argument(String),
    #[error("feature space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("feature matrix line {line}: {message}")]
    Matrix { line: usize, message: String },
}

impl FeatureSpace {
    /// Builds the attribute list for `groups` (canonical group order). NGRAM
    /// requires a vocabulary.
    pub fn build(
        groups: &BTreeSet<FeatureGroup>,
        cue_labels: &[String],
        vocab: Option<NgramVocab>,
        options: FeatureOptions,
    ) -> Result<FeatureSpace, FeatureError> {
        if groups.contains(&FeatureGroup::Ngram) != vocab.is_some() {
            return Err(FeatureError::SpaceMismatch(
                "an ngram vocabulary must be given exactly when the NGRAM group is requested".into(),
            ));
        }
        let mut attributes = Vec::new();
        for g in FeatureGroup::TM.into_iter().filter(|g| groups.contains(g)) {
            attributes.extend(tm_attributes(g, cue_labels));
        }
        if options.include_prior {
            let prior: Vec<Attribute> = attributes
                .iter()
                .map(|a| Attribute {
                    name: format!("{PRIOR_PREFIX}{}", a.name),
                    ..a.clone()
                })
                .collect();
            attributes.extend(prior);
        }
        if let Some(v) = &vocab {
            attributes.extend(
                v.entries
                    .iter()
                    .map(|g| Attribute::new(format!("{NGRAM_PREFIX}{g}"), FeatureGroup::Ngram, AttrKind::Count)),
            );
        }
        Ok(FeatureSpace {
            attributes,
            ngram_vocab: vocab,
            options,
            cue_labels: cue_labels.to_vec(),
        })
    }

    /// Builds the space for a named feature set, learning the vocabulary
    /// from `train` when NGRAM is requested.
    pub fn for_spec(
        spec: &FeatureSetSpec,
        train: &[LabeledPair],
        lexicons: &LexiconSet,
        options: FeatureOptions,
    ) -> Result<FeatureSpace, FeatureError> {
        let vocab = match (spec.groups.contains(&FeatureGroup::Ngram), spec.ngram_order) {
            (true, order) => Some(build_vocabulary(
                train,
                order.unwrap_or(1),
                options.ngram_min_count,
                options.ngram,
            )?),
            (false, _) => None,
        };
        FeatureSpace::build(&spec.groups, &lexicons.cue_labels(), vocab, options)
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.attributes.iter().map(|a| a.name.as_str()).collect()
    }

    pub fn groups(&self) -> BTreeSet<FeatureGroup> {
        self.attributes.iter().map(|a| a.group).collect()
    }

    pub fn group_arity(&self, group: FeatureGroup) -> usize {
        self.attributes.iter().filter(|a| a.group == group).count()
    }

    /// The space restricted to `keep` (indices into this space), in this
    /// space's order. The vocabulary is dropped: a restricted space is
    /// only used on already featurized rows.
    pub fn restrict(&self, keep: &[usize]) -> FeatureSpace {
        let mut idx = keep.to_vec();
        idx.sort_unstable();
        idx.dedup();
        FeatureSpace {
            attributes: idx.iter().map(|&i| self.attributes[i].clone()).collect(),
            ngram_vocab: None,
            options: self.options,
            cue_labels: self.cue_labels.clone(),
        }
    }

    /// Indices of attributes outside `group`.
    pub fn indices_without(&self, group: FeatureGroup) -> Vec<usize> {
        (0..self.attributes.len())
            .filter(|&i| self.attributes[i].group != group)
            .collect()
    }

    pub(crate) fn after_deserialize(&mut self) {
        if let Some(v) = &mut self.ngram_vocab {
            v.rebuild_index();
        }
    }
}

/// Attribute values for one instance. NGRAM-bearing spaces use the sparse
/// form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FeatureValues {
    Dense(Vec<f64>),
    Sparse { len: usize, entries: Vec<(u32, f64)> },
}

impl FeatureValues {
    pub fn len(&self) -> usize {
        match self {
            FeatureValues::Dense(v) => v.len(),
            FeatureValues::Sparse { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> f64 {
        match self {
            FeatureValues::Dense(v) => v[i],
            FeatureValues::Sparse { entries, .. } => entries
                .binary_search_by_key(&(i as u32), |e| e.0)
                .map(|k| entries[k].1)
                .unwrap_or(0.0),
        }
    }

    /// `(index, value)` for every non-zero value, ascending by index.
    pub fn nonzero(&self) -> Box<dyn Iterator<Item = (usize, f64)> + '_> {
        match self {
            FeatureValues::Dense(v) => Box::new(
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0.0)
                    .map(|(i, x)| (i, *x)),
            ),
            FeatureValues::Sparse { entries, .. } => {
                Box::new(entries.iter().map(|&(i, x)| (i as usize, x)))
            }
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Keeps the values at the sorted indices `keep`.
    pub fn select(&self, keep: &[usize]) -> FeatureValues {
        match self {
            FeatureValues::Dense(v) => FeatureValues::Dense(keep.iter().map(|&i| v[i]).collect()),
            FeatureValues::Sparse { .. } => {
                let entries = keep
                    .iter()
                    .enumerate()
                    .filter_map(|(new, &old)| {
                        let x = self.get(old);
                        (x != 0.0).then_some((new as u32, x))
                    })
                    .collect();
                FeatureValues::Sparse {
                    len: keep.len(),
                    entries,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: FeatureValues,
    pub label: Option<Label>,
}

impl FeatureVector {
    pub fn get(&self, i: usize) -> f64 {
        self.values.get(i)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn tm_values(tokens: &TokenList, spans: &[SentenceSpan], space: &FeatureSpace, lexicons: &LexiconSet) -> Vec<f64> {
    let groups = space.groups();
    let mut out = Vec::new();
    for g in FeatureGroup::TM.into_iter().filter(|g| groups.contains(g)) {
        match g {
            FeatureGroup::Agreement => {
                out.push(extract::agreement_count(tokens, spans, lexicons) as f64)
            }
            FeatureGroup::Cue => out.extend(
                extract::cue_counts(tokens, spans, lexicons)
                    .into_iter()
                    .map(|c| c as f64),
            ),
            FeatureGroup::Denial => out.push(lexicons.denial_matcher().count(tokens, spans) as f64),
            FeatureGroup::Hedge => out.push(lexicons.hedge_matcher().count(tokens, spans) as f64),
            FeatureGroup::Duration => {
                let d = extract_duration(tokens);
                out.extend([d.chars as f64, d.words as f64, d.sentences as f64]);
            }
            FeatureGroup::Polarity => {
                let (p, n) = extract_polarity(tokens, &lexicons.mpqa, space.options.polarity_mode);
                out.extend([p, n]);
            }
            FeatureGroup::Punctuation => {
                let (q, e) = extract_punctuation(tokens);
                out.extend([q as f64, e as f64]);
            }
            FeatureGroup::Ngram => {}
        }
    }
    out
}

/// Computes the feature vector of a pair's response post (and prior post
/// when the space asks for it). Pure in `(pair, space, lexicons)`.
pub fn featurize(
    pair: &LabeledPair,
    space: &FeatureSpace,
    lexicons: &LexiconSet,
) -> Result<FeatureVector, FeatureError> {
    let mut fv = featurize_text(&pair.pair.response.text, Some(&pair.pair.prior.text), space, lexicons)?;
    fv.label = Some(pair.label);
    Ok(fv)
}

/// Featurizes raw text. `prior` is consulted only when the space was built
/// with `include_prior`.
pub fn featurize_text(
    response: &str,
    prior: Option<&str>,
    space: &FeatureSpace,
    lexicons: &LexiconSet,
) -> Result<FeatureVector, FeatureError> {
    let groups = space.groups();
    if groups.contains(&FeatureGroup::Cue) {
        let labels = lexicons.cue_labels();
        if labels != space.cue_labels {
            return Err(FeatureError::SpaceMismatch(format!(
                "space was built for {} cue entries ({}), the loaded cue lexicon has {}",
                space.cue_labels.len(),
                space.cue_labels.join(", "),
                labels.len()
            )));
        }
    }
    if groups.contains(&FeatureGroup::Ngram) && space.ngram_vocab.is_none() {
        return Err(FeatureError::SpaceMismatch("NGRAM attributes without a vocabulary".into()));
    }

    let tokens = tokenize(response);
    let spans = split_sentences(&tokens);
    let mut dense = tm_values(&tokens, &spans, space, lexicons);
    if space.options.include_prior {
        let ptoks = tokenize(prior.unwrap_or(""));
        let pspans = split_sentences(&ptoks);
        dense.extend(tm_values(&ptoks, &pspans, space, lexicons));
    }

    let Some(vocab) = &space.ngram_vocab else {
        return Ok(FeatureVector {
            values: FeatureValues::Dense(dense),
            label: None,
        });
    };
    let offset = dense.len();
    let mut counts: HashMap<usize, f64> = HashMap::new();
    for order in 1..=vocab.max_n {
        for_each_ngram(&tokens, &spans, order, vocab.options, |g| {
            if let Some(i) = vocab.get(&g) {
                *counts.entry(offset + i).or_insert(0.0) += 1.0;
            }
        })
        .map_err(|e| FeatureError::Argument(e.to_string()))?;
    }
    let mut entries: Vec<(u32, f64)> = dense
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != 0.0)
        .map(|(i, x)| (i as u32, *x))
        .collect();
    let mut ng: Vec<(u32, f64)> = counts
        .into_iter()
        .map(|(i, c)| (i as u32, if space.options.binary_ngrams { 1.0 } else { c }))
        .collect();
    ng.sort_unstable_by_key(|e| e.0);
    entries.extend(ng);
    Ok(FeatureVector {
        values: FeatureValues::Sparse {
            len: space.len(),
            entries,
        },
        label: None,
    })
}

/// Featurizes every pair (in parallel; output order follows input order).
pub fn featurize_all(
    pairs: &[LabeledPair],
    space: &FeatureSpace,
    lexicons: &LexiconSet,
) -> Result<Vec<FeatureVector>, FeatureError> {
    pairs.par_iter().map(|p| featurize(p, space, lexicons)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::test_pair;

    fn lp(id: &str, text: &str, label: Label) -> LabeledPair {
        LabeledPair {
            pair: test_pair(id, "t", text, if label == Label::Agreement { 2.0 } else { -2.0 }),
            label,
        }
    }

    #[test]
    fn all_tm_has_28_attributes() {
        let lex = LexiconSet::shipped();
        let space = FeatureSpace::for_spec(&FeatureSetSpec::all_tm(), &[], &lex, FeatureOptions::default()).unwrap();
        assert_eq!(space.len(), 28);
        let names = space.names();
        let unique: BTreeSet<_> = names.iter().collect();
        assert_eq!(unique.len(), 28);
        let fv = featurize(&lp("1", "Quite right. My mistake.", Label::Agreement), &space, &lex).unwrap();
        assert_eq!(fv.len(), 28);
        assert_eq!(fv.label, Some(Label::Agreement));
    }

    #[test]
    fn punctuation_only_space() {
        let lex = LexiconSet::shipped();
        let spec: FeatureSetSpec = "punctuation".parse().unwrap();
        let space = FeatureSpace::for_spec(&spec, &[], &lex, FeatureOptions::default()).unwrap();
        assert_eq!(space.len(), 2);
        let fv = featurize(&lp("1", "Why?? No!", Label::Disagreement), &space, &lex).unwrap();
        assert_eq!(fv.values.to_dense(), vec![2.0, 1.0]);
    }

    #[test]
    fn unigram_space_counts_vocab_hits() {
        let lex = LexiconSet::shipped();
        let train = vec![lp("1", "apple pie", Label::Agreement), lp("2", "apple tart", Label::Disagreement)];
        let space = FeatureSpace::for_spec(&"unigram".parse().unwrap(), &train, &lex, FeatureOptions::default()).unwrap();
        assert_eq!(space.names(), ["ng:apple", "ng:pie", "ng:tart"]);
        let fv = featurize(&lp("3", "zebra crossing", Label::Agreement), &space, &lex).unwrap();
        assert_eq!(fv.values.to_dense(), vec![0.0; 3]);
        let fv = featurize(&lp("4", "apple apple pie", Label::Agreement), &space, &lex).unwrap();
        assert_eq!(fv.values.to_dense(), vec![2.0, 1.0, 0.0]);
    }

    #[test]
    fn vocabulary_rules() {
        let opts = NgramOptions::default();
        let train = vec![lp("1", "b a", Label::Agreement), lp("2", "a c", Label::Disagreement)];
        let v = build_vocabulary(&train, 1, 1, opts).unwrap();
        assert_eq!(v.entries, ["a", "b", "c"]);
        let v = build_vocabulary(&train, 2, 1, opts).unwrap();
        assert_eq!(v.entries, ["a", "a c", "b", "b a", "c"]);
        assert!(build_vocabulary(&train, 1, 3, opts).unwrap().is_empty());
        assert!(build_vocabulary(&train, 3, 1, opts).is_err());
        assert!(build_vocabulary(&[], 1, 1, opts).is_err());
    }

    #[test]
    fn feature_set_parsing() {
        let s: FeatureSetSpec = "all-tm".parse().unwrap();
        assert_eq!(s.groups.len(), 7);
        assert_eq!(s.to_string(), "all-tm");
        let b: FeatureSetSpec = "bigram".parse().unwrap();
        assert_eq!(b.ngram_order, Some(2));
        assert_eq!(b.to_string(), "bigram");
        assert!(s.without(FeatureGroup::Ngram).is_err());
        assert_eq!(s.without(FeatureGroup::Punctuation).unwrap().groups.len(), 6);
        assert!("nonsense".parse::<FeatureSetSpec>().is_err());
    }

    #[test]
    fn cue_mismatch_is_reported() {
        let lex = LexiconSet::shipped();
        let mut space =
            FeatureSpace::for_spec(&"cue".parse().unwrap(), &[], &lex, FeatureOptions::default()).unwrap();
        space.cue_labels.pop();
        assert!(matches!(
            featurize(&lp("1", "so", Label::Agreement), &space, &lex),
            Err(FeatureError::SpaceMismatch(_))
        ));
    }

    #[test]
    fn prior_features_double_the_tm_block() {
        let lex = LexiconSet::shipped();
        let opts = FeatureOptions {
            include_prior: true,
            ..Default::default()
        };
        let space = FeatureSpace::for_spec(&FeatureSetSpec::all_tm(), &[], &lex, opts).unwrap();
        assert_eq!(space.len(), 56);
        assert!(space.names()[28].starts_with(PRIOR_PREFIX));
    }

    #[test]
    fn attribute_names_round_trip() {
        let lex = LexiconSet::shipped();
        let space = FeatureSpace::for_spec(&FeatureSetSpec::all_tm(), &[], &lex, FeatureOptions::default()).unwrap();
        for a in &space.attributes {
            assert_eq!(&Attribute::from_name(&a.name).unwrap(), a);
        }
    }
}
