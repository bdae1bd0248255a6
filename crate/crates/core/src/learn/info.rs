use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::split::{entropy_of, scan_attribute, ColumnIndex, Scan};
use super::{Dataset, LearnError};
use crate::features::FeatureSpace;

/// Shannon entropy in bits. Counts must not all be zero.
pub fn entropy(counts: &[usize]) -> Result<f64, LearnError> {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return Err(LearnError::Argument("entropy of all-zero counts".into()));
    }
    let n = n as f64;
    Ok(counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainOptions {
    /// Subtract `log2(candidates) / N` from the gain.
    pub correction: bool,
    /// Score a constant attribute 0 instead of failing.
    pub lenient: bool,
}

impl Default for GainOptions {
    fn default() -> Self {
        GainOptions {
            correction: true,
            lenient: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitScore {
    pub ratio: f64,
    /// `None` for a constant attribute.
    pub threshold: Option<f64>,
    /// Gain at `threshold`, after correction when enabled.
    pub gain: f64,
    pub split_info: f64,
}

fn node_totals(data: &Dataset) -> Result<([f64; 2], Vec<crate::corpus::Label>), LearnError> {
    if data.is_empty() {
        return Err(LearnError::Argument("empty dataset".into()));
    }
    let labels = data.labels()?;
    let mut totals = [0.0; 2];
    for l in &labels {
        totals[l.index()] += 1.0;
    }
    Ok((totals, labels))
}

fn score_column(
    col: &[(u32, f64)],
    labels: &[crate::corpus::Label],
    totals: [f64; 2],
    opts: GainOptions,
    name: &str,
) -> Result<SplitScore, LearnError> {
    let w = vec![1.0; labels.len()];
    match scan_attribute(col, labels, &w, totals, 1.0, opts.correction) {
        Scan::Found(s) => Ok(SplitScore {
            ratio: s.ratio,
            threshold: Some(s.threshold),
            gain: s.gain,
            split_info: s.split_info,
        }),
        Scan::Constant | Scan::NoAdmissible if opts.lenient => Ok(SplitScore {
            ratio: 0.0,
            threshold: None,
            gain: 0.0,
            split_info: 0.0,
        }),
        Scan::Constant | Scan::NoAdmissible => {
            Err(LearnError::Degenerate(format!("attribute {name:?} is constant")))
        }
    }
}

/// Gain ratio of the best binary threshold on `attr`.
pub fn gain_ratio(data: &Dataset, attr: usize, opts: GainOptions) -> Result<SplitScore, LearnError> {
    if attr >= data.space.len() {
        return Err(LearnError::Argument(format!(
            "attribute {attr} out of range (space has {})",
            data.space.len()
        )));
    }
    let (totals, labels) = node_totals(data)?;
    let mut col: Vec<(u32, f64)> = data
        .rows
        .iter()
        .enumerate()
        .filter_map(|(r, row)| {
            let x = row.get(attr);
            (x != 0.0).then_some((r as u32, x))
        })
        .collect();
    col.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    score_column(&col, &labels, totals, opts, &data.space.attributes[attr].name)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub index: usize,
    pub name: String,
    pub score: f64,
    pub threshold: Option<f64>,
}

/// Scores are compared at 1e-12 resolution so that mathematically equal
/// scores computed along different paths tie.
fn tie_key(score: f64) -> i64 {
    (score * 1e12).round() as i64
}

/// Attributes by descending gain ratio; ties keep space order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanking {
    pub entries: Vec<RankEntry>,
    /// One line per attribute that could not be scored (scored 0).
    pub diagnostics: Vec<String>,
}

impl FeatureRanking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Space indices of the top `k` entries, ascending.
    pub fn top_indices(&self, k: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = self.entries.iter().take(k).map(|e| e.index).collect();
        idx.sort_unstable();
        idx
    }
}

pub fn rank_features(data: &Dataset) -> Result<FeatureRanking, LearnError> {
    let (totals, labels) = node_totals(data)?;
    if entropy_of(&totals) == 0.0 {
        return Err(LearnError::Degenerate("ranking needs both classes".into()));
    }
    let index = ColumnIndex::build(&data.rows, data.space.len());
    let opts = GainOptions::default();
    let scored: Vec<(RankEntry, Option<String>)> = index
        .cols
        .par_iter()
        .enumerate()
        .map(|(i, col)| {
            let name = &data.space.attributes[i].name;
            let (score, threshold, diag) = match score_column(col, &labels, totals, opts, name) {
                Ok(s) => (s.ratio, s.threshold, None),
                Err(e) => (0.0, None, Some(format!("{name}: {e}"))),
            };
            (
                RankEntry {
                    index: i,
                    name: name.clone(),
                    score,
                    threshold,
                },
                diag,
            )
        })
        .collect();
    let mut entries = Vec::with_capacity(scored.len());
    let mut diagnostics = Vec::new();
    for (e, d) in scored {
        entries.push(e);
        diagnostics.extend(d);
    }
    entries.sort_by_key(|e| (std::cmp::Reverse(tie_key(e.score)), e.index));
    Ok(FeatureRanking { entries, diagnostics })
}

/// The space restricted to the `k` best-ranked attributes, in original
/// order, and their indices in the original space.
pub fn select_top_k(
    ranking: &FeatureRanking,
    space: &FeatureSpace,
    k: usize,
) -> Result<(FeatureSpace, Vec<usize>), LearnError> {
    if k == 0 || k > ranking.len() {
        return Err(LearnError::Argument(format!(
            "k = {k} is outside 1..={}",
            ranking.len()
        )));
    }
    if ranking.len() != space.len() {
        return Err(LearnError::Argument(format!(
            "ranking covers {} attributes, space has {}",
            ranking.len(),
            space.len()
        )));
    }
    let idx = ranking.top_indices(k);
    Ok((space.restrict(&idx), idx))
}
