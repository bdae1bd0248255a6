//! Exhaustive reference implementations for small dense datasets. They
//! recount every candidate split from scratch and share no code with the
//! library.
#![allow(dead_code)]

use stancecue::corpus::Label;
use stancecue::features::{AttrKind, Attribute, FeatureGroup, FeatureOptions, FeatureSpace, FeatureValues, FeatureVector};
use stancecue::learn::Dataset;

pub const TIE: f64 = 1e-12;

pub fn dataset(rows: &[Vec<f64>], labels: &[Label]) -> Dataset {
    let m = rows.first().map_or(0, Vec::len);
    let space = FeatureSpace {
        attributes: (0..m)
            .map(|i| Attribute {
                name: format!("duration:x{i}"),
                group: FeatureGroup::Duration,
                kind: AttrKind::Length,
            })
            .collect(),
        ngram_vocab: None,
        options: FeatureOptions::default(),
        cue_labels: Vec::new(),
    };
    let vectors = rows
        .iter()
        .zip(labels)
        .map(|(r, l)| FeatureVector {
            values: FeatureValues::Dense(r.clone()),
            label: Some(*l),
        })
        .collect();
    let ids = (0..rows.len()).map(|i| format!("r{i}")).collect();
    Dataset::new(space, vectors, ids).unwrap()
}

pub fn entropy(counts: &[f64]) -> f64 {
    let n: f64 = counts.iter().sum();
    let mut h = 0.0;
    for &c in counts {
        if c > 0.0 {
            h -= (c / n) * (c / n).log2();
        }
    }
    h
}

fn counts(labels: &[Label], pick: impl Fn(usize) -> bool) -> [f64; 2] {
    let mut c = [0.0, 0.0];
    for (i, l) in labels.iter().enumerate() {
        if pick(i) {
            match l {
                Label::Agreement => c[0] += 1.0,
                Label::Disagreement => c[1] += 1.0,
            }
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleSplit {
    pub threshold: f64,
    pub gain: f64,
    pub ratio: f64,
}

/// Best threshold on column `a` over the rows in `members`, considering
/// only thresholds leaving at least `min_leaf` rows on each side. The
/// threshold with the largest uncorrected gain wins (lowest on ties); the
/// corrected gain subtracts log2(#candidates)/N.
pub fn best_split(rows: &[Vec<f64>], labels: &[Label], members: &[usize], a: usize, min_leaf: usize) -> Option<OracleSplit> {
    let mut vals: Vec<f64> = members.iter().map(|&i| rows[i][a]).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    vals.dedup();
    let n = members.len() as f64;
    let sub_labels: Vec<Label> = members.iter().map(|&i| labels[i]).collect();
    let h = entropy(&counts(&sub_labels, |_| true));
    let mut cands = Vec::new();
    for w in vals.windows(2) {
        let t = (w[0] + w[1]) / 2.0;
        let left: Vec<usize> = (0..members.len()).filter(|&j| rows[members[j]][a] <= t).collect();
        let ln = left.len();
        let rn = members.len() - ln;
        if ln < min_leaf || rn < min_leaf {
            continue;
        }
        let lc = counts(&sub_labels, |j| rows[members[j]][a] <= t);
        let rc = counts(&sub_labels, |j| rows[members[j]][a] > t);
        let gain = h - ln as f64 / n * entropy(&lc) - rn as f64 / n * entropy(&rc);
        cands.push((t, gain, ln as f64));
    }
    let best_gain = cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let &(t, g, ln) = cands.iter().find(|c| c.1 >= best_gain - TIE)?;
    let gain = g - (cands.len() as f64).log2() / n;
    let si = entropy(&[ln, n - ln]);
    let ratio = if gain > 0.0 && si > 0.0 { gain / si } else { 0.0 };
    Some(OracleSplit { threshold: t, gain, ratio })
}

pub fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Attribute order by descending oracle ratio, ties by index.
pub fn ranking(rows: &[Vec<f64>], labels: &[Label]) -> Vec<(usize, f64)> {
    let m = rows[0].len();
    let mut scored: Vec<(usize, f64)> = (0..m)
        .map(|a| (a, best_split(rows, labels, &all(rows.len()), a, 1).map_or(0.0, |s| s.ratio)))
        .collect();
    scored.sort_by(|x, y| {
        if (x.1 - y.1).abs() <= TIE {
            x.0.cmp(&y.0)
        } else {
            y.1.partial_cmp(&x.1).unwrap()
        }
    });
    scored
}

/// Root split of an unpruned tree: `None` when the root is a leaf.
pub fn root_split(rows: &[Vec<f64>], labels: &[Label], min_leaf: usize) -> Option<(usize, f64)> {
    let c = counts(labels, |_| true);
    if c[0] == 0.0 || c[1] == 0.0 || (rows.len() as f64) < 2.0 * min_leaf as f64 {
        return None;
    }
    let m = rows[0].len();
    let mut best: Option<(usize, OracleSplit)> = None;
    for a in 0..m {
        let Some(s) = best_split(rows, labels, &all(rows.len()), a, min_leaf) else {
            continue;
        };
        if s.ratio <= 0.0 {
            continue;
        }
        if best.is_none_or(|(_, b)| s.ratio > b.ratio + TIE) {
            best = Some((a, s));
        }
    }
    best.map(|(a, s)| (a, s.threshold))
}
