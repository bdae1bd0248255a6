//! Threshold search over one numeric attribute.

use crate::corpus::Label;
use crate::features::FeatureVector;

/// Per-attribute non-zero `(row, value)` pairs sorted by value, then row.
#[derive(Clone, Debug)]
pub(crate) struct ColumnIndex {
    pub cols: Vec<Vec<(u32, f64)>>,
}

impl ColumnIndex {
    pub fn build(rows: &[FeatureVector], n_attrs: usize) -> ColumnIndex {
        let mut cols: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n_attrs];
        for (r, row) in rows.iter().enumerate() {
            for (a, x) in row.values.nonzero() {
                cols[a].push((r as u32, x));
            }
        }
        for c in &mut cols {
            c.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        }
        ColumnIndex { cols }
    }
}

/// Scores closer than this are ties; ties go to the earlier candidate.
pub(crate) const TIE_EPS: f64 = 1e-12;

pub(crate) fn entropy_of(counts: &[f64; 2]) -> f64 {
    let n = counts[0] + counts[1];
    if n <= 0.0 {
        return 0.0;
    }
    counts
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / n;
            -p * p.log2()
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct SplitEval {
    pub threshold: f64,
    /// Gain at the chosen threshold before the candidate-count correction.
    pub raw_gain: f64,
    pub gain: f64,
    pub split_info: f64,
    pub ratio: f64,
    /// Number of admissible thresholds.
    pub candidates: usize,
}

pub(crate) enum Scan {
    /// Fewer than two distinct values among the node's instances.
    Constant,
    /// Distinct values exist but no threshold leaves `min_leaf` on each side.
    NoAdmissible,
    Found(SplitEval),
}

/// Best threshold for one attribute at a node. `w[row]` is the row's
/// multiplicity in the node (0 = absent); `totals` the node's class
/// weights. The threshold maximizing uncorrected gain wins, the lowest on
/// ties; the gain is then reduced by `log2(candidates) / N` when
/// `correction` is set.
pub(crate) fn scan_attribute(
    col: &[(u32, f64)],
    labels: &[Label],
    w: &[f64],
    totals: [f64; 2],
    min_leaf: f64,
    correction: bool,
) -> Scan {
    let n = totals[0] + totals[1];
    let mut groups: Vec<(f64, [f64; 2])> = Vec::new();
    let mut nonzero = [0.0; 2];
    let mut zero_placed = false;
    let push = |groups: &mut Vec<(f64, [f64; 2])>, v: f64, c: [f64; 2]| match groups.last_mut() {
        Some((last, acc)) if *last == v => {
            acc[0] += c[0];
            acc[1] += c[1];
        }
        _ => groups.push((v, c)),
    };
    for &(r, v) in col {
        let wr = w[r as usize];
        if wr <= 0.0 {
            continue;
        }
        if !zero_placed && v > 0.0 {
            zero_placed = true;
            groups.push((0.0, [0.0; 2]));
        }
        let mut c = [0.0; 2];
        c[labels[r as usize].index()] = wr;
        nonzero[0] += c[0];
        nonzero[1] += c[1];
        push(&mut groups, v, c);
    }
    if !zero_placed {
        groups.push((0.0, [0.0; 2]));
    }
    let zero = [totals[0] - nonzero[0], totals[1] - nonzero[1]];
    if let Some(g) = groups.iter_mut().find(|g| g.0 == 0.0 && g.1 == [0.0; 2]) {
        g.1 = zero;
    }
    groups.retain(|g| g.1[0] + g.1[1] > 0.0);
    if groups.len() < 2 {
        return Scan::Constant;
    }

    let h = entropy_of(&totals);
    let mut left = [0.0; 2];
    let mut best: Option<(f64, usize, [f64; 2])> = None;
    let mut candidates = 0usize;
    for (i, (_, counts)) in groups[..groups.len() - 1].iter().enumerate() {
        left[0] += counts[0];
        left[1] += counts[1];
        let ln = left[0] + left[1];
        let right = [totals[0] - left[0], totals[1] - left[1]];
        let rn = n - ln;
        if ln < min_leaf || rn < min_leaf {
            continue;
        }
        candidates += 1;
        let gain = h - (ln / n) * entropy_of(&left) - (rn / n) * entropy_of(&right);
        if best.is_none_or(|b| gain > b.0 + TIE_EPS) {
            best = Some((gain, i, left));
        }
    }
    let Some((raw_gain, i, left)) = best else {
        return Scan::NoAdmissible;
    };
    let (lo, hi) = (groups[i].0, groups[i + 1].0);
    let mut threshold = lo + (hi - lo) / 2.0;
    if threshold >= hi || !threshold.is_finite() {
        threshold = lo;
    }
    let gain = if correction {
        raw_gain - (candidates as f64).log2() / n
    } else {
        raw_gain
    };
    let ln = left[0] + left[1];
    let split_info = entropy_of(&[ln, n - ln]);
    let ratio = if gain > 0.0 && split_info > 0.0 {
        gain / split_info
    } else {
        0.0
    };
    Scan::Found(SplitEval {
        threshold,
        raw_gain,
        gain,
        split_info,
        ratio,
        candidates,
    })
}
