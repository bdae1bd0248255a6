//! C4.5-style binary tree over numeric attributes with pessimistic
//! subtree-replacement pruning.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::split::{scan_attribute, ColumnIndex, Scan, TIE_EPS};
use super::{check_space, Dataset, LearnError};
use crate::corpus::Label;
use crate::features::FeatureVector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TreeParams {
    /// Pruning confidence factor in (0, 1].
    pub confidence: f64,
    pub min_leaf: usize,
    pub prune: bool,
    /// Return a single leaf for single-class data instead of failing.
    pub lenient: bool,
    /// Apply the `log2(candidates) / N` gain correction.
    pub correction: bool,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            confidence: 0.25,
            min_leaf: 2,
            prune: true,
            lenient: false,
            correction: true,
        }
    }
}

/// `dist` holds the training weight per class (AGREEMENT, DISAGREEMENT)
/// that reached the node; `class` is the node's majority.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum Node {
    Leaf {
        class: Label,
        dist: [f64; 2],
    },
    Split {
        attr: usize,
        threshold: f64,
        left: usize,
        right: usize,
        class: Label,
        dist: [f64; 2],
    },
}

impl Node {
    pub fn class(&self) -> Label {
        match self {
            Node::Leaf { class, .. } | Node::Split { class, .. } => *class,
        }
    }

    pub fn dist(&self) -> [f64; 2] {
        match self {
            Node::Leaf { dist, .. } | Node::Split { dist, .. } => *dist,
        }
    }
}

/// Nodes in pre-order; the root is `nodes[0]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<Node>,
    pub params: TreeParams,
    pub n_attributes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prediction {
    pub label: Label,
    /// Class weights of the leaf reached.
    pub dist: [f64; 2],
}

impl DecisionTree {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    pub fn depth(&self) -> usize {
        fn go(t: &DecisionTree, i: usize) -> usize {
            match &t.nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(t, *left).max(go(t, *right)),
            }
        }
        go(self, 0)
    }

    /// Attribute and threshold of the root split, if any.
    pub fn root_split(&self) -> Option<(usize, f64)> {
        match &self.nodes[0] {
            Node::Split { attr, threshold, .. } => Some((*attr, *threshold)),
            Node::Leaf { .. } => None,
        }
    }

    pub fn predict(&self, v: &FeatureVector) -> Result<Prediction, LearnError> {
        check_space(self.n_attributes, v)?;
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { class, dist } => {
                    return Ok(Prediction {
                        label: *class,
                        dist: *dist,
                    })
                }
                Node::Split {
                    attr,
                    threshold,
                    left,
                    right,
                    ..
                } => i = if v.get(*attr) <= *threshold { *left } else { *right },
            }
        }
    }
}

pub fn predict_tree(tree: &DecisionTree, v: &FeatureVector) -> Result<Prediction, LearnError> {
    tree.predict(v)
}

fn majority(dist: [f64; 2], fallback: Label) -> Label {
    if dist[0] > dist[1] {
        Label::Agreement
    } else if dist[1] > dist[0] {
        Label::Disagreement
    } else {
        fallback
    }
}

/// How a node picks the attributes it evaluates.
pub(crate) enum AttrChoice {
    All,
    /// Evaluate attributes in a random order until at least `k` have been
    /// evaluated and one of them has a positive score.
    Random { k: usize, rng: Box<ChaCha8Rng> },
}

pub(crate) struct Grower<'a> {
    pub labels: &'a [Label],
    pub rows: &'a [FeatureVector],
    pub index: &'a ColumnIndex,
    pub min_leaf: f64,
    pub correction: bool,
    pub choice: AttrChoice,
}

impl Grower<'_> {
    fn best_split(&mut self, w: &[f64], totals: [f64; 2]) -> Option<(usize, f64)> {
        let m = self.index.cols.len();
        let mut order: Vec<usize> = (0..m).collect();
        let k = match &mut self.choice {
            AttrChoice::All => m,
            AttrChoice::Random { k, rng } => {
                order.shuffle(rng);
                *k
            }
        };
        let mut best: Option<(f64, usize, f64)> = None;
        for (evaluated, &a) in order.iter().enumerate() {
            if evaluated >= k && best.is_some() {
                break;
            }
            let Scan::Found(s) = scan_attribute(&self.index.cols[a], self.labels, w, totals, self.min_leaf, self.correction)
            else {
                continue;
            };
            if s.ratio <= 0.0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((r, i, _)) => s.ratio > r + TIE_EPS || (s.ratio > r - TIE_EPS && a < i),
            };
            if better {
                best = Some((s.ratio, a, s.threshold));
            }
        }
        best.map(|(_, a, t)| (a, t))
    }

    /// Grows the subtree for the rows with positive weight in `w`
    /// (listed in `members`) and returns its root index.
    pub fn grow(&mut self, w: Vec<f64>, members: Vec<u32>, parent: Label, nodes: &mut Vec<Node>) -> usize {
        let mut dist = [0.0; 2];
        for &r in &members {
            dist[self.labels[r as usize].index()] += w[r as usize];
        }
        let class = majority(dist, parent);
        let idx = nodes.len();
        nodes.push(Node::Leaf { class, dist });
        let n = dist[0] + dist[1];
        if dist[0] == 0.0 || dist[1] == 0.0 || n < 2.0 * self.min_leaf {
            return idx;
        }
        let Some((attr, threshold)) = self.best_split(&w, dist) else {
            return idx;
        };
        let mut lw = vec![0.0; w.len()];
        let mut rw = vec![0.0; w.len()];
        let (mut lm, mut rm) = (Vec::new(), Vec::new());
        for &r in &members {
            if self.rows[r as usize].get(attr) <= threshold {
                lw[r as usize] = w[r as usize];
                lm.push(r);
            } else {
                rw[r as usize] = w[r as usize];
                rm.push(r);
            }
        }
        drop(w);
        let left = self.grow(lw, lm, class, nodes);
        let right = self.grow(rw, rm, class, nodes);
        nodes[idx] = Node::Split {
            attr,
            threshold,
            left,
            right,
            class,
            dist,
        };
        idx
    }
}

/// Upper-bound extra errors for `e` observed errors among `n` at
/// confidence `cf` (the C4.5 pessimistic estimate). Confidence levels of
/// 0.5 and above add nothing.
pub fn add_errors(n: f64, e: f64, cf: f64) -> f64 {
    if cf >= 0.5 || n <= 0.0 {
        return 0.0;
    }
    if e < 1.0 {
        let base = n * (1.0 - cf.powf(1.0 / n));
        if e == 0.0 {
            return base;
        }
        return base + e * (add_errors(n, 1.0, cf) - base);
    }
    if e + 0.5 >= n {
        return (n - e).max(0.0);
    }
    let z = Normal::standard().inverse_cdf(1.0 - cf);
    let f = (e + 0.5) / n;
    let r = (f + z * z / (2.0 * n) + z * (f / n - f * f / n + z * z / (4.0 * n * n)).sqrt()) / (1.0 + z * z / n);
    r * n - e
}

fn leaf_errors(dist: [f64; 2], cf: f64) -> f64 {
    let n = dist[0] + dist[1];
    let e = n - dist[0].max(dist[1]);
    e + add_errors(n, e, cf)
}

/// Replaces a subtree by a leaf when the leaf's estimated errors do not
/// exceed the subtree's by more than 0.1. Returns the estimate kept.
fn prune(nodes: &mut [Node], i: usize, cf: f64) -> f64 {
    let (left, right, class, dist) = match &nodes[i] {
        Node::Leaf { dist, .. } => return leaf_errors(*dist, cf),
        Node::Split {
            left,
            right,
            class,
            dist,
            ..
        } => (*left, *right, *class, *dist),
    };
    let subtree = prune(nodes, left, cf) + prune(nodes, right, cf);
    let as_leaf = leaf_errors(dist, cf);
    if as_leaf <= subtree + 0.1 {
        nodes[i] = Node::Leaf { class, dist };
        as_leaf
    } else {
        subtree
    }
}

/// Rebuilds the arena keeping only nodes reachable from the root.
fn compact(nodes: &[Node]) -> Vec<Node> {
    fn go(src: &[Node], i: usize, out: &mut Vec<Node>) -> usize {
        let idx = out.len();
        out.push(src[i].clone());
        if let Node::Split {
            attr,
            threshold,
            left,
            right,
            class,
            dist,
        } = &src[i]
        {
            let l = go(src, *left, out);
            let r = go(src, *right, out);
            out[idx] = Node::Split {
                attr: *attr,
                threshold: *threshold,
                left: l,
                right: r,
                class: *class,
                dist: *dist,
            };
        }
        idx
    }
    let mut out = Vec::new();
    if !nodes.is_empty() {
        go(nodes, 0, &mut out);
    }
    out
}

pub(crate) fn validate_params(p: &TreeParams) -> Result<(), LearnError> {
    if !(p.confidence > 0.0 && p.confidence <= 1.0) {
        return Err(LearnError::Argument(format!("confidence {} is outside (0, 1]", p.confidence)));
    }
    if p.min_leaf == 0 {
        return Err(LearnError::Argument("min_leaf must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn grow_tree(
    data: &Dataset,
    labels: &[Label],
    index: &ColumnIndex,
    weights: Vec<f64>,
    params: TreeParams,
    choice: AttrChoice,
) -> DecisionTree {
    let members: Vec<u32> = (0..weights.len() as u32).filter(|&r| weights[r as usize] > 0.0).collect();
    let mut grower = Grower {
        labels,
        rows: &data.rows,
        index,
        min_leaf: params.min_leaf as f64,
        correction: params.correction,
        choice,
    };
    let mut nodes = Vec::new();
    grower.grow(weights, members, Label::Agreement, &mut nodes);
    if params.prune {
        prune(&mut nodes, 0, params.confidence);
        nodes = compact(&nodes);
    }
    DecisionTree {
        nodes,
        params,
        n_attributes: data.space.len(),
    }
}

pub fn train_tree(data: &Dataset, params: TreeParams) -> Result<DecisionTree, LearnError> {
    validate_params(&params)?;
    if data.is_empty() {
        return Err(LearnError::Argument("cannot train on an empty dataset".into()));
    }
    let labels = data.labels()?;
    let counts = data.class_counts();
    if (counts[0] == 0 || counts[1] == 0) && !params.lenient {
        return Err(LearnError::Degenerate("training data has a single class".into()));
    }
    let index = ColumnIndex::build(&data.rows, data.space.len());
    Ok(grow_tree(data, &labels, &index, vec![1.0; data.len()], params, AttrChoice::All))
}
