use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::split::ColumnIndex;
use super::tree::{grow_tree, AttrChoice, DecisionTree, TreeParams};
use super::{check_space, Dataset, LearnError};
use crate::corpus::Label;
use crate::features::FeatureVector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForestParams {
    pub num_trees: usize,
    /// Attributes evaluated per split; `None` means `floor(log2 M) + 1`.
    pub features_per_split: Option<usize>,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            num_trees: 10,
            features_per_split: None,
            bootstrap: true,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub trees: Vec<DecisionTree>,
    pub params: ForestParams,
    /// Resolved attributes per split.
    pub features_per_split: usize,
    /// RNG seed each tree was grown from.
    pub tree_seeds: Vec<u64>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of tree `index` in a forest seeded with `seed`.
pub fn tree_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

fn default_k(m: usize) -> usize {
    (m as f64).log2().floor() as usize + 1
}

/// Trains `num_trees` unpruned trees (min_leaf 1), each on its own
/// bootstrap sample with randomized attribute evaluation. Trees are grown
/// in parallel; each consumes only its own RNG, so the result does not
/// depend on the thread count.
pub fn train_forest(data: &Dataset, params: ForestParams) -> Result<Forest, LearnError> {
    if params.num_trees == 0 {
        return Err(LearnError::Argument("num_trees must be at least 1".into()));
    }
    if data.is_empty() {
        return Err(LearnError::Argument("cannot train on an empty dataset".into()));
    }
    let m = data.space.len();
    if m == 0 {
        return Err(LearnError::Argument("feature space is empty".into()));
    }
    let k = params.features_per_split.unwrap_or_else(|| default_k(m));
    if k == 0 || k > m {
        return Err(LearnError::Argument(format!("features_per_split {k} is outside 1..={m}")));
    }
    let labels = data.labels()?;
    let index = ColumnIndex::build(&data.rows, m);
    let tree_params = TreeParams {
        min_leaf: 1,
        prune: false,
        lenient: true,
        ..TreeParams::default()
    };
    let n = data.len();
    let seeds: Vec<u64> = (0..params.num_trees).map(|i| tree_seed(params.seed, i)).collect();
    let trees = seeds
        .par_iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let weights = if params.bootstrap {
                let mut w = vec![0.0; n];
                for _ in 0..n {
                    w[rng.gen_range(0..n)] += 1.0;
                }
                w
            } else {
                vec![1.0; n]
            };
            grow_tree(data, &labels, &index, weights, tree_params, AttrChoice::Random { k, rng: Box::new(rng) })
        })
        .collect();
    Ok(Forest {
        trees,
        params,
        features_per_split: k,
        tree_seeds: seeds,
    })
}

impl Forest {
    /// Unweighted majority vote; a tied vote is AGREEMENT.
    pub fn predict(&self, v: &FeatureVector) -> Result<Label, LearnError> {
        if let Some(t) = self.trees.first() {
            check_space(t.n_attributes, v)?;
        }
        let mut votes = [0usize; 2];
        for t in &self.trees {
            votes[t.predict(v)?.label.index()] += 1;
        }
        Ok(if votes[1] > votes[0] {
            Label::Disagreement
        } else {
            Label::Agreement
        })
    }
}

pub fn predict_forest(forest: &Forest, v: &FeatureVector) -> Result<Label, LearnError> {
    forest.predict(v)
}
