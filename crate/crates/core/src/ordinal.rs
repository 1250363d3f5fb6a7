//! Ordinal methods working directly on term indices: the symbolic
//! order-weighted recursion and its rough-set variant whose weights come from
//! the indiscernibility classes of the preferences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linguistic::TermSet;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// `round(x) = floor(x + 0.5)`, half-up for negative arguments too.
pub fn round_half_up(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// Numeric weights in `[0, 1]` summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericWeights(Vec<f64>);

impl NumericWeights {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(w) = entries.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, expected 1")));
        }
        Ok(NumericWeights(entries))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        NumericWeights::new(vec![1.0 / n as f64; n])
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }
}

/// Preferences in non-increasing index order with their weights attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SortedPreferences {
    indices: Vec<usize>,
    weights: Vec<f64>,
}

impl SortedPreferences {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Stable descending sort by index; weights travel with their preference.
pub fn sort_preferences(prefs: &[usize], weights: &NumericWeights) -> Result<SortedPreferences> {
    if prefs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if prefs.len() != weights.entries().len() {
        return Err(Error::LengthMismatch {
            left: prefs.len(),
            right: weights.entries().len(),
        });
    }
    let mut pairs: Vec<(usize, f64)> = prefs
        .iter()
        .copied()
        .zip(weights.entries().iter().copied())
        .collect();
    pairs.sort_by_key(|p| std::cmp::Reverse(p.0));
    let (indices, weights) = pairs.into_iter().unzip();
    Ok(SortedPreferences { indices, weights })
}

/// Index recommended for a two-term combination.
///
/// `min{g, I_low + round((w_high - w_low + 1) / 2 * (I_high - I_low))}`; the cap
/// is the largest term index `g`.
pub fn aggregate_pair(i_high: usize, i_low: usize, w_high: f64, w_low: f64, g: usize) -> usize {
    debug_assert!(i_high >= i_low);
    let factor = (w_high - w_low + 1.0) / 2.0;
    let shift = round_half_up(factor * (i_high as f64 - i_low as f64));
    let idx = (i_low as f64 + shift).max(0.0) as usize;
    idx.min(g)
}

/// Renormalises the tail weights; a zero-mass tail falls back to equal weights.
pub(crate) fn renormalise_tail(tail: &[f64]) -> Vec<f64> {
    let mass: f64 = tail.iter().sum();
    if mass > 0.0 {
        tail.iter().map(|w| w / mass).collect()
    } else {
        vec![1.0 / tail.len() as f64; tail.len()]
    }
}

/// Order-weighted aggregation of sorted preferences.
///
/// The head term (weight `w_1`) is combined with the aggregate of the tail
/// (weight `1 - w_1`), the tail's weights being renormalised at every depth.
/// Evaluated as a right fold; the renormalised weights are computed front to
/// back exactly as the recursive definition would.
pub fn smcm_aggregate(sorted: &SortedPreferences, ts: &TermSet) -> Result<usize> {
    let idx = &sorted.indices;
    let n = idx.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n != sorted.weights.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: sorted.weights.len(),
        });
    }
    for &i in idx {
        ts.check_index(i)?;
    }
    if idx.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::validation("preferences", "must be sorted in descending order"));
    }
    let g = ts.max_index();
    if n == 1 {
        return Ok(idx[0]);
    }

    let mut heads = Vec::with_capacity(n - 2);
    let mut level = sorted.weights.clone();
    while level.len() > 2 {
        heads.push(level[0]);
        level = renormalise_tail(&level[1..]);
    }
    let mut acc = aggregate_pair(idx[n - 2], idx[n - 1], level[0], level[1], g);
    for (k, &w) in heads.iter().enumerate().rev() {
        acc = aggregate_pair(idx[k], acc, w, 1.0 - w, g);
    }
    Ok(acc)
}

/// Weighted ordinal aggregation of unsorted preferences.
pub fn smcm_run(prefs: &[usize], weights: &NumericWeights, ts: &TermSet) -> Result<usize> {
    smcm_aggregate(&sort_preferences(prefs, weights)?, ts)
}

/// Indiscernibility classes `(term index, count)` in ascending index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceClasses {
    classes: Vec<(usize, usize)>,
}

impl EquivalenceClasses {
    pub fn classes(&self) -> &[(usize, usize)] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.1).sum()
    }

    fn cardinality_of(&self, index: usize) -> Option<usize> {
        self.classes
            .binary_search_by_key(&index, |c| c.0)
            .ok()
            .map(|k| self.classes[k].1)
    }
}

pub fn rscm_partition(prefs: &[usize]) -> Result<EquivalenceClasses> {
    if prefs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut counts = BTreeMap::new();
    for &p in prefs {
        *counts.entry(p).or_insert(0usize) += 1;
    }
    Ok(EquivalenceClasses {
        classes: counts.into_iter().collect(),
    })
}

/// Each preference gets `1 / (n |C|)`, aligned with the order of `prefs`.
pub fn rscm_weights(classes: &EquivalenceClasses, prefs: &[usize]) -> Result<NumericWeights> {
    let n = classes.len() as f64;
    let weights = prefs
        .iter()
        .map(|&p| {
            classes
                .cardinality_of(p)
                .map(|c| 1.0 / (n * c as f64))
                .ok_or_else(|| Error::validation("preferences", format!("index {p} not in any class")))
        })
        .collect::<Result<Vec<_>>>()?;
    NumericWeights::new(weights)
}

pub fn rscm_aggregate(prefs: &[usize], ts: &TermSet) -> Result<usize> {
    let classes = rscm_partition(prefs)?;
    let weights = rscm_weights(&classes, prefs)?;
    smcm_run(prefs, &weights, ts)
}
