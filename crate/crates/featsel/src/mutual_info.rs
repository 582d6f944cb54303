//! Histogram entropy and mutual information between features and the class
//! label, plus the max-normalized counter scores.
//!
//! Continuous features are discretized into equal-width bins (default 10).
//! All entropies are base 2; the normalization in the counter score cancels
//! the base anyway.

use std::collections::BTreeMap;

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Equal-width histogram over a value range. Values outside the range clamp
/// to the extreme bins.
#[derive(Debug, Clone)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn from_values(values: &[f64], n_bins: usize) -> Result<Self> {
        let bins = discretize(values, n_bins)?;
        let mut counts = vec![0u64; n_bins];
        for b in bins {
            counts[b] += 1;
        }
        let (min, max) = min_max(values);
        let width = (max - min) / n_bins as f64;
        let edges = (0..=n_bins).map(|i| min + width * i as f64).collect();
        Ok(Self { edges, counts })
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
    }
    (min, max)
}

/// Map values to equal-width bin indexes spanning [min, max]. A constant
/// vector maps everything to bin 0; the maximum lands in the last bin.
pub fn discretize(values: &[f64], n_bins: usize) -> Result<Vec<usize>> {
    if n_bins < 2 {
        return Err(Error::TooFewBins(n_bins));
    }
    if values.is_empty() {
        return Err(Error::EmptyRows);
    }
    let (min, max) = min_max(values);
    if min == max {
        return Ok(vec![0; values.len()]);
    }
    let width = (max - min) / n_bins as f64;
    Ok(values
        .iter()
        .map(|&v| {
            let b = ((v - min) / width).floor() as isize;
            b.clamp(0, n_bins as isize - 1) as usize
        })
        .collect())
}

/// Base-2 entropy of an empirical count distribution.
pub fn entropy(counts: &[u64]) -> Result<f64> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::ZeroCounts);
    }
    let total = total as f64;
    let mut h = 0.0;
    for &c in counts {
        if c > 0 {
            let p = c as f64 / total;
            h -= p * p.log2();
        }
    }
    Ok(h)
}

/// Mutual information `IG = H(X) - H(X|Y)` between the discretized feature X
/// and the class label Y, in bits. Clamped at 0.
pub fn mutual_information(feature: &[f64], labels: &[usize], n_bins: usize) -> Result<f64> {
    if feature.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: feature.len(),
            right: labels.len(),
        });
    }
    if feature.len() < 2 {
        return Err(Error::InvalidDataset("need at least 2 samples".into()));
    }
    let bins = discretize(feature, n_bins)?;
    let n_classes = labels.iter().copied().max().unwrap() + 1;

    let mut x_counts = vec![0u64; n_bins];
    let mut joint = vec![vec![0u64; n_bins]; n_classes];
    for (&b, &y) in bins.iter().zip(labels) {
        x_counts[b] += 1;
        joint[y][b] += 1;
    }

    let n = feature.len() as f64;
    let h_x = entropy(&x_counts)?;
    let mut h_x_given_y = 0.0;
    for class_counts in &joint {
        let class_total: u64 = class_counts.iter().sum();
        if class_total > 0 {
            h_x_given_y += class_total as f64 / n * entropy(class_counts)?;
        }
    }
    let ig = h_x - h_x_given_y;
    if ig < 0.0 {
        debug_assert!(ig > -1e-12);
        return Ok(0.0);
    }
    Ok(ig)
}

/// Per-feature mutual information with the class, keyed by permanent id.
pub fn feature_information(
    dataset: &Dataset,
    ids: &[usize],
    n_bins: usize,
) -> Result<BTreeMap<usize, f64>> {
    let mut out = BTreeMap::new();
    for &id in ids {
        if id >= dataset.n_features() {
            return Err(Error::UnknownFeatureId(id));
        }
        let col = dataset.column(id);
        out.insert(id, mutual_information(&col, dataset.labels(), n_bins)?);
    }
    Ok(out)
}

/// Normalize a map of information gains by its maximum.
///
/// If every gain is 0 all scores are 0 rather than NaN.
pub fn normalize_information(gains: &BTreeMap<usize, f64>) -> BTreeMap<usize, f64> {
    let max = gains.values().copied().fold(0.0f64, f64::max);
    gains
        .iter()
        .map(|(&id, &g)| (id, if max > 0.0 { g / max } else { 0.0 }))
        .collect()
}

/// Max-normalized counter scores `I_f` for the remaining features.
pub fn counter_scores(
    dataset: &Dataset,
    remaining_ids: &[usize],
    n_bins: usize,
) -> Result<BTreeMap<usize, f64>> {
    if remaining_ids.is_empty() {
        return Err(Error::EmptyFeatureIds);
    }
    Ok(normalize_information(&feature_information(
        dataset,
        remaining_ids,
        n_bins,
    )?))
}
