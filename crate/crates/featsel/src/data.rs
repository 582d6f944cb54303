//! Dataset representation, feature identity tracking and standardization.
//!
//! Every feature keeps a permanent id (its original column index) that
//! survives any sequence of projections, so results are always reported in
//! terms of the original columns.

use crate::error::{Error, Result};

/// Sample-major numeric matrix with class labels and permanent feature ids.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct Dataset {
    values: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
    labels: Vec<usize>,
    n_classes: usize,
}

impl Dataset {
    /// Build a dataset from sample rows and dense integer labels (0..K-1).
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidDataset("no sample rows".into()));
        }
        let n_cols = rows[0].len();
        if n_cols == 0 {
            return Err(Error::InvalidDataset("rows have no features".into()));
        }
        if labels.len() != rows.len() {
            return Err(Error::LengthMismatch {
                left: rows.len(),
                right: labels.len(),
            });
        }
        let mut values = Vec::with_capacity(rows.len() * n_cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::InvalidDataset(format!(
                    "row {i} has {} values, expected {n_cols}",
                    row.len()
                )));
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::InvalidDataset(format!(
                        "non-finite value in row {i}"
                    )));
                }
                values.push(v);
            }
        }
        let n_classes = labels.iter().copied().max().unwrap() + 1;
        if n_classes < 2 {
            return Err(Error::InvalidDataset("fewer than 2 classes".into()));
        }
        let mut counts = vec![0usize; n_classes];
        for &l in &labels {
            counts[l] += 1;
        }
        if let Some(c) = counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidDataset(format!("class {c} has no samples")));
        }
        Ok(Self {
            values,
            n_rows: rows.len(),
            n_cols,
            labels,
            n_classes,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.n_rows
    }

    pub fn n_features(&self) -> usize {
        self.n_cols
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    /// Permanent feature ids, i.e. the original column range.
    pub fn feature_ids(&self) -> Vec<usize> {
        (0..self.n_cols).collect()
    }

    pub fn value(&self, row: usize, feature_id: usize) -> f64 {
        self.values[row * self.n_cols + feature_id]
    }

    pub fn label(&self, row: usize) -> usize {
        self.labels[row]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Full row in column order.
    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.n_cols..(row + 1) * self.n_cols]
    }

    /// One feature column in row order.
    pub fn column(&self, feature_id: usize) -> Vec<f64> {
        (0..self.n_rows).map(|r| self.value(r, feature_id)).collect()
    }

    /// View over every column.
    pub fn full_view(&self) -> FeatureSubsetView<'_> {
        FeatureSubsetView {
            source: self,
            active_ids: self.feature_ids(),
        }
    }
}

/// Ordered projection of a dataset onto a subset of its feature ids.
#[derive(Debug, Clone)]
pub struct FeatureSubsetView<'a> {
    source: &'a Dataset,
    active_ids: Vec<usize>,
}

/// Materialize the view described by `ids`; column `p` of the view is the
/// source column `ids[p]`.
pub fn project<'a>(dataset: &'a Dataset, ids: &[usize]) -> Result<FeatureSubsetView<'a>> {
    if ids.is_empty() {
        return Err(Error::EmptyFeatureIds);
    }
    let mut seen = vec![false; dataset.n_features()];
    for &id in ids {
        if id >= dataset.n_features() {
            return Err(Error::UnknownFeatureId(id));
        }
        if seen[id] {
            return Err(Error::DuplicateFeatureId(id));
        }
        seen[id] = true;
    }
    Ok(FeatureSubsetView {
        source: dataset,
        active_ids: ids.to_vec(),
    })
}

impl<'a> FeatureSubsetView<'a> {
    pub fn source(&self) -> &'a Dataset {
        self.source
    }

    pub fn n_samples(&self) -> usize {
        self.source.n_rows
    }

    pub fn n_active(&self) -> usize {
        self.active_ids.len()
    }

    pub fn active_ids(&self) -> &[usize] {
        &self.active_ids
    }

    /// Permanent id behind view column `pos`.
    pub fn feature_id_at(&self, pos: usize) -> usize {
        self.active_ids[pos]
    }

    pub fn value(&self, row: usize, pos: usize) -> f64 {
        self.source.value(row, self.active_ids[pos])
    }

    pub fn label(&self, row: usize) -> usize {
        self.source.label(row)
    }
}

/// Per-feature mean/stdev transform fitted on training rows only.
///
/// Uses the population (divide-by-n) standard deviation. Constant features
/// (stdev 0) transform to 0.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Standardizer {
    means: Vec<f64>,
    stdevs: Vec<f64>,
}

/// Fit a standardizer over exactly the given rows of the view.
pub fn fit_standardizer(view: &FeatureSubsetView<'_>, row_indices: &[usize]) -> Result<Standardizer> {
    if row_indices.is_empty() {
        return Err(Error::EmptyRows);
    }
    let d = view.n_active();
    let n = row_indices.len() as f64;
    let mut means = vec![0.0; d];
    let mut stdevs = vec![0.0; d];
    for p in 0..d {
        let mut sum = 0.0;
        for &r in row_indices {
            sum += view.value(r, p);
        }
        let mean = sum / n;
        let mut sq = 0.0;
        for &r in row_indices {
            let dv = view.value(r, p) - mean;
            sq += dv * dv;
        }
        means[p] = mean;
        stdevs[p] = (sq / n).sqrt();
    }
    Ok(Standardizer { means, stdevs })
}

impl Standardizer {
    pub fn n_features(&self) -> usize {
        self.means.len()
    }

    pub fn transform_value(&self, pos: usize, value: f64) -> f64 {
        let s = self.stdevs[pos];
        if s == 0.0 {
            0.0
        } else {
            (value - self.means[pos]) / s
        }
    }

    pub fn transform_row(&self, view: &FeatureSubsetView<'_>, row: usize) -> Vec<f64> {
        (0..self.means.len())
            .map(|p| self.transform_value(p, view.value(row, p)))
            .collect()
    }
}
