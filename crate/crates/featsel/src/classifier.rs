//! Deterministic linear SVM and unweighted-average-recall scoring.
//!
//! Training minimizes the L2-regularized hinge loss with seeded stochastic
//! subgradient descent (Pegasos-style schedule `rate_t = 1/(lambda*t)` with
//! `lambda = 1/(C*n)`), so identical inputs and seed give bitwise-identical
//! weights.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{fit_standardizer, FeatureSubsetView, Standardizer};
use crate::error::{Error, Result};
use crate::rng;

/// Training hyperparameters. The schedule is fully determined by `c`,
/// `epochs` and `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Hinge-loss weight C (> 0); the ridge term is `1/(2*C*n) * ||w||^2`.
    pub c: f64,
    /// Fixed number of passes over the training rows.
    pub epochs: usize,
    /// Seed for the per-epoch sample order.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            epochs: 30,
            seed: 0,
        }
    }
}

/// Linear decision function over a fixed feature id subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub active_ids: Vec<usize>,
    pub standardizer: Standardizer,
}

/// Per-class correct/wrong prediction tallies feeding the UAR.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub correct: Vec<u64>,
    pub wrong: Vec<u64>,
}

impl ConfusionCounts {
    pub fn new(n_classes: usize) -> Self {
        Self {
            correct: vec![0; n_classes],
            wrong: vec![0; n_classes],
        }
    }

    pub fn n_classes(&self) -> usize {
        self.correct.len()
    }

    pub fn record(&mut self, true_class: usize, predicted: usize) {
        if true_class == predicted {
            self.correct[true_class] += 1;
        } else {
            self.wrong[true_class] += 1;
        }
    }

    /// Elementwise addition; commutative and associative.
    pub fn merge(&mut self, other: &ConfusionCounts) {
        for (a, b) in self.correct.iter_mut().zip(&other.correct) {
            *a += b;
        }
        for (a, b) in self.wrong.iter_mut().zip(&other.wrong) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.correct.iter().sum::<u64>() + self.wrong.iter().sum::<u64>()
    }
}

/// Unweighted average recall: mean over classes of correct/(correct+wrong).
pub fn uar(counts: &ConfusionCounts) -> Result<f64> {
    let mut sum = 0.0;
    for class in 0..counts.n_classes() {
        let total = counts.correct[class] + counts.wrong[class];
        if total == 0 {
            return Err(Error::EmptyClass { class });
        }
        sum += counts.correct[class] as f64 / total as f64;
    }
    Ok(sum / counts.n_classes() as f64)
}

/// Train a binary linear SVM on the given rows of the view.
pub fn train(
    view: &FeatureSubsetView<'_>,
    row_indices: &[usize],
    config: &TrainConfig,
) -> Result<LinearModel> {
    if config.c <= 0.0 {
        return Err(Error::InvalidConfig("C must be positive".into()));
    }
    if config.epochs == 0 {
        return Err(Error::InvalidConfig("epochs must be >= 1".into()));
    }
    if view.source().n_classes() != 2 {
        return Err(Error::NotBinary(view.source().n_classes()));
    }
    if row_indices.is_empty() {
        return Err(Error::EmptyRows);
    }
    let has0 = row_indices.iter().any(|&r| view.label(r) == 0);
    let has1 = row_indices.iter().any(|&r| view.label(r) == 1);
    if !(has0 && has1) {
        return Err(Error::SingleClassTraining);
    }

    let standardizer = fit_standardizer(view, row_indices)?;
    let d = view.n_active();
    let n = row_indices.len();

    // Standardized rows with a trailing constant for the bias term.
    let xs: Vec<Vec<f64>> = row_indices
        .iter()
        .map(|&r| {
            let mut x = standardizer.transform_row(view, r);
            x.push(1.0);
            x
        })
        .collect();
    let ys: Vec<f64> = row_indices
        .iter()
        .map(|&r| if view.label(r) == 1 { 1.0 } else { -1.0 })
        .collect();

    let lambda = 1.0 / (config.c * n as f64);
    let radius = (1.0 / lambda).sqrt();
    let mut w = vec![0.0f64; d + 1];
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut t = 0u64;

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let margin = ys[i] * dot(&w, &xs[i]);
            let shrink = 1.0 - 1.0 / t as f64;
            for wj in w.iter_mut() {
                *wj *= shrink;
            }
            if margin < 1.0 {
                let step = eta * ys[i];
                for (wj, xj) in w.iter_mut().zip(&xs[i]) {
                    *wj += step * xj;
                }
            }
            // Projection onto the ball containing the optimum.
            let norm = dot(&w, &w).sqrt();
            if norm > radius {
                let scale = radius / norm;
                for wj in w.iter_mut() {
                    *wj *= scale;
                }
            }
        }
    }

    let bias = w.pop().unwrap();
    Ok(LinearModel {
        weights: w,
        bias,
        active_ids: view.active_ids().to_vec(),
        standardizer,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Regularized hinge objective of a model on the given rows, with the
/// model's own standardization applied.
pub fn hinge_objective(
    model: &LinearModel,
    view: &FeatureSubsetView<'_>,
    row_indices: &[usize],
    c: f64,
) -> f64 {
    let n = row_indices.len() as f64;
    let lambda = 1.0 / (c * n);
    let mut hinge = 0.0;
    for &r in row_indices {
        let x = model.standardizer.transform_row(view, r);
        let y = if view.label(r) == 1 { 1.0 } else { -1.0 };
        let m = y * (dot(&model.weights, &x) + model.bias);
        hinge += (1.0 - m).max(0.0);
    }
    let wnorm = dot(&model.weights, &model.weights) + model.bias * model.bias;
    lambda / 2.0 * wnorm + hinge / n
}

/// Raw decision value `w . x_standardized + b`.
pub fn decision_value(
    model: &LinearModel,
    view: &FeatureSubsetView<'_>,
    row: usize,
) -> Result<f64> {
    if view.active_ids() != model.active_ids.as_slice() {
        return Err(Error::FeatureIdMismatch);
    }
    let x = model.standardizer.transform_row(view, row);
    Ok(dot(&model.weights, &x) + model.bias)
}

/// Class 1 when the decision value is strictly positive, class 0 otherwise.
pub fn predict(model: &LinearModel, view: &FeatureSubsetView<'_>, row: usize) -> Result<usize> {
    Ok(if decision_value(model, view, row)? > 0.0 {
        1
    } else {
        0
    })
}

fn evaluate_rows(
    model: &LinearModel,
    view: &FeatureSubsetView<'_>,
    rows: &[usize],
    counts: &mut ConfusionCounts,
) -> Result<()> {
    for &r in rows {
        let p = predict(model, view, r)?;
        counts.record(view.label(r), p);
    }
    Ok(())
}

/// Stratified k-fold evaluation of the view's feature subset.
///
/// Rows are split into k stratified folds by a seeded shuffle; each fold is
/// held out once while a model (with a fresh standardizer) is trained on the
/// rest. Every row is evaluated exactly once.
pub fn kfold_confusion(
    view: &FeatureSubsetView<'_>,
    k: usize,
    config: &TrainConfig,
    seed: u64,
) -> Result<ConfusionCounts> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("k must be >= 2, got {k}")));
    }
    let n = view.n_samples();
    let n_classes = view.source().n_classes();
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for r in 0..n {
        by_class[view.label(r)].push(r);
    }
    for (class, rows) in by_class.iter().enumerate() {
        if rows.len() < k {
            return Err(Error::TooFewSamplesForFolds {
                class,
                count: rows.len(),
                k,
            });
        }
    }

    let mut rng = rng::stream(seed, "folds");
    let mut fold_of = vec![0usize; n];
    for rows in &mut by_class {
        rows.shuffle(&mut rng);
        for (j, &r) in rows.iter().enumerate() {
            fold_of[r] = j % k;
        }
    }

    let mut merged = ConfusionCounts::new(n_classes);
    for fold in 0..k {
        let train_rows: Vec<usize> = (0..n).filter(|&r| fold_of[r] != fold).collect();
        let val_rows: Vec<usize> = (0..n).filter(|&r| fold_of[r] == fold).collect();
        let fold_cfg = TrainConfig {
            seed: rng::mix(rng::mix(seed, config.seed), fold as u64),
            ..config.clone()
        };
        let model = train(view, &train_rows, &fold_cfg)?;
        evaluate_rows(&model, view, &val_rows, &mut merged)?;
    }
    Ok(merged)
}

/// Deterministic stratified 50/50 split: within each class, rows alternate
/// train/validation in dataset order.
pub fn fixed_split(view: &FeatureSubsetView<'_>) -> (Vec<usize>, Vec<usize>) {
    let mut seen = vec![0usize; view.source().n_classes()];
    let mut train_rows = Vec::new();
    let mut val_rows = Vec::new();
    for r in 0..view.n_samples() {
        let c = view.label(r);
        if seen[c] % 2 == 0 {
            train_rows.push(r);
        } else {
            val_rows.push(r);
        }
        seen[c] += 1;
    }
    (train_rows, val_rows)
}

/// Evaluate the view's subset on the deterministic fixed split.
///
/// The training seed is derived from the config seed and the subset's ids,
/// so any caller evaluating the same ids gets the identical result.
pub fn fixed_split_confusion(
    view: &FeatureSubsetView<'_>,
    config: &TrainConfig,
) -> Result<ConfusionCounts> {
    let (train_rows, val_rows) = fixed_split(view);
    let cfg = TrainConfig {
        seed: rng::mix(config.seed, rng::hash_ids(view.active_ids())),
        ..config.clone()
    };
    let model = train(view, &train_rows, &cfg)?;
    let mut counts = ConfusionCounts::new(view.source().n_classes());
    evaluate_rows(&model, view, &val_rows, &mut counts)?;
    Ok(counts)
}
