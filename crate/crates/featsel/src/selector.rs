//! Backward-elimination search loop: random subset partitioning, relevance
//! accumulation, local/global stopping, counter-score injection and batched
//! least-significant-feature subtraction.
//!
//! Each *step* resets the relevance scores, runs *iterations* (one seeded
//! partition of the remaining features per iteration, every feature evaluated
//! exactly once) until the iteration UARs stabilize, then injects the
//! mutual-information counter score and removes the lowest-relevance batch.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{self, ConfusionCounts, TrainConfig};
use crate::data::{project, Dataset};
use crate::error::{Error, Result};
use crate::mutual_info;
use crate::rng;

/// How a candidate feature subset is scored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Evaluation {
    /// Stratified k-fold cross validation (default, k = 3).
    KFold { k: usize },
    /// One deterministic stratified 50/50 split; used for oracle
    /// cross-checks where bitwise reproducibility across callers matters.
    FixedSplit,
}

impl Default for Evaluation {
    fn default() -> Self {
        Evaluation::KFold { k: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectionConfig {
    /// Global stopping criterion: number of features to keep.
    pub target_count: usize,
    pub evaluation: Evaluation,
    /// Local threshold on the stdev of a step's iteration UARs.
    pub local_threshold: f64,
    /// Every feature gets at least this many evaluations per step.
    pub min_iterations_per_step: usize,
    /// Safety cap guaranteeing step termination under any threshold.
    pub max_iterations_per_step: usize,
    /// Fraction of the remaining features removed per step.
    pub removal_fraction: f64,
    /// Histogram bins for the mutual-information counter score.
    pub n_bins: usize,
    pub counter_score_enabled: bool,
    /// Override for the random subset size (default: round(sqrt(remaining))).
    /// A value >= the remaining count switches the iteration to exhaustive
    /// leave-one-out complements, which reduces the search to classical
    /// backward elimination.
    pub subset_size_override: Option<usize>,
    pub seed: u64,
    pub train: TrainConfig,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            target_count: 1,
            evaluation: Evaluation::default(),
            local_threshold: 0.6,
            min_iterations_per_step: 5,
            max_iterations_per_step: 50,
            removal_fraction: 0.05,
            n_bins: 10,
            counter_score_enabled: true,
            subset_size_override: None,
            seed: 0,
            train: TrainConfig::default(),
        }
    }
}

impl SelectionConfig {
    fn validate(&self, n_features: usize) -> Result<()> {
        if self.target_count == 0 {
            return Err(Error::InvalidConfig("target_count must be >= 1".into()));
        }
        if self.target_count >= n_features {
            return Err(Error::InvalidConfig(format!(
                "target_count {} must be below the feature count {n_features}",
                self.target_count
            )));
        }
        if self.min_iterations_per_step < 2 {
            return Err(Error::InvalidConfig(
                "min_iterations_per_step must be >= 2".into(),
            ));
        }
        if self.max_iterations_per_step < self.min_iterations_per_step {
            return Err(Error::InvalidConfig(
                "max_iterations_per_step below min_iterations_per_step".into(),
            ));
        }
        if !(self.removal_fraction > 0.0 && self.removal_fraction <= 1.0) {
            return Err(Error::InvalidConfig(
                "removal_fraction must be in (0, 1]".into(),
            ));
        }
        if !(self.local_threshold > 0.0) {
            return Err(Error::InvalidConfig(
                "local_threshold must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one step: iterations run, stopping statistics, counter-score
/// rate and the removed batch with its final relevance scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub iterations: usize,
    pub local_criterion: f64,
    /// UAR of the step's cumulated confusion counts (the baseline E).
    pub step_uar: f64,
    pub alpha: f64,
    pub removed: Vec<RemovedFeature>,
    pub remaining_after: usize,
    pub hit_iteration_cap: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemovedFeature {
    pub id: usize,
    pub relevance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub selected_ids: Vec<usize>,
    pub steps: Vec<StepRecord>,
    /// Total number of subset evaluations performed.
    pub evaluations: usize,
}

/// Size of a random subset: round(sqrt(remaining)), at least 1.
pub fn subset_size(n_remaining: usize) -> usize {
    ((n_remaining as f64).sqrt().round() as usize).max(1)
}

/// Seeded shuffle of the remaining ids chunked into subsets of `size`; the
/// final chunk may be smaller. Every id lands in exactly one chunk.
pub fn partition_subsets(
    remaining: &[usize],
    size: usize,
    rng: &mut impl rand::Rng,
) -> Vec<Vec<usize>> {
    let mut shuffled = remaining.to_vec();
    shuffled.shuffle(rng);
    shuffled.chunks(size.max(1)).map(|c| c.to_vec()).collect()
}

/// Population standard deviation of a step's iteration UARs.
pub fn local_criterion(step_scores: &[f64]) -> Result<f64> {
    if step_scores.len() < 2 {
        return Err(Error::TooFewScores);
    }
    let n = step_scores.len() as f64;
    let mean = step_scores.iter().sum::<f64>() / n;
    let var = step_scores.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / n;
    Ok(var.sqrt())
}

/// Number of features to subtract: `max(1, ceil(fraction * remaining))`,
/// clamped so the target is never overshot.
pub fn removal_count(n_remaining: usize, target: usize, fraction: f64) -> usize {
    let m = ((fraction * n_remaining as f64).ceil() as usize).max(1);
    m.min(n_remaining - target)
}

/// Remove the `m` lowest-relevance ids from `remaining`; ties go to the
/// smaller permanent id. Returns the removed ids with their scores.
pub fn select_lsf(
    remaining: &mut Vec<usize>,
    relevance: &BTreeMap<usize, f64>,
    m: usize,
) -> Result<Vec<RemovedFeature>> {
    if m >= remaining.len() {
        return Err(Error::InvalidConfig(format!(
            "cannot remove {m} of {} remaining features",
            remaining.len()
        )));
    }
    let mut ranked: Vec<(f64, usize)> = remaining.iter().map(|&id| (relevance[&id], id)).collect();
    ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let removed: Vec<RemovedFeature> = ranked[..m]
        .iter()
        .map(|&(relevance, id)| RemovedFeature { id, relevance })
        .collect();
    let drop: Vec<usize> = removed.iter().map(|r| r.id).collect();
    remaining.retain(|id| !drop.contains(id));
    Ok(removed)
}

/// Inject the counter score: `alpha = max(0, R_max) * remaining/full`, then
/// `R_f += alpha * I_f`. Returns alpha (0 when disabled).
pub fn apply_counter_score(
    relevance: &mut BTreeMap<usize, f64>,
    scores: &BTreeMap<usize, f64>,
    full_count: usize,
    enabled: bool,
) -> f64 {
    if !enabled {
        return 0.0;
    }
    let r_max = relevance.values().copied().fold(0.0f64, f64::max);
    let alpha = r_max * relevance.len() as f64 / full_count as f64;
    if alpha > 0.0 {
        for (id, r) in relevance.iter_mut() {
            *r += alpha * scores[id];
        }
    }
    alpha
}

/// Mutable search state for one selection run.
pub struct SelectionState {
    remaining: Vec<usize>,
    relevance: BTreeMap<usize, f64>,
    step_scores: Vec<f64>,
    cumulative: ConfusionCounts,
    partition_rng: rand_chacha::ChaCha8Rng,
    eval_rng: rand_chacha::ChaCha8Rng,
    evaluations: usize,
}

impl SelectionState {
    pub fn new(dataset: &Dataset, seed: u64) -> Self {
        Self {
            remaining: dataset.feature_ids(),
            relevance: BTreeMap::new(),
            step_scores: Vec::new(),
            cumulative: ConfusionCounts::new(dataset.n_classes()),
            partition_rng: rng::stream(seed, "partitions"),
            eval_rng: rng::stream(seed, "evaluations"),
            evaluations: 0,
        }
    }

    pub fn remaining_ids(&self) -> &[usize] {
        &self.remaining
    }

    pub fn relevance(&self) -> &BTreeMap<usize, f64> {
        &self.relevance
    }

    pub fn step_scores(&self) -> &[f64] {
        &self.step_scores
    }

    /// Reset the per-step bookkeeping: relevance to 0 for the remaining ids,
    /// iteration scores and cumulated counts to empty.
    pub fn begin_step(&mut self, n_classes: usize) {
        self.relevance = self.remaining.iter().map(|&id| (id, 0.0)).collect();
        self.step_scores.clear();
        self.cumulative = ConfusionCounts::new(n_classes);
    }
}

fn evaluate_subset(
    dataset: &Dataset,
    ids: &[usize],
    config: &SelectionConfig,
    eval_seed: u64,
) -> Result<ConfusionCounts> {
    let view = project(dataset, ids)?;
    match config.evaluation {
        Evaluation::KFold { k } => classifier::kfold_confusion(&view, k, &config.train, eval_seed),
        Evaluation::FixedSplit => classifier::fixed_split_confusion(&view, &config.train),
    }
}

/// Run one iteration: partition the remaining features, evaluate every
/// subset, update relevance scores against the step baseline E and return
/// the iteration UAR P_i.
pub fn run_iteration(
    state: &mut SelectionState,
    dataset: &Dataset,
    config: &SelectionConfig,
) -> Result<f64> {
    let n_remaining = state.remaining.len();
    let size = config
        .subset_size_override
        .unwrap_or_else(|| subset_size(n_remaining));
    let exhaustive = config.subset_size_override.is_some() && size >= n_remaining && n_remaining > 1;

    let subsets: Vec<Vec<usize>> = if exhaustive {
        // Leave-one-out complements, one per remaining feature.
        (0..n_remaining)
            .map(|skip| {
                state
                    .remaining
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &id)| id)
                    .collect()
            })
            .collect()
    } else {
        partition_subsets(&state.remaining, size, &mut state.partition_rng)
    };

    // Seeds are drawn up front in subset order so parallel evaluation cannot
    // perturb the stream.
    let seeds: Vec<u64> = subsets
        .iter()
        .map(|_| rand::Rng::gen(&mut state.eval_rng))
        .collect();
    let results: Result<Vec<ConfusionCounts>> = subsets
        .par_iter()
        .zip(&seeds)
        .map(|(ids, &seed)| evaluate_subset(dataset, ids, config, seed))
        .collect();
    let results = results?;
    state.evaluations += subsets.len();

    let mut iteration_counts = ConfusionCounts::new(dataset.n_classes());
    if exhaustive {
        // Batch form of the relevance update: every complement's score is
        // referenced to the iteration-end baseline, which keeps the update
        // free of evaluation-order effects and makes the reduction to
        // classical backward elimination exact.
        let mut subset_uars = Vec::with_capacity(subsets.len());
        for counts in &results {
            state.cumulative.merge(counts);
            iteration_counts.merge(counts);
            subset_uars.push(classifier::uar(counts)?);
        }
        let e = classifier::uar(&state.cumulative)?;
        let terms: Vec<f64> = subset_uars.iter().map(|&p| p - e).collect();
        let total: f64 = terms.iter().sum();
        for (skip, &id) in state.remaining.iter().enumerate() {
            *state.relevance.get_mut(&id).unwrap() += total - terms[skip];
        }
    } else {
        for (ids, counts) in subsets.iter().zip(&results) {
            let p = classifier::uar(counts)?;
            state.cumulative.merge(counts);
            iteration_counts.merge(counts);
            let e = classifier::uar(&state.cumulative)?;
            for &id in ids {
                *state.relevance.get_mut(&id).unwrap() += p - e;
            }
        }
    }

    let p_i = classifier::uar(&iteration_counts)?;
    state.step_scores.push(p_i);
    Ok(p_i)
}

/// Full selection loop down to `config.target_count` features.
pub fn run_selection(dataset: &Dataset, config: &SelectionConfig) -> Result<SelectionResult> {
    run_selection_timed(dataset, config).map(|(result, _)| result)
}

/// Like [`run_selection`] but also reports wall-clock milliseconds per step.
/// Timings are returned out of band so results stay comparable.
pub fn run_selection_timed(
    dataset: &Dataset,
    config: &SelectionConfig,
) -> Result<(SelectionResult, Vec<f64>)> {
    config.validate(dataset.n_features())?;
    let full_count = dataset.n_features();

    // Per-feature information gain never changes; compute it once and
    // renormalize over the remaining set each step.
    let gains = if config.counter_score_enabled {
        Some(mutual_info::feature_information(
            dataset,
            &dataset.feature_ids(),
            config.n_bins,
        )?)
    } else {
        None
    };

    let mut state = SelectionState::new(dataset, config.seed);
    let mut steps = Vec::new();
    let mut step_wall_ms = Vec::new();
    let mut step_index = 0;

    while state.remaining.len() > config.target_count {
        let step_start = std::time::Instant::now();
        state.begin_step(dataset.n_classes());
        let mut hit_cap = false;
        loop {
            run_iteration(&mut state, dataset, config)?;
            if state.step_scores.len() >= config.min_iterations_per_step {
                if local_criterion(&state.step_scores)? < config.local_threshold {
                    break;
                }
                if state.step_scores.len() >= config.max_iterations_per_step {
                    hit_cap = true;
                    break;
                }
            }
        }
        let lc = local_criterion(&state.step_scores)?;
        let e = classifier::uar(&state.cumulative)?;

        let alpha = if let Some(gains) = &gains {
            let remaining_gains: BTreeMap<usize, f64> = state
                .remaining
                .iter()
                .map(|&id| (id, gains[&id]))
                .collect();
            let scores = mutual_info::normalize_information(&remaining_gains);
            apply_counter_score(&mut state.relevance, &scores, full_count, true)
        } else {
            0.0
        };

        let m = removal_count(state.remaining.len(), config.target_count, config.removal_fraction);
        let removed = select_lsf(&mut state.remaining, &state.relevance, m)?;
        steps.push(StepRecord {
            step: step_index,
            iterations: state.step_scores.len(),
            local_criterion: lc,
            step_uar: e,
            alpha,
            removed,
            remaining_after: state.remaining.len(),
            hit_iteration_cap: hit_cap,
        });
        step_wall_ms.push(step_start.elapsed().as_secs_f64() * 1e3);
        step_index += 1;
    }

    Ok((
        SelectionResult {
            selected_ids: state.remaining.clone(),
            steps,
            evaluations: state.evaluations,
        },
        step_wall_ms,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subset_size_follows_square_root() {
        assert_eq!(subset_size(100), 10);
        assert_eq!(subset_size(1), 1);
        assert_eq!(subset_size(50), 7);
    }

    #[test]
    fn local_criterion_known_values() {
        assert!(local_criterion(&[0.8, 0.8, 0.8]).unwrap() < 1e-12);
        assert!((local_criterion(&[0.6, 0.8]).unwrap() - 0.1).abs() < 1e-12);
        let lc = local_criterion(&[0.5, 0.7, 0.9]).unwrap();
        assert!((lc - (2.0f64 / 75.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn local_criterion_needs_two_scores() {
        assert!(matches!(local_criterion(&[0.5]), Err(Error::TooFewScores)));
    }

    #[test]
    fn removal_count_schedule() {
        assert_eq!(removal_count(200, 10, 0.05), 10);
        assert_eq!(removal_count(12, 10, 0.05), 1);
        assert_eq!(removal_count(11, 10, 0.5), 1);
        assert_eq!(removal_count(15, 1, 0.05), 1);
    }

    #[test]
    fn removal_clamps_to_target() {
        // 12 remaining, target 10: even a large fraction removes at most 2.
        assert_eq!(removal_count(12, 10, 0.9), 2);
    }

    #[test]
    fn select_lsf_takes_the_argmin() {
        let mut remaining = vec![0, 1, 2];
        let mut rel = BTreeMap::new();
        rel.insert(0, 0.5);
        rel.insert(1, -0.2);
        rel.insert(2, 0.1);
        let removed = select_lsf(&mut remaining, &rel, 1).unwrap();
        assert_eq!(removed[0].id, 1);
        assert_eq!(remaining, vec![0, 2]);
    }

    #[test]
    fn select_lsf_ties_break_by_smaller_id() {
        let mut remaining = vec![3, 7];
        let mut rel = BTreeMap::new();
        rel.insert(3, 0.0);
        rel.insert(7, 0.0);
        let removed = select_lsf(&mut remaining, &rel, 1).unwrap();
        assert_eq!(removed[0].id, 3);
    }

    #[test]
    fn select_lsf_cardinality() {
        let mut remaining = vec![0, 1, 2];
        let rel: BTreeMap<usize, f64> = remaining.iter().map(|&id| (id, id as f64)).collect();
        let removed = select_lsf(&mut remaining, &rel, 2).unwrap();
        assert_eq!(removed.len(), 2);
        assert_eq!(remaining.len(), 1);
    }

    #[test]
    fn select_lsf_rejects_removing_everything() {
        let mut remaining = vec![0, 1];
        let rel: BTreeMap<usize, f64> = remaining.iter().map(|&id| (id, 0.0)).collect();
        assert!(select_lsf(&mut remaining, &rel, 2).is_err());
    }

    #[test]
    fn counter_score_rate_direct_substitution() {
        let mut rel: BTreeMap<usize, f64> = (0..50).map(|id| (id, 0.0)).collect();
        rel.insert(0, 2.0);
        let scores: BTreeMap<usize, f64> = (0..50).map(|id| (id, 0.5)).collect();
        let alpha = apply_counter_score(&mut rel, &scores, 100, true);
        assert_eq!(alpha, 1.0);
    }

    #[test]
    fn counter_score_clamps_negative_relevance() {
        let mut rel: BTreeMap<usize, f64> = (0..4).map(|id| (id, -0.5)).collect();
        let before = rel.clone();
        let scores: BTreeMap<usize, f64> = (0..4).map(|id| (id, 1.0)).collect();
        let alpha = apply_counter_score(&mut rel, &scores, 8, true);
        assert_eq!(alpha, 0.0);
        assert_eq!(rel, before);
    }

    #[test]
    fn counter_score_rate_shrinks_with_remaining() {
        let full = 100;
        let mut last = f64::INFINITY;
        for remaining in [80usize, 40, 20] {
            let mut rel: BTreeMap<usize, f64> = (0..remaining).map(|id| (id, 1.0)).collect();
            let scores: BTreeMap<usize, f64> = (0..remaining).map(|id| (id, 0.0)).collect();
            let alpha = apply_counter_score(&mut rel, &scores, full, true);
            assert!(alpha < last);
            last = alpha;
        }
    }

    #[test]
    fn counter_score_disabled_is_a_noop() {
        let mut rel: BTreeMap<usize, f64> = (0..4).map(|id| (id, 1.0)).collect();
        let before = rel.clone();
        let scores: BTreeMap<usize, f64> = (0..4).map(|id| (id, 1.0)).collect();
        assert_eq!(apply_counter_score(&mut rel, &scores, 8, false), 0.0);
        assert_eq!(rel, before);
    }

    fn planted_dataset(seed: u64, n_features: usize, relevant: &[usize], n_per_class: usize) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for class in 0..2usize {
            for _ in 0..n_per_class {
                let row: Vec<f64> = (0..n_features)
                    .map(|f| {
                        let base: f64 = rng.gen_range(-1.0..1.0);
                        if relevant.contains(&f) {
                            base + 2.5 * class as f64
                        } else {
                            base
                        }
                    })
                    .collect();
                rows.push(row);
                labels.push(class);
            }
        }
        Dataset::new(rows, labels).unwrap()
    }

    #[test]
    fn partition_covers_remaining_exactly_once() {
        let remaining: Vec<usize> = (0..10).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let chunks = partition_subsets(&remaining, 3, &mut rng);
        let sizes: Vec<usize> = chunks.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 3, 3, 1]);
        let mut all: Vec<usize> = chunks.concat();
        all.sort_unstable();
        assert_eq!(all, remaining);
    }

    #[test]
    fn partition_is_deterministic_per_rng_state() {
        let remaining: Vec<usize> = (0..12).collect();
        let a = partition_subsets(&remaining, 4, &mut ChaCha8Rng::seed_from_u64(5));
        let b = partition_subsets(&remaining, 4, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }

    #[test]
    fn iteration_updates_every_remaining_feature_once() {
        let ds = planted_dataset(1, 6, &[0], 20);
        let config = SelectionConfig {
            target_count: 2,
            counter_score_enabled: false,
            seed: 4,
            ..Default::default()
        };
        let mut state = SelectionState::new(&ds, config.seed);
        state.begin_step(ds.n_classes());
        let before = state.relevance.clone();
        let p = run_iteration(&mut state, &ds, &config).unwrap();
        assert!((0.0..=1.0).contains(&p));
        // A zero update is indistinguishable from no update for a single
        // feature, but all six getting exactly one evaluation shows as all
        // keys still present and the partition covering everything (checked
        // above); here: relevance changed or stayed finite for each feature.
        assert_eq!(state.relevance.len(), before.len());
        assert!(state.relevance.values().all(|r| r.is_finite()));
    }

    #[test]
    fn first_subset_of_a_fresh_step_has_zero_update() {
        // With a single subset per iteration, P equals E after the first
        // merge, so the first update is exactly zero.
        let ds = planted_dataset(2, 4, &[0], 16);
        let config = SelectionConfig {
            target_count: 2,
            counter_score_enabled: false,
            subset_size_override: Some(3), // chunks of [3, 1]
            seed: 9,
            ..Default::default()
        };
        let mut state = SelectionState::new(&ds, config.seed);
        state.begin_step(ds.n_classes());
        run_iteration(&mut state, &ds, &config).unwrap();
        // The three features of the first chunk all carry the same update,
        // and that update is P1 - uar(P1 counts) = 0.
        let zeroes = state.relevance.values().filter(|r| **r == 0.0).count();
        assert!(zeroes >= 3, "first-chunk updates must be exactly zero");
    }

    #[test]
    fn predictive_feature_outranks_noise() {
        let mut wins = 0;
        for seed in 0..10u64 {
            let ds = planted_dataset(seed, 2, &[0], 30);
            let config = SelectionConfig {
                target_count: 1,
                counter_score_enabled: false,
                seed,
                ..Default::default()
            };
            let result = run_selection(&ds, &config).unwrap();
            if result.selected_ids == vec![0] {
                wins += 1;
            }
        }
        assert!(wins >= 9, "predictive feature won only {wins}/10 runs");
    }

    #[test]
    fn single_step_boundary_case() {
        let ds = planted_dataset(3, 5, &[0], 15);
        let config = SelectionConfig {
            target_count: 4,
            seed: 1,
            ..Default::default()
        };
        let result = run_selection(&ds, &config).unwrap();
        assert_eq!(result.steps.len(), 1);
        assert_eq!(result.steps[0].removed.len(), 1);
        assert_eq!(result.selected_ids.len(), 4);
    }

    #[test]
    fn selection_is_deterministic_including_trace() {
        let ds = planted_dataset(7, 8, &[0, 1], 20);
        let config = SelectionConfig {
            target_count: 3,
            seed: 13,
            ..Default::default()
        };
        let a = run_selection(&ds, &config).unwrap();
        let b = run_selection(&ds, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn removed_and_selected_partition_the_feature_set() {
        let ds = planted_dataset(11, 9, &[2], 16);
        let config = SelectionConfig {
            target_count: 2,
            seed: 3,
            ..Default::default()
        };
        let result = run_selection(&ds, &config).unwrap();
        let mut all: Vec<usize> = result.selected_ids.clone();
        for s in &result.steps {
            all.extend(s.removed.iter().map(|r| r.id));
        }
        all.sort_unstable();
        assert_eq!(all, ds.feature_ids());
        // Monotone shrinkage and step bound.
        assert!(result.steps.len() <= ds.n_features() - config.target_count);
        let mut last = ds.n_features();
        for s in &result.steps {
            assert!(s.remaining_after < last);
            last = s.remaining_after;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn partition_property(
            n in 2usize..40,
            size in 1usize..8,
            seed in 0u64..1000,
        ) {
            let remaining: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let chunks = partition_subsets(&remaining, size, &mut rng);
            let mut all: Vec<usize> = chunks.concat();
            all.sort_unstable();
            prop_assert_eq!(all, remaining);
            for c in &chunks[..chunks.len() - 1] {
                prop_assert_eq!(c.len(), size);
            }
        }
    }
}
