//! Brute-force classical sequential backward elimination on the fixed split.
//!
//! At each step every leave-one-out candidate is evaluated exhaustively and
//! the feature whose removal gives the best UAR is dropped (ties go to the
//! smaller id). Used as an independent cross-check of the search loop's
//! exhaustive mode; exposed as the `sbe-oracle` subcommand.

use crate::classifier::{self, TrainConfig};
use crate::data::{project, Dataset};
use crate::error::{Error, Result};

/// Removal order down to `target` features, followed by the survivors.
pub fn sbe_removal_sequence(
    dataset: &Dataset,
    target: usize,
    train: &TrainConfig,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if target == 0 || target >= dataset.n_features() {
        return Err(Error::InvalidConfig(format!(
            "target {target} must be in 1..{}",
            dataset.n_features()
        )));
    }
    let mut remaining = dataset.feature_ids();
    let mut removal_order = Vec::new();
    while remaining.len() > target {
        let mut best: Option<(f64, usize)> = None;
        for (skip, &candidate) in remaining.iter().enumerate() {
            let ids: Vec<usize> = remaining
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &id)| id)
                .collect();
            let view = project(dataset, &ids)?;
            let counts = classifier::fixed_split_confusion(&view, train)?;
            let u = classifier::uar(&counts)?;
            // Strictly-greater keeps the first (smallest-id) maximizer.
            let better = match best {
                None => true,
                Some((bu, _)) => u > bu,
            };
            if better {
                best = Some((u, candidate));
            }
        }
        let (_, drop) = best.unwrap();
        remaining.retain(|&id| id != drop);
        removal_order.push(drop);
    }
    Ok((removal_order, remaining))
}
