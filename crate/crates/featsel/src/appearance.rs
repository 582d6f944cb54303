//! Mean-template appearance model over the selected feature elements.
//!
//! The positive and negative filters are elementwise means of the example
//! sub-vectors restricted to the selected ids; a region is scored by the
//! difference of Euclidean distances to the two filters, so larger scores
//! are more positive-like. Vectors are not normalized before scoring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppearanceModel {
    pub selected_ids: Vec<usize>,
    pub positive_filter: Vec<f64>,
    pub negative_filter: Vec<f64>,
}

/// Elementwise mean of the example sub-vectors restricted to `selected_ids`.
pub fn train_filter(examples: &[Vec<f64>], selected_ids: &[usize]) -> Result<Vec<f64>> {
    if examples.is_empty() {
        return Err(Error::EmptyRows);
    }
    if selected_ids.is_empty() {
        return Err(Error::EmptyFeatureIds);
    }
    let n = examples.len() as f64;
    let mut filter = vec![0.0; selected_ids.len()];
    for example in examples {
        for (slot, &id) in filter.iter_mut().zip(selected_ids) {
            let v = *example
                .get(id)
                .ok_or(Error::UnknownFeatureId(id))?;
            *slot += v;
        }
    }
    for slot in filter.iter_mut() {
        *slot /= n;
    }
    Ok(filter)
}

/// Build the two-filter model from positive and negative example matrices.
pub fn build_model(
    positives: &[Vec<f64>],
    negatives: &[Vec<f64>],
    selected_ids: &[usize],
) -> Result<AppearanceModel> {
    if positives.is_empty() {
        return Err(Error::InvalidDataset("no positive examples".into()));
    }
    if negatives.is_empty() {
        return Err(Error::InvalidDataset("no negative examples".into()));
    }
    Ok(AppearanceModel {
        selected_ids: selected_ids.to_vec(),
        positive_filter: train_filter(positives, selected_ids)?,
        negative_filter: train_filter(negatives, selected_ids)?,
    })
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Region score `S_r = d(negative, x) - d(positive, x)` over the selected
/// sub-vector of `feature_vector`.
pub fn region_score(model: &AppearanceModel, feature_vector: &[f64]) -> Result<f64> {
    let sub: Vec<f64> = model
        .selected_ids
        .iter()
        .map(|&id| {
            feature_vector
                .get(id)
                .copied()
                .ok_or(Error::UnknownFeatureId(id))
        })
        .collect::<Result<_>>()?;
    Ok(euclidean(&model.negative_filter, &sub) - euclidean(&model.positive_filter, &sub))
}

impl AppearanceModel {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn filter_is_the_mean() {
        let examples = vec![vec![1.0, 3.0], vec![3.0, 5.0]];
        assert_eq!(train_filter(&examples, &[0, 1]).unwrap(), vec![2.0, 4.0]);
    }

    #[test]
    fn single_example_filter_is_the_example() {
        let examples = vec![vec![7.0, -1.0]];
        assert_eq!(train_filter(&examples, &[0, 1]).unwrap(), vec![7.0, -1.0]);
    }

    #[test]
    fn filter_projects_to_selected_ids() {
        let examples = vec![vec![1.0, 10.0], vec![3.0, 20.0]];
        assert_eq!(train_filter(&examples, &[1]).unwrap(), vec![15.0]);
    }

    #[test]
    fn empty_example_set_rejected() {
        assert!(matches!(
            train_filter(&[], &[0]),
            Err(Error::EmptyRows)
        ));
        let err = build_model(&[], &[vec![1.0]], &[0]).unwrap_err();
        assert!(err.to_string().contains("positive"));
        let err = build_model(&[vec![1.0]], &[], &[0]).unwrap_err();
        assert!(err.to_string().contains("negative"));
    }

    #[test]
    fn identical_filters_score_zero() {
        let examples = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let model = build_model(&examples, &examples, &[0, 1]).unwrap();
        assert_eq!(model.positive_filter, model.negative_filter);
        assert_eq!(region_score(&model, &[0.5, 9.0]).unwrap(), 0.0);
    }

    #[test]
    fn score_at_the_filters_themselves() {
        let model = build_model(&[vec![1.0, 0.0]], &[vec![-1.0, 0.0]], &[0, 1]).unwrap();
        let d = 2.0;
        assert_eq!(region_score(&model, &[1.0, 0.0]).unwrap(), d);
        assert_eq!(region_score(&model, &[-1.0, 0.0]).unwrap(), -d);
    }

    #[test]
    fn missing_indexes_rejected() {
        let model = build_model(&[vec![1.0, 2.0, 3.0]], &[vec![0.0, 0.0, 0.0]], &[0, 2]).unwrap();
        assert!(matches!(
            region_score(&model, &[1.0]),
            Err(Error::UnknownFeatureId(2))
        ));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let model = build_model(
            &[vec![0.1, 0.2, 1.0 / 3.0]],
            &[vec![-0.7, 1e-17, 2.5]],
            &[0, 1, 2],
        )
        .unwrap();
        let restored = AppearanceModel::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(model, restored);
    }

    proptest! {
        #[test]
        fn antisymmetry_and_translation_invariance(
            pos in proptest::collection::vec(-5.0f64..5.0, 3),
            neg in proptest::collection::vec(-5.0f64..5.0, 3),
            x in proptest::collection::vec(-5.0f64..5.0, 3),
            shift in -3.0f64..3.0,
        ) {
            let model = build_model(&[pos.clone()], &[neg.clone()], &[0, 1, 2]).unwrap();
            let swapped = AppearanceModel {
                selected_ids: model.selected_ids.clone(),
                positive_filter: model.negative_filter.clone(),
                negative_filter: model.positive_filter.clone(),
            };
            let s = region_score(&model, &x).unwrap();
            prop_assert_eq!(region_score(&swapped, &x).unwrap(), -s);

            let shifted = |v: &[f64]| -> Vec<f64> { v.iter().map(|a| a + shift).collect() };
            let model_t = build_model(&[shifted(&pos)], &[shifted(&neg)], &[0, 1, 2]).unwrap();
            let s_t = region_score(&model_t, &shifted(&x)).unwrap();
            prop_assert!((s - s_t).abs() < 1e-9);
        }

        #[test]
        fn sign_agrees_with_nearest_centroid(
            pos in proptest::collection::vec(-5.0f64..5.0, 4),
            neg in proptest::collection::vec(-5.0f64..5.0, 4),
            x in proptest::collection::vec(-5.0f64..5.0, 4),
        ) {
            let model = build_model(&[pos.clone()], &[neg.clone()], &[0, 1, 2, 3]).unwrap();
            let s = region_score(&model, &x).unwrap();
            let dp = euclidean(&pos, &x);
            let dn = euclidean(&neg, &x);
            if dp < dn {
                prop_assert!(s > 0.0);
            } else if dn < dp {
                prop_assert!(s < 0.0);
            }
        }
    }
}
