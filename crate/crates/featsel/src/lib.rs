//! Wrapper feature selection with k-fold subsampled sequential backward
//! elimination, a mutual-information counter score and mean-template
//! appearance models.
//!
//! The search repeatedly partitions the remaining features into random
//! subsets of size sqrt(N), scores each subset with a k-fold evaluated
//! linear SVM (unweighted average recall), accumulates per-feature relevance
//! against the step baseline, and subtracts a batch of the least significant
//! features once the step's iteration scores stabilize. Everything is
//! deterministic given a seed.

pub mod appearance;
pub mod classifier;
pub mod data;
pub mod error;
pub mod io;
pub mod mutual_info;
pub mod rng;
pub mod sbe;
pub mod selector;
pub mod synth;

pub use data::{project, Dataset, FeatureSubsetView, Standardizer};
pub use error::{Error, Result};
pub use selector::{run_selection, SelectionConfig, SelectionResult};
