//! NaN-aware synthetic oversampling for imbalanced tabular data.
//!
//! Missing cells are first-class citizens here: neighbour search uses
//! distances over mutually observed features, and three missingness
//! strategies control how parent-row gaps propagate into synthetic
//! rows. Generation is deterministic for a given seed, including under
//! parallel execution, because every batch of work derives its own
//! random substream from a fixed key.
//!
//! ```
//! use lacuna::{resample, ClassLabel, FeatureMatrix, LabeledDataset, Method, SynthesisConfig};
//!
//! let features = FeatureMatrix::from_rows(vec![
//!     vec![Some(0.1), Some(1.0)],
//!     vec![Some(0.2), None],
//!     vec![Some(0.3), Some(1.2)],
//!     vec![Some(0.4), Some(1.3)],
//!     vec![Some(5.0), Some(6.0)],
//!     vec![Some(5.1), Some(6.1)],
//! ]).unwrap();
//! let labels = vec![0, 0, 0, 0, 1, 1].into_iter().map(ClassLabel::Int).collect();
//! let dataset = LabeledDataset::new(features, labels).unwrap();
//!
//! let config = SynthesisConfig::new(Method::SmoteNan).seed(7);
//! let result = resample(&dataset, &config).unwrap();
//! assert_eq!(result.dataset.n_rows(), 8);
//! ```

pub mod engine;
pub mod error;
pub mod geometry;
pub mod nan_policy;
pub mod samplers;
pub mod strategy;
pub mod stream;
pub mod tabular;

pub use engine::{resample, ResampleResult, SyntheticProvenance};
pub use error::{Error, Result};
pub use geometry::{k_nearest, masked_distance, shared_observed_dims, MaskedDistance, Neighbor};
pub use nan_policy::{combine_pair, combine_single, InterpolationDraw, NanStrategy};
pub use samplers::{
    adasyn_nan, rose_nan, smote_nan, AdasynAllocation, Method, RoseBandwidth, SynthesisConfig,
};
pub use strategy::{majority_class, resolve, SamplingPlan, SamplingSpec};
pub use stream::{derive_stream, StreamKey, StreamSource, Substream};
pub use tabular::{
    missingness_profile, partition_by_class, ClassLabel, ClassPartition, FeatureMatrix,
    LabeledDataset, MatrixBuilder, MissingnessProfile,
};
