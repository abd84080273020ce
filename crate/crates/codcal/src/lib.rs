//! Split-conformal outlier detection with contaminated calibration data.
//!
//! The crate implements conformal p-values and their quantile-threshold
//! equivalents, three data-cleaning strategies for contaminated reference
//! sets (Naive-Trim, Label-Trim, Small-Clean), closed-form type-I error
//! bounds, simple black-box scorers (kNN distance and Mahalanobis), and a
//! seeded Monte-Carlo harness that measures type-I error and power of each
//! method across random data splits.
//!
//! Every random quantity derives from a single master seed, so experiments
//! are bit-reproducible at any worker count.

pub mod bounds;
pub mod conformal;
pub mod dataio;
pub mod error;
pub mod experiments;
pub mod report;
pub mod rng;
pub mod scoring;
pub mod trimming;

pub use conformal::{PValue, QuantileThreshold, ScoreSet};
pub use error::{Error, Result};
pub use scoring::Scorer;
pub use trimming::{LabelOracle, TrimOutcome};
