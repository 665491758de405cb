//! Fuzzy qualitative rank classifier.
//!
//! A classifier for non-mutually-exclusive tabular data: instead of a
//! single class decision it returns a normalized confidence distribution
//! over classes, learned from per-(feature, class) histograms compressed
//! into trapezoidal membership functions, and decodes that distribution
//! into a symbolic ranking.
//!
//! The pipeline has four stages:
//!
//! 1. [`learn`] — bin each (feature, class) value list into an equal-width
//!    histogram and extract a `{a, b, alpha, beta}` trapezoid: plateau over
//!    the dominant bins, support over the observed range.
//! 2. [`infer`] — evaluate the trapezoid memberships of an unseen feature
//!    vector, multiply per class and normalize into a
//!    [`ClassDistribution`].
//! 3. [`rank`] — order classes by confidence and attach comparison
//!    symbols (equal / higher / much higher), excluding zero-confidence
//!    classes as "definitely not".
//! 4. [`eval`] — score predictions against reference label sets and
//!    distributions (graded multi-label correctness, cosine similarity,
//!    error statistics, per-class F-scores).
//!
//! [`data`] handles CSV ingestion, leave-one-out iteration and fixed
//! splits; [`baselines`] provides a plain KNN classifier for single-label
//! comparisons.
//!
//! ```
//! use fqrc_core::{data, infer, learn, rank};
//!
//! let csv = "f:size,label\n0.1,small\n0.2,small\n0.9,large\n1.0,large\n";
//! let ds = data::parse_csv(csv, "inline", &data::LoadOptions::default()).unwrap();
//! let model = learn::train(
//!     ds.samples(),
//!     ds.feature_names(),
//!     ds.class_names(),
//!     learn::DEFAULT_BINS,
//! )
//! .unwrap();
//!
//! let x = fqrc_core::FeatureVector::new(vec![0.15]).unwrap();
//! let d = infer::infer(&model, &x).unwrap();
//! let ri = rank::interpret(&d, &rank::RankOptions::default());
//! let text = rank::describe(&ri, ds.class_names()).unwrap();
//! assert_eq!(text, "small, definitely not: large");
//! ```

pub mod baselines;
pub mod data;
pub mod error;
pub mod eval;
pub mod infer;
pub mod learn;
pub mod rank;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    ClassDistribution, EvalParams, EvalReport, FeatureVector, FourTuple, HistogramSummary,
    LabeledSample, MembershipModel, RankInterpretation, RankSymbol, RankedClass,
};
