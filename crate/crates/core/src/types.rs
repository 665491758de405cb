//! Domain types shared by every stage of the pipeline.
//!
//! All types here are immutable after construction and validate their
//! invariants at the boundary: a constructor either returns a value that
//! satisfies the documented rules or an [`Error`], never a silently
//! clamped one.

use crate::error::{Error, Result};

/// An ordered list of real-valued attribute scores for one sample.
///
/// Values may be negative; they must be finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("feature vector must be non-empty".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!(
                "feature vector contains non-finite value {v}"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A training sample: a feature vector plus its class index.
///
/// The label is an index into the dataset's declared class list; whether
/// it is in range is checked wherever a class count is known (dataset
/// construction, training).
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub features: FeatureVector,
    pub label: usize,
}

impl LabeledSample {
    pub fn new(features: FeatureVector, label: usize) -> Self {
        Self { features, label }
    }
}

/// Trapezoidal membership parameters for one (feature, class) pair.
///
/// The plateau `[a, b]` has membership 1; the support is
/// `[a - alpha, b + beta]` with linear ramps of width `alpha` (left) and
/// `beta` (right). `a == b` and zero-width ramps are permitted: small
/// training sets produce them naturally, and the membership evaluator
/// treats a zero-width ramp as a step edge.
///
/// The support bounds are carried explicitly so that a tuple learned
/// from data reproduces the observed value range exactly: deriving
/// `a - alpha` in floating point can drift by an ulp from the minimum
/// the width was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourTuple {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    support_lo: f64,
    support_hi: f64,
}

impl FourTuple {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("alpha", alpha), ("beta", beta)] {
            if !v.is_finite() {
                return Err(Error::Invalid(format!("four-tuple {name} is not finite")));
            }
        }
        if a > b {
            return Err(Error::Invalid(format!(
                "four-tuple requires a <= b, got a={a}, b={b}"
            )));
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::Invalid(format!(
                "four-tuple ramp widths must be non-negative, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self {
            a,
            b,
            alpha,
            beta,
            support_lo: a - alpha,
            support_hi: b + beta,
        })
    }

    /// Builds from plateau edges and exact support bounds; the ramp
    /// widths become `a - support_lo` and `support_hi - b`.
    pub fn with_support(a: f64, b: f64, support_lo: f64, support_hi: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("lo", support_lo), ("hi", support_hi)] {
            if !v.is_finite() {
                return Err(Error::Invalid(format!("four-tuple {name} is not finite")));
            }
        }
        if a > b {
            return Err(Error::Invalid(format!(
                "four-tuple requires a <= b, got a={a}, b={b}"
            )));
        }
        if support_lo > a || support_hi < b {
            return Err(Error::Invalid(format!(
                "support [{support_lo}, {support_hi}] must contain the plateau [{a}, {b}]"
            )));
        }
        Ok(Self {
            a,
            b,
            alpha: a - support_lo,
            beta: support_hi - b,
            support_lo,
            support_hi,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The closed interval outside of which membership is exactly zero.
    pub fn support(&self) -> (f64, f64) {
        (self.support_lo, self.support_hi)
    }
}

/// The learned model: a J x K grid of [`FourTuple`]s plus the feature and
/// class names that index it.
///
/// Row `j` holds the tuples of feature `j` across all classes.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipModel {
    /// Row-major `J * K` grid: entry `(j, k)` at `j * K + k`.
    tuples: Vec<FourTuple>,
    feature_names: Vec<String>,
    class_names: Vec<String>,
}

pub(crate) fn check_names(kind: &str, names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Invalid(format!(
            "at least one {kind} name is required"
        )));
    }
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::Invalid(format!("{kind} name {i} is empty")));
        }
        if names[..i].contains(name) {
            return Err(Error::Invalid(format!("duplicate {kind} name `{name}`")));
        }
    }
    Ok(())
}

impl MembershipModel {
    /// `tuples` is row-major: feature-major, class-minor, length `J * K`.
    pub fn new(
        tuples: Vec<FourTuple>,
        feature_names: Vec<String>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        check_names("feature", &feature_names)?;
        check_names("class", &class_names)?;
        let expected = feature_names.len() * class_names.len();
        if tuples.len() != expected {
            return Err(Error::Invalid(format!(
                "tuple grid has {} cells, expected {} ({} features x {} classes)",
                tuples.len(),
                expected,
                feature_names.len(),
                class_names.len()
            )));
        }
        Ok(Self {
            tuples,
            feature_names,
            class_names,
        })
    }

    /// Number of features J.
    pub fn num_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Number of classes K.
    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn tuple(&self, feature: usize, class: usize) -> &FourTuple {
        &self.tuples[feature * self.num_classes() + class]
    }

    /// All cells in row-major (feature-major) order.
    pub fn tuples(&self) -> &[FourTuple] {
        &self.tuples
    }
}

/// Equal-width histogram over one (feature, class) value list, plus the
/// occupancy statistics the tuple extraction needs.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramSummary {
    bin_edges: Vec<f64>,
    counts: Vec<usize>,
    nonempty_bins: usize,
    mean_occupancy: f64,
}

impl HistogramSummary {
    pub fn new(bin_edges: Vec<f64>, counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() || bin_edges.len() != counts.len() + 1 {
            return Err(Error::Invalid(format!(
                "histogram needs B >= 1 bins and B + 1 edges, got {} edges for {} bins",
                bin_edges.len(),
                counts.len()
            )));
        }
        if bin_edges.iter().any(|e| !e.is_finite()) {
            return Err(Error::Invalid("histogram edges must be finite".into()));
        }
        let zero_width = bin_edges[0] == bin_edges[bin_edges.len() - 1];
        if !zero_width && bin_edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "histogram edges must be strictly ascending".into(),
            ));
        }
        let nonempty_bins = counts.iter().filter(|&&c| c > 0).count();
        if nonempty_bins == 0 {
            return Err(Error::Invalid("histogram holds no observations".into()));
        }
        let total: usize = counts.iter().sum();
        let mean_occupancy = total as f64 / nonempty_bins as f64;
        Ok(Self {
            bin_edges,
            counts,
            nonempty_bins,
            mean_occupancy,
        })
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn num_bins(&self) -> usize {
        self.counts.len()
    }

    /// Number of bins with at least one observation (`b` in the occupancy
    /// mean).
    pub fn nonempty_bins(&self) -> usize {
        self.nonempty_bins
    }

    /// Mean occupancy over the non-empty bins: `sum(counts) / nonempty_bins`.
    pub fn mean_occupancy(&self) -> f64 {
        self.mean_occupancy
    }
}

/// Normalized per-class confidences `r_1..r_K`.
///
/// Either the entries sum to 1 (within 1e-9), or every entry is zero and
/// `is_all_zero` is set — the sentinel for a sample that falls outside
/// every learned support. Never both.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDistribution {
    r: Vec<f64>,
    is_all_zero: bool,
}

const SUM_TOLERANCE: f64 = 1e-9;

impl ClassDistribution {
    /// Builds from already-normalized confidences.
    pub fn from_confidences(r: Vec<f64>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::Invalid(
                "distribution must cover at least one class".into(),
            ));
        }
        if let Some(v) = r.iter().find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0) {
            return Err(Error::Invalid(format!("confidence {v} is outside [0, 1]")));
        }
        let sum: f64 = r.iter().sum();
        if sum == 0.0 {
            return Ok(Self {
                r,
                is_all_zero: true,
            });
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Invalid(format!(
                "confidences sum to {sum}, expected 1 within {SUM_TOLERANCE:e}"
            )));
        }
        Ok(Self {
            r,
            is_all_zero: false,
        })
    }

    /// Normalizes raw non-negative weights (e.g. per-class membership
    /// products). An all-zero weight vector yields the all-zero sentinel.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Invalid(
                "distribution must cover at least one class".into(),
            ));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::Invalid(format!(
                "weight {w} is negative or non-finite"
            )));
        }
        let z: f64 = weights.iter().sum();
        if z == 0.0 {
            return Ok(Self {
                r: vec![0.0; weights.len()],
                is_all_zero: true,
            });
        }
        Ok(Self {
            r: weights.iter().map(|w| w / z).collect(),
            is_all_zero: false,
        })
    }

    pub fn confidences(&self) -> &[f64] {
        &self.r
    }

    pub fn num_classes(&self) -> usize {
        self.r.len()
    }

    pub fn is_all_zero(&self) -> bool {
        self.is_all_zero
    }
}

/// Ranking symbol attached to each retained class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSymbol {
    /// The class with the highest confidence.
    Top,
    /// Confidence equal to the preceding class.
    Equal,
    /// Confidence below the preceding class by at most the `higher` threshold.
    Higher,
    /// Confidence below the preceding class by more than the `higher` threshold.
    MuchHigher,
}

/// One retained class in a ranking: index, confidence and its symbol
/// relative to the class ranked immediately above it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedClass {
    pub class: usize,
    pub confidence: f64,
    pub symbol: RankSymbol,
}

/// Decoded ranking: retained classes in descending confidence order plus
/// the excluded ("definitely not") set.
#[derive(Debug, Clone, PartialEq)]
pub struct RankInterpretation {
    ranked: Vec<RankedClass>,
    excluded: Vec<usize>,
}

impl RankInterpretation {
    /// `excluded` must be ascending; `ranked` descending by confidence with
    /// the first entry marked [`RankSymbol::Top`]. Together they must cover
    /// `0..K` exactly once.
    pub fn new(ranked: Vec<RankedClass>, excluded: Vec<usize>) -> Result<Self> {
        if let Some(first) = ranked.first() {
            if first.symbol != RankSymbol::Top {
                return Err(Error::Invalid(
                    "first ranked class must carry the TOP symbol".into(),
                ));
            }
        }
        if ranked.iter().skip(1).any(|rc| rc.symbol == RankSymbol::Top) {
            return Err(Error::Invalid(
                "only the first ranked class may carry TOP".into(),
            ));
        }
        if ranked.windows(2).any(|w| w[0].confidence < w[1].confidence) {
            return Err(Error::Invalid(
                "ranked classes must be in descending confidence order".into(),
            ));
        }
        if ranked.iter().any(|rc| rc.confidence <= 0.0) {
            return Err(Error::Invalid(
                "ranked classes must have positive confidence".into(),
            ));
        }
        if excluded.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "excluded set must be strictly ascending".into(),
            ));
        }
        let k = ranked.len() + excluded.len();
        let mut seen = vec![false; k];
        for class in ranked
            .iter()
            .map(|rc| rc.class)
            .chain(excluded.iter().copied())
        {
            if class >= k || seen[class] {
                return Err(Error::Invalid(
                    "ranked and excluded classes must cover 0..K exactly once".into(),
                ));
            }
            seen[class] = true;
        }
        Ok(Self { ranked, excluded })
    }

    pub fn ranked(&self) -> &[RankedClass] {
        &self.ranked
    }

    /// Classes with confidence exactly zero, ascending.
    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    pub fn num_classes(&self) -> usize {
        self.ranked.len() + self.excluded.len()
    }
}

/// Parameters of the multi-label correctness score.
///
/// `alpha` is the forgiveness rate; `beta_w` weighs missed labels and
/// `gamma_w` weighs false positives. `alpha_cut`, when present, zeroes
/// confidences below the threshold before binarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalParams {
    pub alpha: f64,
    pub beta_w: f64,
    pub gamma_w: f64,
    pub alpha_cut: Option<f64>,
}

impl EvalParams {
    pub fn new(alpha: f64, beta_w: f64, gamma_w: f64, alpha_cut: Option<f64>) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParam {
                name: "alpha",
                msg: format!("must be finite and >= 0, got {alpha}"),
            });
        }
        if !beta_w.is_finite() || beta_w <= 0.0 {
            return Err(Error::InvalidParam {
                name: "beta",
                msg: format!("must be finite and > 0, got {beta_w}"),
            });
        }
        if !gamma_w.is_finite() || gamma_w <= 0.0 {
            return Err(Error::InvalidParam {
                name: "gamma",
                msg: format!("must be finite and > 0, got {gamma_w}"),
            });
        }
        if let Some(tau) = alpha_cut {
            if !tau.is_finite() || !(0.0..1.0).contains(&tau) {
                return Err(Error::InvalidParam {
                    name: "alpha_cut",
                    msg: format!("must lie in [0, 1), got {tau}"),
                });
            }
        }
        Ok(Self {
            alpha,
            beta_w,
            gamma_w,
            alpha_cut,
        })
    }
}

impl Default for EvalParams {
    /// alpha = 0.5, beta = gamma = 1, no cut.
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta_w: 1.0,
            gamma_w: 1.0,
            alpha_cut: None,
        }
    }
}

/// Aggregate evaluation results over a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    accuracy: f64,
    mean_similarity: f64,
    error_mean: Vec<f64>,
    error_std: Vec<f64>,
    f_scores: Vec<f64>,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || !(0.0..=1.0).contains(&v) {
        return Err(Error::Invalid(format!(
            "{name} must lie in [0, 1], got {v}"
        )));
    }
    Ok(())
}

impl EvalReport {
    pub fn new(
        accuracy: f64,
        mean_similarity: f64,
        error_mean: Vec<f64>,
        error_std: Vec<f64>,
        f_scores: Vec<f64>,
    ) -> Result<Self> {
        check_unit("accuracy", accuracy)?;
        check_unit("mean_similarity", mean_similarity)?;
        let k = f_scores.len();
        if error_mean.len() != k || error_std.len() != k {
            return Err(Error::Invalid(
                "per-class report vectors must have equal length".into(),
            ));
        }
        for (name, vs) in [
            ("error_mean", &error_mean),
            ("error_std", &error_std),
            ("f_score", &f_scores),
        ] {
            for &v in vs.iter() {
                check_unit(name, v)?;
            }
        }
        Ok(Self {
            accuracy,
            mean_similarity,
            error_mean,
            error_std,
            f_scores,
        })
    }

    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    pub fn mean_similarity(&self) -> f64 {
        self.mean_similarity
    }

    pub fn error_mean(&self) -> &[f64] {
        &self.error_mean
    }

    pub fn error_std(&self) -> &[f64] {
        &self.error_std
    }

    pub fn f_scores(&self) -> &[f64] {
        &self.f_scores
    }

    /// Average of the per-class error standard deviations, the headline
    /// deviation number.
    pub fn mean_error_std(&self) -> f64 {
        if self.error_std.is_empty() {
            return 0.0;
        }
        self.error_std.iter().sum::<f64>() / self.error_std.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feature_vector_rejects_non_finite() {
        assert!(FeatureVector::new(vec![0.0, f64::NAN]).is_err());
        assert!(FeatureVector::new(vec![0.0, f64::INFINITY]).is_err());
        assert!(FeatureVector::new(vec![]).is_err());
        assert!(FeatureVector::new(vec![-0.1545, -1.7597]).is_ok());
    }

    #[test]
    fn four_tuple_rejects_inverted_plateau() {
        assert!(FourTuple::new(2.0, 1.0, 0.0, 0.0).is_err());
        assert!(FourTuple::new(1.0, 1.0, 0.0, 0.0).is_ok());
        assert!(FourTuple::new(0.0, 1.0, -0.1, 0.0).is_err());
    }

    #[test]
    fn four_tuple_permits_negative_plateau() {
        // Learned tuples over negative-valued attributes are legal.
        let t = FourTuple::new(-2.0, -1.0, 0.5, 0.5).unwrap();
        assert_eq!(t.support(), (-2.5, -0.5));
    }

    #[test]
    fn model_checks_grid_shape_and_names() {
        let t = FourTuple::new(0.0, 1.0, 0.0, 0.0).unwrap();
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(
            MembershipModel::new(vec![t; 6], names(&["f1", "f2"]), names(&["a", "b", "c"])).is_ok()
        );
        assert!(
            MembershipModel::new(vec![t; 5], names(&["f1", "f2"]), names(&["a", "b", "c"]))
                .is_err()
        );
        assert!(
            MembershipModel::new(vec![t; 4], names(&["f1", "f2"]), names(&["a", "a"])).is_err()
        );
        assert!(MembershipModel::new(vec![t; 2], names(&["f1", ""]), names(&["a"])).is_err());
    }

    #[test]
    fn model_indexing_is_feature_major() {
        let mk = |a: f64| FourTuple::new(a, a, 0.0, 0.0).unwrap();
        let tuples = vec![mk(0.0), mk(1.0), mk(2.0), mk(3.0), mk(4.0), mk(5.0)];
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let m =
            MembershipModel::new(tuples, names(&["f1", "f2"]), names(&["a", "b", "c"])).unwrap();
        assert_eq!(m.tuple(0, 2).a(), 2.0);
        assert_eq!(m.tuple(1, 0).a(), 3.0);
    }

    #[test]
    fn distribution_sentinel_and_sum_are_exclusive() {
        let d = ClassDistribution::from_confidences(vec![0.0, 0.0]).unwrap();
        assert!(d.is_all_zero());
        let d = ClassDistribution::from_confidences(vec![0.5, 0.5]).unwrap();
        assert!(!d.is_all_zero());
        assert!(ClassDistribution::from_confidences(vec![0.5, 0.4]).is_err());
        assert!(ClassDistribution::from_confidences(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn distribution_from_weights_normalizes() {
        let d = ClassDistribution::from_weights(&[0.5, 0.25, 0.0]).unwrap();
        assert_eq!(d.confidences(), &[2.0 / 3.0, 1.0 / 3.0, 0.0]);
        let d = ClassDistribution::from_weights(&[0.0, 0.0]).unwrap();
        assert!(d.is_all_zero());
        assert_eq!(d.confidences(), &[0.0, 0.0]);
    }

    #[test]
    fn eval_params_validation() {
        assert!(EvalParams::new(0.0, 1.0, 1.0, None).is_ok());
        assert!(EvalParams::new(-0.1, 1.0, 1.0, None).is_err());
        assert!(EvalParams::new(0.5, 0.0, 1.0, None).is_err());
        assert!(EvalParams::new(0.5, 1.0, 1.0, Some(1.0)).is_err());
        assert!(EvalParams::new(0.5, 1.0, 1.0, Some(0.01)).is_ok());
    }

    #[test]
    fn report_rejects_out_of_range_scalars() {
        assert!(EvalReport::new(1.1, 0.5, vec![0.0], vec![0.0], vec![0.0]).is_err());
        assert!(EvalReport::new(0.9, 0.5, vec![0.0, 0.1], vec![0.0], vec![0.0]).is_err());
        let r = EvalReport::new(0.9, 0.5, vec![0.1, 0.3], vec![0.2, 0.4], vec![1.0, 0.5]).unwrap();
        assert!((r.mean_error_std() - 0.3).abs() < 1e-12);
    }
}
