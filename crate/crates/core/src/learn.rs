//! Learning stage: per-(feature, class) histograms and trapezoid
//! extraction.
//!
//! For every feature `j` and class `k` the training values are binned
//! into `B` equal-width bins. Bins whose occupancy strictly exceeds the
//! mean occupancy over non-empty bins form the dominant region; its hull
//! becomes the plateau `[a, b]`, and the observed value range supplies
//! the support `[a - alpha, b + beta]`.

use crate::error::{Error, Result};
use crate::types::{FourTuple, HistogramSummary, LabeledSample, MembershipModel};

/// Default bin count for histogram construction.
pub const DEFAULT_BINS: usize = 50;

/// Bins `values` into `bins` equal-width bins spanning
/// `[min(values), max(values)]`.
///
/// Every bin is half-open `[edge_i, edge_{i+1})` except the last, which
/// is closed on the right so the maximum value is counted. A zero-range
/// input (all values equal) degenerates to a single occupied bin; the
/// edges then all coincide.
pub fn build_histogram(values: &[f64], bins: usize) -> Result<HistogramSummary> {
    if values.is_empty() {
        return Err(Error::Invalid("no training data: empty value list".into()));
    }
    if bins == 0 {
        return Err(Error::InvalidParam {
            name: "bins",
            msg: "must be >= 1".into(),
        });
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Invalid(format!("non-finite training value {v}")));
    }

    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut counts = vec![0usize; bins];
    let edges: Vec<f64> = if lo == hi {
        counts[0] = values.len();
        vec![lo; bins + 1]
    } else {
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        edges[bins] = hi; // pin the last edge against accumulated rounding
        for &x in values {
            counts[bin_index(&edges, x)] += 1;
        }
        edges
    };

    HistogramSummary::new(edges, counts)
}

/// Bin of `x` given ascending `edges`: the `i` with
/// `edges[i] <= x < edges[i + 1]`, with the last bin right-closed.
fn bin_index(edges: &[f64], x: f64) -> usize {
    let bins = edges.len() - 1;
    edges
        .partition_point(|&e| e <= x)
        .saturating_sub(1)
        .min(bins - 1)
}

/// Extracts the trapezoid from a histogram and the values it was built
/// from.
///
/// Dominant bins are those with occupancy strictly above the mean over
/// non-empty bins. `a`/`b` are the hull edges of the dominant bins; if no
/// bin is strictly above the mean (perfectly uniform occupancy) every
/// non-empty bin counts as dominant. The support always equals the
/// observed value range.
pub fn extract_four_tuple(hist: &HistogramSummary, values: &[f64]) -> Result<FourTuple> {
    if values.is_empty() {
        return Err(Error::Invalid(
            "no values for tuple extraction: empty input".into(),
        ));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mu = hist.mean_occupancy();
    let dominant = |c: usize| c as f64 > mu;
    let (first, last) = if hist.counts().iter().any(|&c| dominant(c)) {
        let first = hist.counts().iter().position(|&c| dominant(c)).unwrap();
        let last = hist.counts().iter().rposition(|&c| dominant(c)).unwrap();
        (first, last)
    } else {
        // uniform occupancy: treat every non-empty bin as dominant
        let first = hist.counts().iter().position(|&c| c > 0).unwrap();
        let last = hist.counts().iter().rposition(|&c| c > 0).unwrap();
        (first, last)
    };

    let a = hist.bin_edges()[first];
    let b = hist.bin_edges()[last + 1];
    FourTuple::with_support(a, b, lo, hi)
}

/// Learns the full J x K membership grid from labeled samples.
///
/// Every class must contribute at least one sample and every sample must
/// agree on the feature count J. Cells are independent, so sample order
/// within a class does not affect the result.
pub fn train<'a, I>(
    samples: I,
    feature_names: &[String],
    class_names: &[String],
    bins: usize,
) -> Result<MembershipModel>
where
    I: IntoIterator<Item = &'a LabeledSample>,
{
    let j = feature_names.len();
    let k = class_names.len();

    // per-class, per-feature value lists
    let mut cells: Vec<Vec<f64>> = vec![Vec::new(); j * k];
    for sample in samples {
        let label = sample.label;
        if label >= k {
            return Err(Error::UnknownLabel(format!("class index {label} of {k}")));
        }
        if sample.features.len() != j {
            return Err(Error::DimensionMismatch {
                expected: j,
                got: sample.features.len(),
            });
        }
        for (feature, &x) in sample.features.values().iter().enumerate() {
            cells[feature * k + label].push(x);
        }
    }

    for (class, name) in class_names.iter().enumerate() {
        if cells[class].is_empty() {
            return Err(Error::EmptyClass(name.clone()));
        }
    }

    let mut tuples = Vec::with_capacity(j * k);
    for feature in 0..j {
        for class in 0..k {
            let values = &cells[feature * k + class];
            let hist = build_histogram(values, bins).map_err(|e| match e {
                Error::Invalid(_) => Error::NoTrainingData {
                    class: class_names[class].clone(),
                    feature: feature_names[feature].clone(),
                },
                other => other,
            })?;
            tuples.push(extract_four_tuple(&hist, values)?);
        }
    }

    MembershipModel::new(tuples, feature_names.to_vec(), class_names.to_vec())
}
