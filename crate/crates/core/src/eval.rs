//! Evaluation metrics for multi-label predictions: graded correctness
//! scoring, cosine similarity of confidence distributions, per-class
//! error statistics and one-vs-rest F-scores.

use crate::error::{Error, Result};
use crate::types::{ClassDistribution, EvalParams};

/// A subset of the K classes, used as a binarized label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet {
    bits: Vec<bool>,
}

impl LabelSet {
    pub fn empty(num_classes: usize) -> Self {
        Self {
            bits: vec![false; num_classes],
        }
    }

    pub fn from_indices(num_classes: usize, indices: &[usize]) -> Result<Self> {
        let mut set = Self::empty(num_classes);
        for &k in indices {
            if k >= num_classes {
                return Err(Error::Invalid(format!(
                    "label index {k} out of range for {num_classes} classes"
                )));
            }
            set.bits[k] = true;
        }
        Ok(set)
    }

    /// Binarizes a distribution: every class with positive confidence.
    pub fn from_distribution(d: &ClassDistribution) -> Self {
        Self {
            bits: d.confidences().iter().map(|&r| r > 0.0).collect(),
        }
    }

    pub fn num_classes(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, class: usize) -> bool {
        self.bits.get(class).copied().unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| k)
            .collect()
    }

    fn count_pairs(&self, other: &LabelSet) -> (usize, usize, usize) {
        // (missed, false positive, union)
        let mut missed = 0;
        let mut false_pos = 0;
        let mut union = 0;
        for (&t, &p) in self.bits.iter().zip(&other.bits) {
            if t && !p {
                missed += 1;
            }
            if p && !t {
                false_pos += 1;
            }
            if t || p {
                union += 1;
            }
        }
        (missed, false_pos, union)
    }
}

/// Graded correctness of a predicted label set against the truth:
/// `(1 - |beta*M + gamma*Q| / |Y u W|)^alpha`, with `M` the missed labels
/// and `Q` the false positives.
///
/// The base is clamped to `[0, 1]` before exponentiation, and a zero base
/// scores zero at every alpha, so a fully incorrect prediction is never
/// forgiven.
pub fn alpha_score(predicted: &LabelSet, truth: &LabelSet, p: &EvalParams) -> Result<f64> {
    if predicted.num_classes() != truth.num_classes() {
        return Err(Error::DimensionMismatch {
            expected: truth.num_classes(),
            got: predicted.num_classes(),
        });
    }
    if predicted.is_empty() && truth.is_empty() {
        return Err(Error::UndefinedUnion);
    }
    let (missed, false_pos, union) = truth.count_pairs(predicted);
    let penalty = (p.beta_w * missed as f64 + p.gamma_w * false_pos as f64) / union as f64;
    let base = (1.0 - penalty).clamp(0.0, 1.0);
    if base == 0.0 {
        Ok(0.0)
    } else {
        Ok(base.powf(p.alpha))
    }
}

/// Mean [`alpha_score`] over a dataset of (predicted, truth) pairs.
pub fn dataset_accuracy(pairs: &[(LabelSet, LabelSet)], p: &EvalParams) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Invalid(
            "cannot average over an empty dataset".into(),
        ));
    }
    let mut total = 0.0;
    for (predicted, truth) in pairs {
        total += alpha_score(predicted, truth, p)?;
    }
    Ok(total / pairs.len() as f64)
}

/// Cosine of the angle between two confidence distributions, in `[0, 1]`
/// for non-negative entries. 1 means identical shape.
pub fn distribution_similarity(
    predicted: &ClassDistribution,
    reference: &ClassDistribution,
) -> Result<f64> {
    if predicted.num_classes() != reference.num_classes() {
        return Err(Error::DimensionMismatch {
            expected: reference.num_classes(),
            got: predicted.num_classes(),
        });
    }
    if predicted.is_all_zero() || reference.is_all_zero() {
        return Err(Error::ZeroNorm);
    }
    let dot: f64 = predicted
        .confidences()
        .iter()
        .zip(reference.confidences())
        .map(|(a, b)| a * b)
        .sum();
    let norm = |d: &ClassDistribution| d.confidences().iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok((dot / (norm(predicted) * norm(reference))).clamp(0.0, 1.0))
}

/// Per-class mean and (population) standard deviation of the absolute
/// error `|predicted - reference|` across samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl ErrorStats {
    /// Average of the per-class standard deviations.
    pub fn mean_std(&self) -> f64 {
        if self.std.is_empty() {
            return 0.0;
        }
        self.std.iter().sum::<f64>() / self.std.len() as f64
    }
}

/// Error statistics over (predicted, reference) distribution pairs.
pub fn error_stats(pairs: &[(ClassDistribution, ClassDistribution)]) -> Result<ErrorStats> {
    if pairs.is_empty() {
        return Err(Error::Invalid(
            "cannot compute error statistics of an empty dataset".into(),
        ));
    }
    let k = pairs[0].0.num_classes();
    for (predicted, reference) in pairs {
        if predicted.num_classes() != k || reference.num_classes() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: predicted.num_classes().max(reference.num_classes()),
            });
        }
    }
    let n = pairs.len() as f64;
    let mut mean = vec![0.0; k];
    for (predicted, reference) in pairs {
        for (c, m) in mean.iter_mut().enumerate() {
            *m += (predicted.confidences()[c] - reference.confidences()[c]).abs();
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let mut std = vec![0.0; k];
    for (predicted, reference) in pairs {
        for (c, s) in std.iter_mut().enumerate() {
            let err = (predicted.confidences()[c] - reference.confidences()[c]).abs();
            *s += (err - mean[c]) * (err - mean[c]);
        }
    }
    for s in std.iter_mut() {
        *s = (*s / n).sqrt();
    }
    Ok(ErrorStats { mean, std })
}

/// One-vs-rest F-score per class for single-label predictions.
///
/// `F = 2 * precision * recall / (precision + recall)`, 0 when both are
/// zero (a class never predicted and never true scores 0 by convention).
pub fn f_score(predicted: &[usize], truth: &[usize], num_classes: usize) -> Result<Vec<f64>> {
    let opt: Vec<Option<usize>> = predicted.iter().map(|&p| Some(p)).collect();
    f_score_with_abstentions(&opt, truth, num_classes)
}

/// [`f_score`] variant where a prediction may abstain (`None`), counting
/// as a miss for the true class.
pub fn f_score_with_abstentions(
    predicted: &[Option<usize>],
    truth: &[usize],
    num_classes: usize,
) -> Result<Vec<f64>> {
    if predicted.is_empty() || predicted.len() != truth.len() {
        return Err(Error::Invalid(format!(
            "need equal-length non-empty label lists, got {} predictions for {} truths",
            predicted.len(),
            truth.len()
        )));
    }
    for label in predicted.iter().flatten().chain(truth.iter()) {
        if *label >= num_classes {
            return Err(Error::UnknownLabel(format!(
                "class index {label} of {num_classes}"
            )));
        }
    }
    let mut tp = vec![0usize; num_classes];
    let mut fp = vec![0usize; num_classes];
    let mut fn_ = vec![0usize; num_classes];
    for (&p, &t) in predicted.iter().zip(truth) {
        match p {
            Some(p) if p == t => tp[t] += 1,
            Some(p) => {
                fp[p] += 1;
                fn_[t] += 1;
            }
            None => fn_[t] += 1,
        }
    }
    let scores = (0..num_classes)
        .map(|c| {
            let precision = if tp[c] + fp[c] > 0 {
                tp[c] as f64 / (tp[c] + fp[c]) as f64
            } else {
                0.0
            };
            let recall = if tp[c] + fn_[c] > 0 {
                tp[c] as f64 / (tp[c] + fn_[c]) as f64
            } else {
                0.0
            };
            if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            }
        })
        .collect();
    Ok(scores)
}

/// Unweighted mean of the per-class F-scores.
pub fn macro_f_score(per_class: &[f64]) -> f64 {
    if per_class.is_empty() {
        return 0.0;
    }
    per_class.iter().sum::<f64>() / per_class.len() as f64
}
