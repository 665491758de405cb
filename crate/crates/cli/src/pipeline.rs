//! Experiment driver: runs a classification protocol over a dataset and
//! aggregates the metric suite into an [`EvalReport`].
//!
//! Reference distributions come from the dataset's `ref:` columns when
//! present, otherwise from the one-hot encoding of the true label. Label
//! sets are the binarized (positive-confidence) distributions; predicted
//! distributions that are all-zero contribute a similarity of 0 and count
//! as an abstention for the per-class F-scores.

use fqrc_core::baselines::knn_classify;
use fqrc_core::data::{Dataset, SplitManifest};
use fqrc_core::eval::{
    alpha_score, distribution_similarity, error_stats, f_score_with_abstentions, LabelSet,
};
use fqrc_core::infer::{alpha_cut, classify_binary, infer};
use fqrc_core::learn::train;
use fqrc_core::{
    ClassDistribution, Error, EvalParams, EvalReport, FeatureVector, LabeledSample, Result,
};

/// Classifier under evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classifier {
    Fqrc,
    Knn { k: usize },
}

/// Which rows test against which training data.
#[derive(Debug, Clone)]
pub enum Protocol {
    /// N folds, each testing the one sample left out of training.
    LeaveOneOut,
    /// A single split driven by a row manifest.
    Manifest(SplitManifest),
}

/// Everything the driver needs besides the data.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub classifier: Classifier,
    pub bins: usize,
    pub params: EvalParams,
    pub cut_sides: CutSides,
}

/// Which side(s) of the comparison an `alpha_cut` threshold applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutSides {
    #[default]
    Both,
    Predicted,
    Reference,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            classifier: Classifier::Fqrc,
            bins: fqrc_core::learn::DEFAULT_BINS,
            params: EvalParams::default(),
            cut_sides: CutSides::Both,
        }
    }
}

/// One evaluated sample: its predicted / reference distributions and
/// single labels, in dataset row order.
#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub row: usize,
    pub predicted: ClassDistribution,
    pub reference: ClassDistribution,
    pub predicted_label: Option<usize>,
    pub truth_label: usize,
}

/// Runs the protocol and aggregates the metric suite.
pub fn evaluate(ds: &Dataset, protocol: &Protocol, cfg: &EvalConfig) -> Result<EvalReport> {
    let outcomes = run_protocol(ds, protocol, cfg)?;
    aggregate(&outcomes, ds.num_classes(), &cfg.params, cfg.cut_sides)
}

/// Runs the protocol, returning per-sample outcomes (pre-cut).
pub fn run_protocol(
    ds: &Dataset,
    protocol: &Protocol,
    cfg: &EvalConfig,
) -> Result<Vec<SampleOutcome>> {
    match protocol {
        Protocol::LeaveOneOut => {
            let mut outcomes = Vec::with_capacity(ds.len());
            for fold in ds.leave_one_out()? {
                let predicted =
                    classify_sample(fold.train.iter().copied(), ds, &fold.test.features, cfg)?;
                outcomes.push(outcome(ds, fold.test_index, fold.test, predicted)?);
            }
            Ok(outcomes)
        }
        Protocol::Manifest(manifest) => {
            let (train_ds, test_ds) = ds.fixed_split(manifest)?;
            if test_ds.is_empty() {
                return Err(Error::Invalid(
                    "manifest assigns no test rows; nothing to evaluate".into(),
                ));
            }
            let mut outcomes = Vec::with_capacity(test_ds.len());
            for (i, sample) in test_ds.samples().iter().enumerate() {
                let predicted =
                    classify_sample(train_ds.samples(), &test_ds, &sample.features, cfg)?;
                outcomes.push(outcome(&test_ds, i, sample, predicted)?);
            }
            Ok(outcomes)
        }
    }
}

fn classify_sample<'a, I>(
    train_samples: I,
    ds: &Dataset,
    features: &FeatureVector,
    cfg: &EvalConfig,
) -> Result<ClassDistribution>
where
    I: IntoIterator<Item = &'a LabeledSample>,
{
    match cfg.classifier {
        Classifier::Fqrc => {
            let model = train(
                train_samples,
                ds.feature_names(),
                ds.class_names(),
                cfg.bins,
            )?;
            infer(&model, features)
        }
        Classifier::Knn { k } => {
            let label = knn_classify(train_samples, features, k)?;
            let mut one_hot = vec![0.0; ds.num_classes()];
            one_hot[label] = 1.0;
            ClassDistribution::from_confidences(one_hot)
        }
    }
}

fn outcome(
    ds: &Dataset,
    row: usize,
    sample: &LabeledSample,
    predicted: ClassDistribution,
) -> Result<SampleOutcome> {
    let reference = match ds.reference_distributions() {
        Some(refs) => refs[row].clone(),
        None => {
            let mut one_hot = vec![0.0; ds.num_classes()];
            one_hot[sample.label] = 1.0;
            ClassDistribution::from_confidences(one_hot)?
        }
    };
    let predicted_label = classify_binary(&predicted).ok();
    Ok(SampleOutcome {
        row,
        predicted,
        reference,
        predicted_label,
        truth_label: sample.label,
    })
}

/// Folds per-sample outcomes into the report, applying the configured
/// alpha-cut first.
pub fn aggregate(
    outcomes: &[SampleOutcome],
    num_classes: usize,
    params: &EvalParams,
    cut_sides: CutSides,
) -> Result<EvalReport> {
    if outcomes.is_empty() {
        return Err(Error::Invalid("no samples to evaluate".into()));
    }

    let cut = |d: &ClassDistribution, side: CutSides| -> Result<ClassDistribution> {
        match params.alpha_cut {
            Some(tau) if cut_sides == CutSides::Both || cut_sides == side => alpha_cut(d, tau),
            _ => Ok(d.clone()),
        }
    };

    let mut label_pairs = Vec::with_capacity(outcomes.len());
    let mut dist_pairs = Vec::with_capacity(outcomes.len());
    let mut similarity_total = 0.0;
    let mut predicted_labels = Vec::with_capacity(outcomes.len());
    let mut truth_labels = Vec::with_capacity(outcomes.len());

    for o in outcomes {
        let predicted = cut(&o.predicted, CutSides::Predicted)?;
        let reference = cut(&o.reference, CutSides::Reference)?;

        label_pairs.push((
            LabelSet::from_distribution(&predicted),
            LabelSet::from_distribution(&reference),
        ));
        // samples outside every learned support are maximally dissimilar
        similarity_total += match distribution_similarity(&predicted, &reference) {
            Ok(s) => s,
            Err(Error::ZeroNorm) => 0.0,
            Err(e) => return Err(e),
        };
        predicted_labels.push(classify_binary(&predicted).ok());
        truth_labels.push(o.truth_label);
        dist_pairs.push((predicted, reference));
    }

    let mut accuracy_total = 0.0;
    for (predicted, truth) in &label_pairs {
        accuracy_total += alpha_score(predicted, truth, params)?;
    }
    let n = outcomes.len() as f64;
    let stats = error_stats(&dist_pairs)?;
    let f_scores = f_score_with_abstentions(&predicted_labels, &truth_labels, num_classes)?;

    EvalReport::new(
        accuracy_total / n,
        similarity_total / n,
        stats.mean,
        stats.std,
        f_scores,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use fqrc_core::data::{parse_csv, LoadOptions};

    fn separable() -> Dataset {
        // Heavy duplication keeps every extreme-value bin dominant after
        // any single removal, so each held-out sample stays on its own
        // class's plateau.
        let mut text = String::from("f:x,f:y,label\n");
        for (base, label) in [(0.0, "a"), (10.0, "b"), (20.0, "c")] {
            let offsets = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5];
            for offset in offsets {
                text.push_str(&format!(
                    "{},{},{}\n",
                    base + offset,
                    base * 2.0 + offset,
                    label
                ));
            }
        }
        parse_csv(&text, "separable.csv", &LoadOptions::default()).unwrap()
    }

    #[test]
    fn separable_loo_fqrc_is_fully_correct_at_alpha_zero() {
        let ds = separable();
        let cfg = EvalConfig {
            params: EvalParams::new(0.0, 1.0, 1.0, None).unwrap(),
            ..EvalConfig::default()
        };
        let report = evaluate(&ds, &Protocol::LeaveOneOut, &cfg).unwrap();
        assert_eq!(report.accuracy(), 1.0);
        assert_eq!(report.f_scores(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn separable_loo_knn_k1_is_fully_correct() {
        let ds = separable();
        let cfg = EvalConfig {
            classifier: Classifier::Knn { k: 1 },
            params: EvalParams::new(0.0, 1.0, 1.0, None).unwrap(),
            ..EvalConfig::default()
        };
        let report = evaluate(&ds, &Protocol::LeaveOneOut, &cfg).unwrap();
        assert_eq!(report.accuracy(), 1.0);
        assert_eq!(report.mean_similarity(), 1.0);
    }

    #[test]
    fn manifest_protocol_trains_on_train_rows_only() {
        let ds = separable();
        // hold out the second 0.5-duplicate of each class (rows 11, 23, 35)
        let lines: Vec<String> = (0..ds.len())
            .map(|i| format!("{i},{}", if i % 12 == 11 { "test" } else { "train" }))
            .collect();
        let manifest = SplitManifest::parse(&lines.join("\n"), "m").unwrap();
        let cfg = EvalConfig::default();
        let report = evaluate(&ds, &Protocol::Manifest(manifest), &cfg).unwrap();
        assert_eq!(report.accuracy(), 1.0);
        assert_eq!(report.f_scores(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn all_train_manifest_is_an_error() {
        let ds = separable();
        let lines: Vec<String> = (0..ds.len()).map(|i| format!("{i},train")).collect();
        let manifest = SplitManifest::parse(&lines.join("\n"), "m").unwrap();
        assert!(evaluate(&ds, &Protocol::Manifest(manifest), &EvalConfig::default()).is_err());
    }

    #[test]
    fn reference_columns_drive_the_metrics() {
        // constant-valued classes, so held-out samples predict one-hot
        let text = "f:x,label,ref:a,ref:b\n\
                    0.0,a,0.5,0.5\n\
                    0.0,a,0.5,0.5\n\
                    0.0,a,0.5,0.5\n\
                    10.0,b,0.5,0.5\n\
                    10.0,b,0.5,0.5\n\
                    10.0,b,0.5,0.5\n";
        let ds = parse_csv(text, "refs.csv", &LoadOptions::default()).unwrap();
        let cfg = EvalConfig::default();
        let report = evaluate(&ds, &Protocol::LeaveOneOut, &cfg).unwrap();
        // prediction is one-hot, reference splits evenly:
        // cosine = 0.5 / (1 * sqrt(0.5)) = 1/sqrt(2)
        assert!((report.mean_similarity() - 1.0 / 2.0f64.sqrt()).abs() < 1e-9);
        // alpha-score per sample: one missed label over a union of two
        let expected = (1.0f64 - 0.5).powf(0.5);
        assert!((report.accuracy() - expected).abs() < 1e-9);
    }

    #[test]
    fn alpha_cut_sides_are_honoured() {
        let text = "f:x,label,ref:a,ref:b\n\
                    0.0,a,0.995,0.005\n\
                    0.0,a,0.995,0.005\n\
                    0.0,a,0.995,0.005\n\
                    10.0,b,0.005,0.995\n\
                    10.0,b,0.005,0.995\n\
                    10.0,b,0.005,0.995\n";
        let ds = parse_csv(text, "refs.csv", &LoadOptions::default()).unwrap();
        let mut cfg = EvalConfig {
            params: EvalParams::new(0.5, 1.0, 1.0, Some(0.01)).unwrap(),
            cut_sides: CutSides::Reference,
            ..EvalConfig::default()
        };
        let report = evaluate(&ds, &Protocol::LeaveOneOut, &cfg).unwrap();
        // the cut removes class b from the reference, making it one-hot
        assert_eq!(report.accuracy(), 1.0);
        assert_eq!(report.mean_similarity(), 1.0);

        cfg.cut_sides = CutSides::Predicted;
        let report = evaluate(&ds, &Protocol::LeaveOneOut, &cfg).unwrap();
        // reference keeps both labels, prediction stays one-hot: one miss
        assert!((report.accuracy() - 0.5f64.sqrt()).abs() < 1e-9);
    }
}
