//! Synthetic data generation shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fqrc_core::{FeatureVector, LabeledSample};

/// Deterministic sample table: `classes` clusters in `features`
/// dimensions with overlapping gaussian-ish spread.
pub fn synthetic_samples(
    samples: usize,
    features: usize,
    classes: usize,
    seed: u64,
) -> (Vec<LabeledSample>, Vec<String>, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let class = i % classes;
        let center = class as f64 * 1.5;
        let values: Vec<f64> = (0..features)
            .map(|f| center + f as f64 * 0.1 + rng.gen_range(-1.0..1.0))
            .collect();
        out.push(LabeledSample::new(
            FeatureVector::new(values).unwrap(),
            class,
        ));
    }
    let feature_names = (0..features).map(|f| format!("f{f}")).collect();
    let class_names = (0..classes).map(|c| format!("c{c}")).collect();
    (out, feature_names, class_names)
}
