//! Single-label baseline classifier: plain k-nearest-neighbour with
//! Euclidean distance and majority voting.

use crate::error::{Error, Result};
use crate::types::{FeatureVector, LabeledSample};

/// Default neighbour count.
pub const DEFAULT_K: usize = 5;

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Majority label among the `k` nearest training samples.
///
/// Vote ties break to the class with the smaller mean distance among its
/// voters, then to the lower class index. Equidistant samples at the
/// neighbourhood boundary are taken in training order.
pub fn knn_classify<'a, I>(train: I, query: &FeatureVector, k: usize) -> Result<usize>
where
    I: IntoIterator<Item = &'a LabeledSample>,
{
    let train: Vec<&LabeledSample> = train.into_iter().collect();
    if train.is_empty() {
        return Err(Error::Invalid(
            "knn requires a non-empty training set".into(),
        ));
    }
    if k == 0 || k > train.len() {
        return Err(Error::InvalidParam {
            name: "k",
            msg: format!("must lie in 1..={}, got {k}", train.len()),
        });
    }
    let dim = train[0].features.len();
    if query.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: query.len(),
        });
    }

    let mut by_distance: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s.features.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: s.features.len(),
                });
            }
            Ok((euclidean(s.features.values(), query.values()), i))
        })
        .collect::<Result<_>>()?;
    // stable: equal distances keep training order
    by_distance.sort_by(|(da, _), (db, _)| da.partial_cmp(db).unwrap());

    // (votes, total distance) per class among the k nearest
    let mut votes: std::collections::BTreeMap<usize, (usize, f64)> = Default::default();
    for &(d, i) in &by_distance[..k] {
        let entry = votes.entry(train[i].label).or_insert((0, 0.0));
        entry.0 += 1;
        entry.1 += d;
    }

    let mut best: Option<(usize, usize, f64)> = None; // (class, votes, mean distance)
    for (&class, &(count, total)) in &votes {
        let mean = total / count as f64;
        let better = match best {
            None => true,
            Some((_, best_count, best_mean)) => {
                count > best_count || (count == best_count && mean < best_mean)
            }
        };
        if better {
            best = Some((class, count, mean));
        }
    }
    Ok(best.expect("k >= 1 guarantees at least one vote").0)
}
