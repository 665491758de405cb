//! Inference stage: trapezoid membership evaluation, per-class products
//! and confidence normalization.

use crate::error::{Error, Result};
use crate::types::{ClassDistribution, FeatureVector, FourTuple, MembershipModel};

/// Degree of membership of `x` in the trapezoid `t`, in `[0, 1]`.
///
/// Piecewise linear: zero outside the support, 1 on the plateau `[a, b]`
/// and linear on the ramps. A zero-width ramp is a step: membership jumps
/// to 1 exactly at the plateau edge.
pub fn membership(t: &FourTuple, x: f64) -> f64 {
    // Branch order makes the zero-width ramps fall through to their
    // neighbours, so the ramp divisions below never see a zero width.
    let (lo, hi) = t.support();
    if x < lo {
        0.0
    } else if x < t.a() {
        (x - lo) / (t.a() - lo)
    } else if x <= t.b() {
        1.0
    } else if x <= hi {
        (hi - x) / (hi - t.b())
    } else {
        0.0
    }
}

/// Per-class confidence distribution for one feature vector.
///
/// Each class confidence is the product of that class's feature
/// memberships, normalized across classes. A sample outside every
/// class's support yields the all-zero sentinel.
pub fn infer(model: &MembershipModel, x: &FeatureVector) -> Result<ClassDistribution> {
    if x.len() != model.num_features() {
        return Err(Error::DimensionMismatch {
            expected: model.num_features(),
            got: x.len(),
        });
    }
    let products = membership_products(model, x);
    ClassDistribution::from_weights(&products)
}

/// Raw per-class products of feature memberships, before normalization.
pub fn membership_products(model: &MembershipModel, x: &FeatureVector) -> Vec<f64> {
    let k = model.num_classes();
    let mut products = vec![1.0; k];
    for (feature, &value) in x.values().iter().enumerate() {
        for (class, product) in products.iter_mut().enumerate() {
            *product *= membership(model.tuple(feature, class), value);
        }
    }
    products
}

/// Combines an externally supplied membership grid into a normalized
/// distribution. `memberships[k]` lists the per-feature memberships of
/// class `k`.
pub fn confidences_from_memberships(memberships: &[Vec<f64>]) -> Result<ClassDistribution> {
    let products: Vec<f64> = memberships
        .iter()
        .map(|class| class.iter().product())
        .collect();
    ClassDistribution::from_weights(&products)
}

/// Zeroes confidences below `tau` and renormalizes the survivors.
///
/// If every entry falls below `tau` the distribution is returned
/// unchanged (this also covers the all-zero sentinel). `tau = 0` is the
/// identity.
pub fn alpha_cut(d: &ClassDistribution, tau: f64) -> Result<ClassDistribution> {
    if !tau.is_finite() || !(0.0..1.0).contains(&tau) {
        return Err(Error::InvalidParam {
            name: "alpha_cut",
            msg: format!("must lie in [0, 1), got {tau}"),
        });
    }
    if !d.confidences().iter().any(|&r| r >= tau && r > 0.0) {
        return Ok(d.clone());
    }
    if d.confidences().iter().all(|&r| r >= tau || r == 0.0) {
        return Ok(d.clone());
    }
    let kept: Vec<f64> = d
        .confidences()
        .iter()
        .map(|&r| if r < tau { 0.0 } else { r })
        .collect();
    ClassDistribution::from_weights(&kept)
}

/// Collapses a distribution to its argmax class; ties break to the
/// lowest class index.
pub fn classify_binary(d: &ClassDistribution) -> Result<usize> {
    if d.is_all_zero() {
        return Err(Error::Unclassifiable);
    }
    let mut best = 0;
    for (k, &r) in d.confidences().iter().enumerate() {
        if r > d.confidences()[best] {
            best = k;
        }
    }
    Ok(best)
}
