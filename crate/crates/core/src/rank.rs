//! Ranking stage: decodes a confidence distribution into an ordered list
//! of classes with comparison symbols, plus a textual rendering.
//!
//! Classes with confidence exactly zero are excluded ("definitely not").
//! The remaining classes are sorted by descending confidence; each one
//! after the first gets a symbol from the confidence gap to the class
//! ranked immediately above it: zero gap is "equal to", a gap up to the
//! `higher` threshold is "higher than" and anything beyond is "much
//! higher than".

use crate::error::{Error, Result};
use crate::types::{ClassDistribution, RankInterpretation, RankSymbol, RankedClass};

/// Which confidence gap feeds the symbol assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiffRule {
    /// Gap to the class ranked immediately above (reproduces the worked
    /// ranking tables).
    #[default]
    Adjacent,
    /// Gap to the maximum confidence.
    FromMax,
}

/// Symbol thresholds and gap rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOptions {
    equal_max: f64,
    higher_max: f64,
    much_higher_max: f64,
    diff_rule: DiffRule,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self {
            equal_max: 0.0,
            higher_max: 0.5,
            much_higher_max: 1.0,
            diff_rule: DiffRule::Adjacent,
        }
    }
}

impl RankOptions {
    /// Thresholds must satisfy `0 <= equal_max < higher_max < much_higher_max`.
    pub fn new(
        equal_max: f64,
        higher_max: f64,
        much_higher_max: f64,
        diff_rule: DiffRule,
    ) -> Result<Self> {
        for (name, v) in [
            ("equal", equal_max),
            ("higher", higher_max),
            ("much_higher", much_higher_max),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParam {
                    name: "thresholds",
                    msg: format!("{name} is not finite"),
                });
            }
        }
        if !(0.0 <= equal_max && equal_max < higher_max && higher_max < much_higher_max) {
            return Err(Error::InvalidParam {
                name: "thresholds",
                msg: format!(
                    "require 0 <= equal < higher < much_higher, got {equal_max}, {higher_max}, {much_higher_max}"
                ),
            });
        }
        Ok(Self {
            equal_max,
            higher_max,
            much_higher_max,
            diff_rule,
        })
    }

    pub fn with_diff_rule(mut self, diff_rule: DiffRule) -> Self {
        self.diff_rule = diff_rule;
        self
    }

    fn symbol_for(&self, diff: f64) -> RankSymbol {
        if diff <= self.equal_max {
            RankSymbol::Equal
        } else if diff <= self.higher_max {
            RankSymbol::Higher
        } else {
            // confidences live in [0, 1], so the gap never exceeds
            // much_higher_max at its default of 1
            RankSymbol::MuchHigher
        }
    }
}

/// Decodes a distribution into a symbolic ranking.
///
/// The all-zero sentinel excludes every class. Ties in confidence are
/// ordered by class index; they compare as equal either way.
pub fn interpret(d: &ClassDistribution, opts: &RankOptions) -> RankInterpretation {
    let mut excluded = Vec::new();
    let mut positive: Vec<(usize, f64)> = Vec::new();
    for (k, &r) in d.confidences().iter().enumerate() {
        if r == 0.0 {
            excluded.push(k);
        } else {
            positive.push((k, r));
        }
    }
    positive.sort_by(|(ka, ra), (kb, rb)| rb.partial_cmp(ra).unwrap().then(ka.cmp(kb)));

    let mut ranked = Vec::with_capacity(positive.len());
    for (i, &(class, confidence)) in positive.iter().enumerate() {
        let symbol = if i == 0 {
            RankSymbol::Top
        } else {
            let reference = match opts.diff_rule {
                DiffRule::Adjacent => positive[i - 1].1,
                DiffRule::FromMax => positive[0].1,
            };
            opts.symbol_for(reference - confidence)
        };
        ranked.push(RankedClass {
            class,
            confidence,
            symbol,
        });
    }

    RankInterpretation::new(ranked, excluded).expect("interpretation is valid by construction")
}

/// Confidence gap assigned to each ranked class (`None` for the top
/// class), matching the rule in `opts`. Indexed like
/// [`RankInterpretation::ranked`].
pub fn rank_diffs(ri: &RankInterpretation, opts: &RankOptions) -> Vec<Option<f64>> {
    ri.ranked()
        .iter()
        .enumerate()
        .map(|(i, rc)| {
            if i == 0 {
                None
            } else {
                let reference = match opts.diff_rule {
                    DiffRule::Adjacent => ri.ranked()[i - 1].confidence,
                    DiffRule::FromMax => ri.ranked()[0].confidence,
                };
                Some(reference - rc.confidence)
            }
        })
        .collect()
}

fn ascii_symbol(symbol: RankSymbol) -> &'static str {
    match symbol {
        RankSymbol::Top => "",
        RankSymbol::Equal => "=",
        RankSymbol::Higher => ">",
        RankSymbol::MuchHigher => ">>",
    }
}

fn unicode_symbol(symbol: RankSymbol) -> &'static str {
    match symbol {
        RankSymbol::Top => "",
        RankSymbol::Equal => "\u{2261}", // ≡
        RankSymbol::Higher => ">",
        RankSymbol::MuchHigher => "\u{226b}", // ≫
    }
}

/// One-line textual rendering, stable for golden-file comparisons.
///
/// Retained classes are joined by their symbols (`=`, `>`, `>>`); a
/// non-empty excluded set is appended as `, definitely not: <names>`.
pub fn describe(ri: &RankInterpretation, class_names: &[String]) -> Result<String> {
    if class_names.len() < ri.num_classes() {
        return Err(Error::Invalid(format!(
            "{} class names cannot cover {} classes",
            class_names.len(),
            ri.num_classes()
        )));
    }
    if ri.ranked().is_empty() {
        return Ok("no class: sample outside all learned supports".to_string());
    }
    let mut out = String::new();
    for (i, rc) in ri.ranked().iter().enumerate() {
        if i > 0 {
            out.push(' ');
            out.push_str(ascii_symbol(rc.symbol));
            out.push(' ');
        }
        out.push_str(&class_names[rc.class]);
    }
    if !ri.excluded().is_empty() {
        out.push_str(", definitely not: ");
        let names: Vec<&str> = ri
            .excluded()
            .iter()
            .map(|&k| class_names[k].as_str())
            .collect();
        out.push_str(&names.join(","));
    }
    Ok(out)
}

/// Compact chain of the retained classes with comparison symbols, e.g.
/// `T≡I>S`. Excluded classes are not rendered.
pub fn symbol_string(ri: &RankInterpretation, class_names: &[String]) -> Result<String> {
    if class_names.len() < ri.num_classes() {
        return Err(Error::Invalid(format!(
            "{} class names cannot cover {} classes",
            class_names.len(),
            ri.num_classes()
        )));
    }
    let mut out = String::new();
    for (i, rc) in ri.ranked().iter().enumerate() {
        if i > 0 {
            out.push_str(unicode_symbol(rc.symbol));
        }
        out.push_str(&class_names[rc.class]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dist(r: &[f64]) -> ClassDistribution {
        ClassDistribution::from_confidences(r.to_vec()).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn four_class_worked_ranking() {
        let d = dist(&[0.5561, 0.0264, 0.0, 0.4175]);
        let opts = RankOptions::default();
        let ri = interpret(&d, &opts);

        let order: Vec<usize> = ri.ranked().iter().map(|rc| rc.class).collect();
        assert_eq!(order, vec![0, 3, 1]);
        assert_eq!(ri.excluded(), &[2]);
        assert_eq!(ri.ranked()[0].symbol, RankSymbol::Top);
        assert_eq!(ri.ranked()[1].symbol, RankSymbol::Higher);
        assert_eq!(ri.ranked()[2].symbol, RankSymbol::Higher);

        let diffs = rank_diffs(&ri, &opts);
        assert!(diffs[0].is_none());
        assert!((diffs[1].unwrap() - 0.1386).abs() < 5e-4);
        assert!((diffs[2].unwrap() - 0.3911).abs() < 5e-4);
    }

    #[test]
    fn equal_top_pair_then_higher() {
        let d = dist(&[0.4562, 0.4562, 0.0876, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let ri = interpret(&d, &RankOptions::default());
        let cls = names(&["T", "I", "S", "H", "C", "O", "M", "F"]);
        assert_eq!(symbol_string(&ri, &cls).unwrap(), "T\u{2261}I>S");
        assert_eq!(ri.excluded(), &[3, 4, 5, 6, 7]);
    }

    #[test]
    fn much_higher_above_half_gap() {
        let d = dist(&[0.7644, 0.2356, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let ri = interpret(&d, &RankOptions::default());
        let cls = names(&["T", "I", "S", "H", "C", "O", "M", "F"]);
        assert_eq!(symbol_string(&ri, &cls).unwrap(), "T\u{226b}I");
    }

    #[test]
    fn all_zero_excludes_everything() {
        let d = dist(&[0.0, 0.0, 0.0]);
        let ri = interpret(&d, &RankOptions::default());
        assert!(ri.ranked().is_empty());
        assert_eq!(ri.excluded(), &[0, 1, 2]);
    }

    #[test]
    fn describe_worked_example() {
        let d = dist(&[0.5561, 0.0264, 0.0, 0.4175]);
        let ri = interpret(&d, &RankOptions::default());
        let cls = names(&["Class1", "Class2", "Class3", "Class4"]);
        assert_eq!(
            describe(&ri, &cls).unwrap(),
            "Class1 > Class4 > Class2, definitely not: Class3"
        );
    }

    #[test]
    fn describe_single_survivor_and_all_zero() {
        let d = dist(&[1.0, 0.0, 0.0]);
        let ri = interpret(&d, &RankOptions::default());
        let cls = names(&["A", "B", "C"]);
        assert_eq!(describe(&ri, &cls).unwrap(), "A, definitely not: B,C");

        let ri = interpret(&dist(&[0.0, 0.0, 0.0]), &RankOptions::default());
        assert_eq!(
            describe(&ri, &cls).unwrap(),
            "no class: sample outside all learned supports"
        );
    }

    #[test]
    fn describe_uniform_pair_uses_equal_symbol() {
        let d = dist(&[0.5, 0.5]);
        let ri = interpret(&d, &RankOptions::default());
        assert_eq!(describe(&ri, &names(&["A", "B"])).unwrap(), "A = B");
    }

    #[test]
    fn from_max_rule_differs_on_worked_example() {
        // with the gap measured from the maximum, class 2 trails the top
        // by 0.5297 and flips from > to >>
        let d = dist(&[0.5561, 0.0264, 0.0, 0.4175]);
        let opts = RankOptions::default().with_diff_rule(DiffRule::FromMax);
        let ri = interpret(&d, &opts);
        assert_eq!(ri.ranked()[1].symbol, RankSymbol::Higher);
        assert_eq!(ri.ranked()[2].symbol, RankSymbol::MuchHigher);
        let diffs = rank_diffs(&ri, &opts);
        assert!((diffs[2].unwrap() - 0.5297).abs() < 5e-4);
    }

    #[test]
    fn threshold_validation() {
        assert!(RankOptions::new(0.0, 0.5, 1.0, DiffRule::Adjacent).is_ok());
        assert!(RankOptions::new(0.5, 0.5, 1.0, DiffRule::Adjacent).is_err());
        assert!(RankOptions::new(-0.1, 0.5, 1.0, DiffRule::Adjacent).is_err());
        assert!(RankOptions::new(0.0, 1.0, 0.5, DiffRule::Adjacent).is_err());
    }

    #[test]
    fn ties_sort_by_class_index_and_compare_equal() {
        let d = dist(&[0.25, 0.5, 0.25]);
        let ri = interpret(&d, &RankOptions::default());
        let order: Vec<usize> = ri.ranked().iter().map(|rc| rc.class).collect();
        assert_eq!(order, vec![1, 0, 2]);
        assert_eq!(ri.ranked()[2].symbol, RankSymbol::Equal);
    }

    proptest! {
        #[test]
        fn positive_gaps_map_to_exactly_one_symbol(diff in 0.0..=1.0f64) {
            let opts = RankOptions::default();
            let symbol = opts.symbol_for(diff);
            if diff == 0.0 {
                prop_assert_eq!(symbol, RankSymbol::Equal);
            } else if diff <= 0.5 {
                prop_assert_eq!(symbol, RankSymbol::Higher);
            } else {
                prop_assert_eq!(symbol, RankSymbol::MuchHigher);
            }
        }

        #[test]
        fn excluded_set_is_exactly_the_zero_classes(
            weights in proptest::collection::vec(prop_oneof![Just(0.0f64), 0.01..1.0f64], 1..10)
        ) {
            let d = ClassDistribution::from_weights(&weights).unwrap();
            let ri = interpret(&d, &RankOptions::default());
            let zeros: Vec<usize> = d
                .confidences()
                .iter()
                .enumerate()
                .filter(|(_, &r)| r == 0.0)
                .map(|(k, _)| k)
                .collect();
            prop_assert_eq!(ri.excluded(), &zeros[..]);
            prop_assert_eq!(ri.ranked().len() + ri.excluded().len(), d.num_classes());
        }

        #[test]
        fn interpretation_is_permutation_insensitive(
            weights in proptest::collection::vec(0.0..1.0f64, 2..8),
            seed in 0u64..1000,
        ) {
            // relabeling classes must relabel the interpretation, nothing else
            let k = weights.len();
            let mut perm: Vec<usize> = (0..k).collect();
            // deterministic Fisher-Yates from the seed
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            for i in (1..k).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let pick = (state >> 33) as usize % (i + 1);
                perm.swap(i, pick);
            }
            let permuted: Vec<f64> = (0..k).map(|i| weights[perm[i]]).collect();

            let d1 = ClassDistribution::from_weights(&weights).unwrap();
            let d2 = ClassDistribution::from_weights(&permuted).unwrap();
            let r1 = interpret(&d1, &RankOptions::default());
            let r2 = interpret(&d2, &RankOptions::default());

            // same confidence/symbol chain, classes mapped through the permutation
            prop_assert_eq!(r1.ranked().len(), r2.ranked().len());
            for (a, b) in r1.ranked().iter().zip(r2.ranked()) {
                prop_assert_eq!(a.symbol, b.symbol);
                prop_assert!((a.confidence - b.confidence).abs() <= 1e-9);
            }
        }
    }
}
