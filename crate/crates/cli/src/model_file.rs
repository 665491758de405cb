//! Versioned text persistence for learned models.
//!
//! The format is line-oriented and diffable:
//!
//! ```text
//! FQRC-MODEL 1
//! bins: 50
//! features: 2
//! classes: 4
//! feature: natural
//! feature: open
//! class: Insidecity
//! ...
//! class_counts: 10 12 9 11
//! tuples:
//! 0 0 <a> <b> <alpha> <beta>
//! ...
//! ```
//!
//! Numbers are written with 17 significant digits, so save -> load -> save
//! is byte-stable and values survive exactly.

use std::path::Path;

use fqrc_core::data::format_f64;
use fqrc_core::{Error, FourTuple, MembershipModel, Result};

/// Highest format version this build can read.
pub const FORMAT_VERSION: u32 = 1;

/// A learned model plus its training metadata, as persisted on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: MembershipModel,
    /// Histogram bin count the model was trained with.
    pub bins: usize,
    /// Training sample count per class, indexed like the class list.
    pub class_counts: Vec<usize>,
}

impl ModelFile {
    pub fn new(model: MembershipModel, bins: usize, class_counts: Vec<usize>) -> Result<Self> {
        if class_counts.len() != model.num_classes() {
            return Err(Error::Invalid(format!(
                "{} class counts for {} classes",
                class_counts.len(),
                model.num_classes()
            )));
        }
        if bins == 0 {
            return Err(Error::InvalidParam {
                name: "bins",
                msg: "must be >= 1".into(),
            });
        }
        Ok(Self {
            model,
            bins,
            class_counts,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("FQRC-MODEL {FORMAT_VERSION}\n"));
        out.push_str(&format!("bins: {}\n", self.bins));
        out.push_str(&format!("features: {}\n", self.model.num_features()));
        out.push_str(&format!("classes: {}\n", self.model.num_classes()));
        for name in self.model.feature_names() {
            out.push_str(&format!("feature: {name}\n"));
        }
        for name in self.model.class_names() {
            out.push_str(&format!("class: {name}\n"));
        }
        let counts: Vec<String> = self.class_counts.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("class_counts: {}\n", counts.join(" ")));
        out.push_str("tuples:\n");
        for feature in 0..self.model.num_features() {
            for class in 0..self.model.num_classes() {
                let t = self.model.tuple(feature, class);
                out.push_str(&format!(
                    "{feature} {class} {} {} {} {}\n",
                    format_f64(t.a()),
                    format_f64(t.b()),
                    format_f64(t.alpha()),
                    format_f64(t.beta())
                ));
            }
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse {
            path: path.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate();

        let (_, magic) = lines
            .next()
            .ok_or_else(|| err(1, "empty model file".into()))?;
        let version: u32 = magic
            .strip_prefix("FQRC-MODEL ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| err(1, format!("expected `FQRC-MODEL <version>`, got `{magic}`")))?;
        if version > FORMAT_VERSION {
            return Err(err(
                1,
                format!("model format version {version} is newer than supported {FORMAT_VERSION}"),
            ));
        }

        let mut bins = None;
        let mut features = None;
        let mut classes = None;
        let mut feature_names = Vec::new();
        let mut class_names = Vec::new();
        let mut class_counts = None;
        let mut tuple_lines = None;

        for (i, line) in lines.by_ref() {
            let line_no = i + 1;
            if line == "tuples:" {
                tuple_lines = Some(line_no);
                break;
            }
            let (key, value) = line.split_once(": ").ok_or_else(|| {
                err(
                    line_no,
                    format!("expected `key: value` or `tuples:`, got `{line}`"),
                )
            })?;
            match key {
                "bins" => {
                    bins = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| err(line_no, format!("invalid bins `{value}`")))?,
                    )
                }
                "features" => {
                    features =
                        Some(value.parse::<usize>().map_err(|_| {
                            err(line_no, format!("invalid feature count `{value}`"))
                        })?)
                }
                "classes" => {
                    classes = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| err(line_no, format!("invalid class count `{value}`")))?,
                    )
                }
                "feature" => feature_names.push(value.to_string()),
                "class" => class_names.push(value.to_string()),
                "class_counts" => {
                    let counts: std::result::Result<Vec<usize>, _> =
                        value.split_whitespace().map(|c| c.parse()).collect();
                    class_counts =
                        Some(counts.map_err(|_| {
                            err(line_no, format!("invalid class counts `{value}`"))
                        })?);
                }
                other => return Err(err(line_no, format!("unknown key `{other}`"))),
            }
        }

        let tuples_at = tuple_lines.ok_or_else(|| err(1, "missing `tuples:` section".into()))?;
        let j = features.ok_or_else(|| err(1, "missing `features:`".into()))?;
        let k = classes.ok_or_else(|| err(1, "missing `classes:`".into()))?;
        let bins = bins.ok_or_else(|| err(1, "missing `bins:`".into()))?;
        let class_counts = class_counts.ok_or_else(|| err(1, "missing `class_counts:`".into()))?;
        if feature_names.len() != j {
            return Err(err(
                1,
                format!("{} feature names for {} features", feature_names.len(), j),
            ));
        }
        if class_names.len() != k {
            return Err(err(
                1,
                format!("{} class names for {} classes", class_names.len(), k),
            ));
        }

        let mut grid: Vec<Option<FourTuple>> = vec![None; j * k];
        for (i, line) in lines {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != 6 {
                return Err(err(
                    line_no,
                    format!("expected `j k a b alpha beta`, got `{line}`"),
                ));
            }
            let feature: usize = cells[0]
                .parse()
                .map_err(|_| err(line_no, format!("invalid feature index `{}`", cells[0])))?;
            let class: usize = cells[1]
                .parse()
                .map_err(|_| err(line_no, format!("invalid class index `{}`", cells[1])))?;
            if feature >= j || class >= k {
                return Err(err(
                    line_no,
                    format!("tuple index ({feature}, {class}) out of range"),
                ));
            }
            let mut nums = [0.0f64; 4];
            for (slot, cell) in nums.iter_mut().zip(&cells[2..]) {
                *slot = cell
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid number `{cell}`")))?;
            }
            let tuple = FourTuple::new(nums[0], nums[1], nums[2], nums[3])
                .map_err(|e| err(line_no, e.to_string()))?;
            let cell = &mut grid[feature * k + class];
            if cell.is_some() {
                return Err(err(
                    line_no,
                    format!("duplicate tuple ({feature}, {class})"),
                ));
            }
            *cell = Some(tuple);
        }
        let tuples: Vec<FourTuple> = grid
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| err(tuples_at, format!("missing tuple ({}, {})", i / k, i % k)))
            })
            .collect::<Result<_>>()?;

        let model = MembershipModel::new(tuples, feature_names, class_names)
            .map_err(|e| err(1, e.to_string()))?;
        Self::new(model, bins, class_counts).map_err(|e| err(1, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_model() -> ModelFile {
        let tuples = vec![
            FourTuple::new(-1.0, 1.0, 0.5, 0.5).unwrap(),
            FourTuple::new(0.5409, 1.5, 1.0, 1.0).unwrap(),
            FourTuple::new(-2.0, -1.0, 0.5, 0.5).unwrap(),
            FourTuple::new(-0.9155, 0.0, 1.0, 1.0).unwrap(),
        ];
        let model = MembershipModel::new(
            tuples,
            vec!["natural".into(), "open".into()],
            vec!["city".into(), "coast".into()],
        )
        .unwrap();
        ModelFile::new(model, 50, vec![10, 12]).unwrap()
    }

    #[test]
    fn text_round_trip_is_exact_and_byte_stable() {
        let mf = sample_model();
        let text = mf.to_text();
        let reloaded = ModelFile::parse(&text, "model").unwrap();
        assert_eq!(mf, reloaded);
        assert_eq!(text, reloaded.to_text());
    }

    #[test]
    fn irrational_values_survive() {
        let tuples =
            vec![FourTuple::new(1.0 / 3.0, std::f64::consts::PI, 2.0f64.sqrt(), 1e-300).unwrap()];
        let model = MembershipModel::new(tuples, vec!["f".into()], vec!["c".into()]).unwrap();
        let mf = ModelFile::new(model, 7, vec![3]).unwrap();
        let reloaded = ModelFile::parse(&mf.to_text(), "model").unwrap();
        assert_eq!(mf, reloaded);
    }

    #[test]
    fn newer_version_is_rejected() {
        let text = sample_model()
            .to_text()
            .replace("FQRC-MODEL 1", "FQRC-MODEL 2");
        let err = ModelFile::parse(&text, "model").unwrap_err();
        assert!(err.to_string().contains("newer than supported"), "{err}");
    }

    #[test]
    fn missing_tuple_is_rejected() {
        let mf = sample_model();
        let text: String = mf
            .to_text()
            .lines()
            .filter(|l| !l.starts_with("1 1 "))
            .map(|l| format!("{l}\n"))
            .collect();
        let err = ModelFile::parse(&text, "model").unwrap_err();
        assert!(err.to_string().contains("missing tuple (1, 1)"), "{err}");
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(ModelFile::parse("", "m").is_err());
        assert!(ModelFile::parse("BOGUS 1\n", "m").is_err());
        let text = sample_model().to_text().replace("bins: 50", "bins: many");
        assert!(ModelFile::parse(&text, "m").is_err());
    }
}
