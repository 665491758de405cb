//! Dataset ingestion and experiment protocol: CSV parsing, re-serialization,
//! leave-one-out iteration and manifest-driven fixed splits.
//!
//! The single ingestion format is a comma-separated table, UTF-8, `.` as
//! the decimal separator:
//!
//! ```text
//! f:<name>,...,label[,ref:<class>,...]
//! ```
//!
//! Feature columns carry `f:` prefixes, the `label` column holds class
//! names, and optional `ref:<class>` columns hold a per-row reference
//! confidence distribution (normalized, or all-zero). When `ref:` columns
//! are present there must be one per class. The class set is the sorted
//! distinct labels unless an explicit class list overrides it.

use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{check_names, ClassDistribution, FeatureVector, LabeledSample};

/// An immutable labeled table plus its naming metadata and optional
/// per-sample reference distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<LabeledSample>,
    feature_names: Vec<String>,
    class_names: Vec<String>,
    reference_distributions: Option<Vec<ClassDistribution>>,
}

impl Dataset {
    pub fn new(
        samples: Vec<LabeledSample>,
        feature_names: Vec<String>,
        class_names: Vec<String>,
        reference_distributions: Option<Vec<ClassDistribution>>,
    ) -> Result<Self> {
        check_names("feature", &feature_names)?;
        check_names("class", &class_names)?;
        let j = feature_names.len();
        let k = class_names.len();
        for s in &samples {
            if s.features.len() != j {
                return Err(Error::DimensionMismatch {
                    expected: j,
                    got: s.features.len(),
                });
            }
            if s.label >= k {
                return Err(Error::UnknownLabel(format!(
                    "class index {} of {k}",
                    s.label
                )));
            }
        }
        if let Some(refs) = &reference_distributions {
            if refs.len() != samples.len() {
                return Err(Error::Invalid(format!(
                    "{} reference distributions for {} samples",
                    refs.len(),
                    samples.len()
                )));
            }
            if let Some(d) = refs.iter().find(|d| d.num_classes() != k) {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: d.num_classes(),
                });
            }
        }
        Ok(Self {
            samples,
            feature_names,
            class_names,
            reference_distributions,
        })
    }

    pub fn samples(&self) -> &[LabeledSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn num_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn reference_distributions(&self) -> Option<&[ClassDistribution]> {
        self.reference_distributions.as_deref()
    }

    /// Per-class sample counts, indexed by class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes()];
        for s in &self.samples {
            counts[s.label] += 1;
        }
        counts
    }

    /// Leave-one-out folds: fold `i` trains on everything but sample `i`
    /// and tests on it. Requires at least two samples.
    pub fn leave_one_out(&self) -> Result<impl Iterator<Item = Fold<'_>>> {
        if self.len() < 2 {
            return Err(Error::Invalid(format!(
                "leave-one-out needs at least 2 samples, got {}",
                self.len()
            )));
        }
        Ok((0..self.len()).map(move |i| Fold {
            train: self
                .samples
                .iter()
                .enumerate()
                .filter(|(n, _)| *n != i)
                .map(|(_, s)| s)
                .collect(),
            test: &self.samples[i],
            test_index: i,
        }))
    }

    /// Splits rows into (train, test) according to the manifest, which
    /// must assign every row exactly once.
    pub fn fixed_split(&self, manifest: &SplitManifest) -> Result<(Dataset, Dataset)> {
        let mut side: Vec<Option<Side>> = vec![None; self.len()];
        for &(row, s) in &manifest.assignments {
            if row >= self.len() {
                return Err(Error::Invalid(format!(
                    "manifest references row {row}, dataset has {} rows",
                    self.len()
                )));
            }
            if side[row].is_some() {
                return Err(Error::Invalid(format!("manifest assigns row {row} twice")));
            }
            side[row] = Some(s);
        }
        if let Some(row) = side.iter().position(|s| s.is_none()) {
            return Err(Error::Invalid(format!(
                "manifest does not assign row {row}"
            )));
        }

        let select = |want: Side| -> Dataset {
            let mut samples = Vec::new();
            let mut refs = self.reference_distributions.as_ref().map(|_| Vec::new());
            for (i, s) in self.samples.iter().enumerate() {
                if side[i] == Some(want) {
                    samples.push(s.clone());
                    if let (Some(refs), Some(all)) = (refs.as_mut(), &self.reference_distributions)
                    {
                        refs.push(all[i].clone());
                    }
                }
            }
            Dataset {
                samples,
                feature_names: self.feature_names.clone(),
                class_names: self.class_names.clone(),
                reference_distributions: refs,
            }
        };
        Ok((select(Side::Train), select(Side::Test)))
    }

    /// Canonical CSV rendering; numeric fields carry 17 significant
    /// digits so a load/save cycle is lossless.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        let mut header: Vec<String> = self
            .feature_names
            .iter()
            .map(|n| format!("f:{n}"))
            .collect();
        header.push("label".to_string());
        if self.reference_distributions.is_some() {
            header.extend(self.class_names.iter().map(|n| format!("ref:{n}")));
        }
        out.push_str(&header.join(","));
        out.push('\n');
        for (i, s) in self.samples.iter().enumerate() {
            let mut cells: Vec<String> =
                s.features.values().iter().map(|v| format_f64(*v)).collect();
            cells.push(self.class_names[s.label].clone());
            if let Some(refs) = &self.reference_distributions {
                cells.extend(refs[i].confidences().iter().map(|v| format_f64(*v)));
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_csv_string())?)
    }
}

/// One leave-one-out fold: borrowed training samples and the held-out
/// sample.
#[derive(Debug)]
pub struct Fold<'a> {
    pub train: Vec<&'a LabeledSample>,
    pub test: &'a LabeledSample,
    pub test_index: usize,
}

/// 17 significant digits: enough to reconstruct any f64 exactly.
pub fn format_f64(v: f64) -> String {
    format!("{:.16e}", v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Train,
    Test,
}

/// Row-to-split assignment for [`Dataset::fixed_split`].
///
/// Text form: one `<row>,<train|test>` pair per line with 0-based row
/// indices; blank lines and `#` comments are skipped.
#[derive(Debug, Clone)]
pub struct SplitManifest {
    assignments: Vec<(usize, Side)>,
}

impl SplitManifest {
    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut assignments = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (row, side) = line.split_once(',').ok_or_else(|| Error::Parse {
                path: path.to_string(),
                line: line_no,
                msg: "expected `<row>,<train|test>`".to_string(),
            })?;
            let row: usize = row.trim().parse().map_err(|_| Error::Parse {
                path: path.to_string(),
                line: line_no,
                msg: format!("invalid row index `{}`", row.trim()),
            })?;
            let side = match side.trim() {
                "train" => Side::Train,
                "test" => Side::Test,
                other => {
                    return Err(Error::Parse {
                        path: path.to_string(),
                        line: line_no,
                        msg: format!("invalid split `{other}`, expected train or test"),
                    })
                }
            };
            assignments.push((row, side));
        }
        Ok(Self { assignments })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Options for [`load_csv`].
#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Explicit class list; overrides the sorted distinct labels.
    pub class_names: Option<Vec<String>>,
}

#[derive(Debug)]
enum Column {
    Feature(usize),
    Label,
    Reference(String),
}

/// Parses a dataset from its CSV form. Errors carry 1-based line numbers.
pub fn load_csv(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text, &path.display().to_string(), options)
}

/// [`load_csv`] over in-memory text.
pub fn parse_csv(text: &str, path: &str, options: &LoadOptions) -> Result<Dataset> {
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        line,
        msg,
    };

    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_idx, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file".to_string()))?;
    let header_line = header_idx + 1;

    let mut columns = Vec::new();
    let mut feature_names = Vec::new();
    let mut ref_classes: Vec<String> = Vec::new();
    let mut saw_label = false;
    for cell in header.split(',') {
        let cell = cell.trim();
        if let Some(name) = cell.strip_prefix("f:") {
            if name.is_empty() {
                return Err(parse_err(header_line, "empty feature name".to_string()));
            }
            columns.push(Column::Feature(feature_names.len()));
            feature_names.push(name.to_string());
        } else if cell == "label" {
            if saw_label {
                return Err(parse_err(header_line, "duplicate label column".to_string()));
            }
            saw_label = true;
            columns.push(Column::Label);
        } else if let Some(name) = cell.strip_prefix("ref:") {
            if name.is_empty() {
                return Err(parse_err(header_line, "empty ref class name".to_string()));
            }
            if ref_classes.iter().any(|c| c == name) {
                return Err(parse_err(
                    header_line,
                    format!("duplicate ref column `{name}`"),
                ));
            }
            ref_classes.push(name.to_string());
            columns.push(Column::Reference(name.to_string()));
        } else {
            return Err(parse_err(
                1,
                format!("unknown column `{cell}`; expected f:<name>, label or ref:<class>"),
            ));
        }
    }
    if feature_names.is_empty() {
        return Err(parse_err(
            header_line,
            "no f:<name> feature columns".to_string(),
        ));
    }
    if !saw_label {
        return Err(parse_err(header_line, "missing label column".to_string()));
    }
    check_names("feature", &feature_names).map_err(|e| parse_err(header_line, e.to_string()))?;

    struct Row {
        line: usize,
        features: Vec<f64>,
        label: String,
        refs: Vec<(String, f64)>,
    }

    let mut rows = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != columns.len() {
            return Err(parse_err(
                line_no,
                format!("expected {} columns, got {}", columns.len(), cells.len()),
            ));
        }
        let mut row = Row {
            line: line_no,
            features: vec![0.0; feature_names.len()],
            label: String::new(),
            refs: Vec::new(),
        };
        for (column, cell) in columns.iter().zip(cells) {
            let cell = cell.trim();
            match column {
                Column::Feature(idx) => {
                    let v: f64 = cell.parse().map_err(|_| {
                        parse_err(line_no, format!("non-numeric feature value `{cell}`"))
                    })?;
                    if !v.is_finite() {
                        return Err(parse_err(
                            line_no,
                            format!("non-finite feature value `{cell}`"),
                        ));
                    }
                    row.features[*idx] = v;
                }
                Column::Label => {
                    if cell.is_empty() {
                        return Err(parse_err(line_no, "empty label".to_string()));
                    }
                    row.label = cell.to_string();
                }
                Column::Reference(class) => {
                    let v: f64 = cell.parse().map_err(|_| {
                        parse_err(line_no, format!("non-numeric reference value `{cell}`"))
                    })?;
                    row.refs.push((class.clone(), v));
                }
            }
        }
        rows.push(row);
    }

    // resolve the class set
    let class_names = match &options.class_names {
        Some(names) => {
            check_names("class", names)?;
            names.clone()
        }
        None => {
            let mut names: Vec<String> = rows.iter().map(|r| r.label.clone()).collect();
            names.sort();
            names.dedup();
            names
        }
    };
    let class_index = |name: &str| class_names.iter().position(|c| c == name);

    if !ref_classes.is_empty() {
        if ref_classes.len() != class_names.len() {
            return Err(parse_err(
                header_line,
                format!(
                    "{} ref columns for {} classes; one per class is required",
                    ref_classes.len(),
                    class_names.len()
                ),
            ));
        }
        for class in &ref_classes {
            if class_index(class).is_none() {
                return Err(parse_err(
                    header_line,
                    format!("ref column `{class}` is not a declared class"),
                ));
            }
        }
    }

    let mut samples = Vec::with_capacity(rows.len());
    let mut refs = if ref_classes.is_empty() {
        None
    } else {
        Some(Vec::with_capacity(rows.len()))
    };
    for row in rows {
        let label = class_index(&row.label)
            .ok_or_else(|| parse_err(row.line, format!("unknown label `{}`", row.label)))?;
        let features =
            FeatureVector::new(row.features).map_err(|e| parse_err(row.line, e.to_string()))?;
        samples.push(LabeledSample::new(features, label));
        if let Some(refs) = refs.as_mut() {
            let mut r = vec![0.0; class_names.len()];
            for (class, v) in &row.refs {
                r[class_index(class).expect("ref classes validated above")] = *v;
            }
            let d = ClassDistribution::from_confidences(r)
                .map_err(|e| parse_err(row.line, format!("bad reference distribution: {e}")))?;
            refs.push(d);
        }
    }

    Dataset::new(samples, feature_names, class_names, refs)
}
