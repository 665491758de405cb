//! Feature-vector inputs for `infer` and `rank`: either a CSV file with
//! `f:` columns (a `label` or `ref:` column is tolerated and ignored) or
//! an inline comma-separated vector.

use std::path::Path;

use fqrc_core::{Error, FeatureVector, Result};

/// Parses a feature CSV, returning the feature names and one vector per
/// row.
pub fn parse_feature_csv(text: &str, path: &str) -> Result<(Vec<String>, Vec<FeatureVector>)> {
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

    // feature column positions within the row
    let mut feature_cols = Vec::new();
    let mut names = Vec::new();
    let mut width = 0;
    for (i, cell) in header.split(',').enumerate() {
        let cell = cell.trim();
        if let Some(name) = cell.strip_prefix("f:") {
            if name.is_empty() {
                return Err(parse_err(header_line, "empty feature name".to_string()));
            }
            feature_cols.push(i);
            names.push(name.to_string());
        } else if cell != "label" && !cell.starts_with("ref:") {
            return Err(parse_err(
                header_line,
                format!("unknown column `{cell}`; expected f:<name>, label or ref:<class>"),
            ));
        }
        width = i + 1;
    }
    if names.is_empty() {
        return Err(parse_err(
            header_line,
            "no f:<name> feature columns".to_string(),
        ));
    }

    let mut vectors = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != width {
            return Err(parse_err(
                line_no,
                format!("expected {width} columns, got {}", cells.len()),
            ));
        }
        let mut values = Vec::with_capacity(feature_cols.len());
        for &col in &feature_cols {
            let cell = cells[col].trim();
            let v: f64 = cell
                .parse()
                .map_err(|_| parse_err(line_no, format!("non-numeric feature value `{cell}`")))?;
            values.push(v);
        }
        vectors.push(FeatureVector::new(values).map_err(|e| parse_err(line_no, e.to_string()))?);
    }
    Ok((names, vectors))
}

pub fn load_feature_csv(path: impl AsRef<Path>) -> Result<(Vec<String>, Vec<FeatureVector>)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_feature_csv(&text, &path.display().to_string())
}

/// Parses an inline `--vector` argument like `-0.1545,-1.7597`.
pub fn parse_inline_vector(text: &str) -> Result<FeatureVector> {
    let values: Result<Vec<f64>> = text
        .split(',')
        .map(|cell| {
            let cell = cell.trim();
            cell.parse::<f64>()
                .map_err(|_| Error::Invalid(format!("non-numeric vector component `{cell}`")))
        })
        .collect();
    FeatureVector::new(values?)
}
