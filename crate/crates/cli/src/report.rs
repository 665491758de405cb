//! Evaluation report rendering: an aligned table for humans and a
//! key-value file that reloads to identical values.

use fqrc_core::data::format_f64;
use fqrc_core::{Error, EvalReport, Result};

/// Aligned, human-readable table.
pub fn render_table(report: &EvalReport, class_names: &[String]) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<18} {:>10}\n", "metric", "value"));
    out.push_str(&format!("{:<18} {:>10.4}\n", "accuracy", report.accuracy()));
    out.push_str(&format!(
        "{:<18} {:>10.4}\n",
        "mean_similarity",
        report.mean_similarity()
    ));
    out.push_str(&format!(
        "{:<18} {:>10.4}\n",
        "mean_error_std",
        report.mean_error_std()
    ));
    out.push('\n');
    let width = class_names
        .iter()
        .map(|n| n.len())
        .max()
        .unwrap_or(5)
        .max(5);
    out.push_str(&format!(
        "{:<width$} {:>10} {:>10} {:>10}\n",
        "class", "err_mean", "err_std", "f_score"
    ));
    for (k, name) in class_names.iter().enumerate() {
        out.push_str(&format!(
            "{:<width$} {:>10.4} {:>10.4} {:>10.4}\n",
            name,
            report.error_mean()[k],
            report.error_std()[k],
            report.f_scores()[k]
        ));
    }
    out
}

/// Machine-readable key-value form. Keys carry no spaces; per-class keys
/// are index-suffixed with `class.<i>` lines mapping indices to names.
pub fn to_key_value(report: &EvalReport, class_names: &[String]) -> String {
    let mut out = String::new();
    out.push_str(&format!("accuracy {}\n", format_f64(report.accuracy())));
    out.push_str(&format!(
        "mean_similarity {}\n",
        format_f64(report.mean_similarity())
    ));
    out.push_str(&format!(
        "mean_error_std {}\n",
        format_f64(report.mean_error_std())
    ));
    for (k, name) in class_names.iter().enumerate() {
        out.push_str(&format!("class.{k} {name}\n"));
        out.push_str(&format!(
            "error_mean.{k} {}\n",
            format_f64(report.error_mean()[k])
        ));
        out.push_str(&format!(
            "error_std.{k} {}\n",
            format_f64(report.error_std()[k])
        ));
        out.push_str(&format!(
            "f_score.{k} {}\n",
            format_f64(report.f_scores()[k])
        ));
    }
    out
}

/// Parses [`to_key_value`] output back into a report and its class names.
pub fn parse_key_value(text: &str, path: &str) -> Result<(EvalReport, Vec<String>)> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        line,
        msg,
    };

    let mut accuracy = None;
    let mut mean_similarity = None;
    let mut class_names: Vec<(usize, String)> = Vec::new();
    let mut error_mean: Vec<(usize, f64)> = Vec::new();
    let mut error_std: Vec<(usize, f64)> = Vec::new();
    let mut f_scores: Vec<(usize, f64)> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| err(line_no, format!("expected `key value`, got `{line}`")))?;
        let parse_num = || -> Result<f64> {
            value
                .parse()
                .map_err(|_| err(line_no, format!("invalid number `{value}`")))
        };
        let parse_idx = |suffix: &str| -> Result<usize> {
            suffix
                .parse()
                .map_err(|_| err(line_no, format!("invalid class index `{suffix}`")))
        };
        if key == "accuracy" {
            accuracy = Some(parse_num()?);
        } else if key == "mean_similarity" {
            mean_similarity = Some(parse_num()?);
        } else if key == "mean_error_std" {
            // derived value, recomputed on load
        } else if let Some(suffix) = key.strip_prefix("class.") {
            class_names.push((parse_idx(suffix)?, value.to_string()));
        } else if let Some(suffix) = key.strip_prefix("error_mean.") {
            error_mean.push((parse_idx(suffix)?, parse_num()?));
        } else if let Some(suffix) = key.strip_prefix("error_std.") {
            error_std.push((parse_idx(suffix)?, parse_num()?));
        } else if let Some(suffix) = key.strip_prefix("f_score.") {
            f_scores.push((parse_idx(suffix)?, parse_num()?));
        } else {
            return Err(err(line_no, format!("unknown key `{key}`")));
        }
    }

    let accuracy = accuracy.ok_or_else(|| err(1, "missing accuracy".into()))?;
    let mean_similarity =
        mean_similarity.ok_or_else(|| err(1, "missing mean_similarity".into()))?;
    let k = class_names.len();
    let collect = |mut pairs: Vec<(usize, f64)>, what: &str| -> Result<Vec<f64>> {
        pairs.sort_by_key(|(i, _)| *i);
        if pairs.len() != k || pairs.iter().enumerate().any(|(i, (idx, _))| i != *idx) {
            return Err(err(
                1,
                format!("{what} entries do not cover classes 0..{k}"),
            ));
        }
        Ok(pairs.into_iter().map(|(_, v)| v).collect())
    };
    let error_mean = collect(error_mean, "error_mean")?;
    let error_std = collect(error_std, "error_std")?;
    let f_scores = collect(f_scores, "f_score")?;

    let mut names: Vec<(usize, String)> = class_names;
    names.sort_by_key(|(i, _)| *i);
    let names: Vec<String> = names.into_iter().map(|(_, n)| n).collect();

    let report = EvalReport::new(accuracy, mean_similarity, error_mean, error_std, f_scores)?;
    Ok((report, names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (EvalReport, Vec<String>) {
        let report = EvalReport::new(
            0.875,
            1.0 / 3.0,
            vec![0.1, 0.2f64.sqrt()],
            vec![0.05, 0.07],
            vec![1.0, 2.0 / 3.0],
        )
        .unwrap();
        (report, vec!["Inside city".to_string(), "coast".to_string()])
    }

    #[test]
    fn key_value_round_trip() {
        let (report, names) = sample();
        let text = to_key_value(&report, &names);
        let (reloaded, reloaded_names) = parse_key_value(&text, "report").unwrap();
        assert_eq!(report, reloaded);
        assert_eq!(names, reloaded_names);
        assert_eq!(text, to_key_value(&reloaded, &reloaded_names));
    }

    #[test]
    fn table_lists_every_class() {
        let (report, names) = sample();
        let table = render_table(&report, &names);
        assert!(table.contains("accuracy"));
        assert!(table.contains("Inside city"));
        assert!(table.contains("coast"));
    }

    #[test]
    fn parse_rejects_incomplete_reports() {
        assert!(parse_key_value("accuracy 0.5\n", "r").is_err());
        let (report, names) = sample();
        let text = to_key_value(&report, &names).replace("f_score.1", "f_score.7");
        assert!(parse_key_value(&text, "r").is_err());
    }
}
