//! Command implementations. Each returns the stdout payload; warnings go
//! straight to stderr.

use std::path::{Path, PathBuf};

use fqrc_core::data::{load_csv, Dataset, LoadOptions, SplitManifest};
use fqrc_core::infer::{alpha_cut, classify_binary, infer};
use fqrc_core::learn;
use fqrc_core::rank::{describe, interpret, DiffRule, RankOptions};
use fqrc_core::{ClassDistribution, Error, EvalParams, FeatureVector, RankSymbol, Result};

use crate::inputs::{load_feature_csv, parse_inline_vector};
use crate::model_file::ModelFile;
use crate::pipeline::{evaluate, Classifier, CutSides, EvalConfig, Protocol};
use crate::report::{render_table, to_key_value};

pub struct TrainArgs {
    pub data: PathBuf,
    pub out: PathBuf,
    pub bins: usize,
    pub classes: Option<Vec<String>>,
}

pub fn cmd_train(args: &TrainArgs) -> Result<String> {
    let ds = load_dataset(&args.data, &args.classes)?;
    let model = learn::train(
        ds.samples(),
        ds.feature_names(),
        ds.class_names(),
        args.bins,
    )?;
    let counts = ds.class_counts();
    let file = ModelFile::new(model, args.bins, counts.clone())?;
    file.save(&args.out)?;

    let mut out = format!(
        "dataset: {} rows, {} feature columns\n",
        ds.len(),
        ds.num_features()
    );
    out.push_str(&format!(
        "model: {} features x {} classes, bins {}, written to {}\n",
        file.model.num_features(),
        file.model.num_classes(),
        args.bins,
        args.out.display()
    ));
    for (name, count) in file.model.class_names().iter().zip(&counts) {
        out.push_str(&format!("class {name}: {count} samples\n"));
    }
    for (j, feature) in file.model.feature_names().iter().enumerate() {
        for (k, class) in file.model.class_names().iter().enumerate() {
            let t = file.model.tuple(j, k);
            out.push_str(&format!(
                "tuple {feature}/{class}: a={} b={} alpha={} beta={}\n",
                t.a(),
                t.b(),
                t.alpha(),
                t.beta()
            ));
        }
    }
    Ok(out)
}

pub struct InferArgs {
    pub model: PathBuf,
    pub input: Option<PathBuf>,
    pub vector: Option<String>,
    pub alpha_cut: Option<f64>,
    pub binary: bool,
}

pub fn cmd_infer(args: &InferArgs) -> Result<String> {
    let file = ModelFile::load(&args.model)?;
    let inputs = gather_inputs(&args.input, &args.vector, &file)?;

    let mut out = String::new();
    for (i, x) in inputs.iter().enumerate() {
        let d = infer_with_cut(&file, x, args.alpha_cut)?;
        let marker = if d.is_all_zero() {
            "NONE".to_string()
        } else if args.binary {
            file.model.class_names()[classify_binary(&d)?].clone()
        } else {
            "-".to_string()
        };
        out.push_str(&format!("{i}\t{}\t{marker}\n", confidences_text(&d)));
    }
    Ok(out)
}

pub struct RankArgs {
    pub model: PathBuf,
    pub input: Option<PathBuf>,
    pub vector: Option<String>,
    pub alpha_cut: Option<f64>,
    pub thresholds: (f64, f64, f64),
    pub diff_rule: DiffRule,
}

pub fn cmd_rank(args: &RankArgs) -> Result<String> {
    let file = ModelFile::load(&args.model)?;
    let inputs = gather_inputs(&args.input, &args.vector, &file)?;
    let (eq, hi, much) = args.thresholds;
    let opts = RankOptions::new(eq, hi, much, args.diff_rule)?;
    let names = file.model.class_names();

    let mut out = String::new();
    for (i, x) in inputs.iter().enumerate() {
        let d = infer_with_cut(&file, x, args.alpha_cut)?;
        let ri = interpret(&d, &opts);
        out.push_str(&format!(
            "{i}\t{}\t{}\n",
            machine_string(&ri, names),
            describe(&ri, names)?
        ));
    }
    Ok(out)
}

/// Compact machine form: ranked names joined by `=`/`>`/`>>`, then
/// `|x:<excluded>`; `NONE` when nothing ranks.
pub fn machine_string(ri: &fqrc_core::RankInterpretation, class_names: &[String]) -> String {
    let mut out = String::new();
    if ri.ranked().is_empty() {
        out.push_str("NONE");
    }
    for (i, rc) in ri.ranked().iter().enumerate() {
        if i > 0 {
            out.push_str(match rc.symbol {
                RankSymbol::Equal => "=",
                RankSymbol::Higher => ">",
                RankSymbol::MuchHigher => ">>",
                RankSymbol::Top => unreachable!("TOP only ranks first"),
            });
        }
        out.push_str(&class_names[rc.class]);
    }
    if !ri.excluded().is_empty() {
        let names: Vec<&str> = ri
            .excluded()
            .iter()
            .map(|&k| class_names[k].as_str())
            .collect();
        out.push_str("|x:");
        out.push_str(&names.join(","));
    }
    out
}

pub struct EvaluateArgs {
    pub data: PathBuf,
    pub protocol: String,
    pub manifest: Option<PathBuf>,
    pub classifier: String,
    pub knn_k: usize,
    pub bins: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub alpha_cut: Option<f64>,
    pub alpha_cut_apply: String,
    pub classes: Option<Vec<String>>,
    pub out: Option<PathBuf>,
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<String> {
    let ds = load_dataset(&args.data, &args.classes)?;

    let protocol = match args.protocol.as_str() {
        "loo" => Protocol::LeaveOneOut,
        "manifest" => {
            let path = args.manifest.as_ref().ok_or_else(|| Error::InvalidParam {
                name: "manifest",
                msg: "required when --protocol manifest".into(),
            })?;
            Protocol::Manifest(SplitManifest::load(path)?)
        }
        other => {
            return Err(Error::InvalidParam {
                name: "protocol",
                msg: format!("expected loo or manifest, got `{other}`"),
            })
        }
    };
    let classifier = match args.classifier.as_str() {
        "fqrc" => Classifier::Fqrc,
        "knn" => Classifier::Knn { k: args.knn_k },
        other => {
            return Err(Error::InvalidParam {
                name: "classifier",
                msg: format!("expected fqrc or knn, got `{other}`"),
            })
        }
    };
    let cut_sides = match args.alpha_cut_apply.as_str() {
        "both" => CutSides::Both,
        "predicted" => CutSides::Predicted,
        "reference" => CutSides::Reference,
        other => {
            return Err(Error::InvalidParam {
                name: "alpha-cut-apply",
                msg: format!("expected both, predicted or reference, got `{other}`"),
            })
        }
    };

    let cfg = EvalConfig {
        classifier,
        bins: args.bins,
        params: EvalParams::new(args.alpha, args.beta, args.gamma, args.alpha_cut)?,
        cut_sides,
    };
    let report = evaluate(&ds, &protocol, &cfg)?;

    if let Some(path) = &args.out {
        std::fs::write(path, to_key_value(&report, ds.class_names()))?;
        eprintln!("report written to {}", path.display());
    }
    Ok(render_table(&report, ds.class_names()))
}

fn load_dataset(path: &Path, classes: &Option<Vec<String>>) -> Result<Dataset> {
    let options = LoadOptions {
        class_names: classes.clone(),
    };
    load_csv(path, &options)
}

fn gather_inputs(
    input: &Option<PathBuf>,
    vector: &Option<String>,
    file: &ModelFile,
) -> Result<Vec<FeatureVector>> {
    let vectors = match (input, vector) {
        (Some(path), None) => load_feature_csv(path)?.1,
        (None, Some(text)) => vec![parse_inline_vector(text)?],
        (Some(_), Some(_)) => {
            return Err(Error::InvalidParam {
                name: "input",
                msg: "give either an input file or --vector, not both".into(),
            })
        }
        (None, None) => {
            return Err(Error::InvalidParam {
                name: "input",
                msg: "an input file or --vector is required".into(),
            })
        }
    };
    let j = file.model.num_features();
    for v in &vectors {
        if v.len() != j {
            return Err(Error::DimensionMismatch {
                expected: j,
                got: v.len(),
            });
        }
    }
    Ok(vectors)
}

fn infer_with_cut(
    file: &ModelFile,
    x: &FeatureVector,
    tau: Option<f64>,
) -> Result<ClassDistribution> {
    let d = infer(&file.model, x)?;
    match tau {
        Some(tau) => alpha_cut(&d, tau),
        None => Ok(d),
    }
}

fn confidences_text(d: &ClassDistribution) -> String {
    let cells: Vec<String> = d.confidences().iter().map(|r| format!("{r:.4}")).collect();
    cells.join(" ")
}
