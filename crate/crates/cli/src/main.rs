use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fqrc_cli::commands::{
    cmd_evaluate, cmd_infer, cmd_rank, cmd_train, EvaluateArgs, InferArgs, RankArgs, TrainArgs,
};
use fqrc_core::rank::DiffRule;
use fqrc_core::{Error, Result};

/// Fuzzy qualitative rank classifier.
#[derive(Parser)]
#[command(name = "fqrc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a membership model from a labeled CSV dataset
    Train(TrainCli),
    /// Emit per-class confidences for input samples
    Infer(InferCli),
    /// Emit symbolic rankings for input samples
    Rank(RankCli),
    /// Run a protocol over a dataset and report the metric suite
    Evaluate(EvaluateCli),
}

#[derive(Args)]
struct TrainCli {
    /// Labeled dataset (header: f:<name>,...,label[,ref:<class>,...])
    data: PathBuf,
    /// Where to write the model file
    #[arg(short, long)]
    out: PathBuf,
    /// Histogram bin count
    #[arg(long, default_value_t = fqrc_core::learn::DEFAULT_BINS)]
    bins: usize,
    /// Explicit comma-separated class list (default: sorted distinct labels)
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<String>>,
}

#[derive(Args)]
struct InferCli {
    /// Model file written by `fqrc train`
    model: PathBuf,
    /// Feature CSV (f:<name> columns; label/ref columns are ignored)
    input: Option<PathBuf>,
    /// Inline feature vector, e.g. "-0.1545,-1.7597"
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    vector: Option<String>,
    /// Zero out confidences below this threshold and renormalize
    #[arg(long)]
    alpha_cut: Option<f64>,
    /// Append the argmax class (max aggregation)
    #[arg(long)]
    binary: bool,
}

#[derive(Args)]
struct RankCli {
    /// Model file written by `fqrc train`
    model: PathBuf,
    /// Feature CSV (f:<name> columns; label/ref columns are ignored)
    input: Option<PathBuf>,
    /// Inline feature vector, e.g. "-0.1545,-1.7597"
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    vector: Option<String>,
    /// Zero out confidences below this threshold and renormalize
    #[arg(long)]
    alpha_cut: Option<f64>,
    /// Symbol thresholds as eq,hi,much
    #[arg(long, default_value = "0,0.5,1", value_parser = parse_thresholds)]
    thresholds: (f64, f64, f64),
    /// Confidence gap rule for symbols
    #[arg(long, default_value = "adjacent", value_parser = parse_diff_rule)]
    diff_rule: DiffRule,
}

#[derive(Args)]
struct EvaluateCli {
    /// Labeled dataset (header: f:<name>,...,label[,ref:<class>,...])
    data: PathBuf,
    /// Evaluation protocol
    #[arg(long, default_value = "loo")]
    protocol: String,
    /// Row manifest for --protocol manifest (lines: <row>,<train|test>)
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Classifier under evaluation
    #[arg(long, default_value = "fqrc")]
    classifier: String,
    /// Neighbour count for --classifier knn
    #[arg(long, default_value_t = fqrc_core::baselines::DEFAULT_K)]
    knn_k: usize,
    /// Histogram bin count for fqrc training
    #[arg(long, default_value_t = fqrc_core::learn::DEFAULT_BINS)]
    bins: usize,
    /// Forgiveness rate of the correctness score
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Weight on missed labels
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Weight on false-positive labels
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Zero out confidences below this threshold before binarization
    #[arg(long)]
    alpha_cut: Option<f64>,
    /// Which side the alpha-cut applies to
    #[arg(long, default_value = "both")]
    alpha_cut_apply: String,
    /// Explicit comma-separated class list (default: sorted distinct labels)
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<String>>,
    /// Where to write the key-value report file
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn parse_thresholds(text: &str) -> std::result::Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected eq,hi,much, got `{text}`"));
    }
    let mut nums = [0.0f64; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("invalid threshold `{}`", part.trim()))?;
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn parse_diff_rule(text: &str) -> std::result::Result<DiffRule, String> {
    match text {
        "adjacent" => Ok(DiffRule::Adjacent),
        "from-max" => Ok(DiffRule::FromMax),
        other => Err(format!("expected adjacent or from-max, got `{other}`")),
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Train(args) => cmd_train(&TrainArgs {
            data: args.data,
            out: args.out,
            bins: args.bins,
            classes: args.classes,
        }),
        Command::Infer(args) => cmd_infer(&InferArgs {
            model: args.model,
            input: args.input,
            vector: args.vector,
            alpha_cut: args.alpha_cut,
            binary: args.binary,
        }),
        Command::Rank(args) => cmd_rank(&RankArgs {
            model: args.model,
            input: args.input,
            vector: args.vector,
            alpha_cut: args.alpha_cut,
            thresholds: args.thresholds,
            diff_rule: args.diff_rule,
        }),
        Command::Evaluate(args) => cmd_evaluate(&EvaluateArgs {
            data: args.data,
            protocol: args.protocol,
            manifest: args.manifest,
            classifier: args.classifier,
            knn_k: args.knn_k,
            bins: args.bins,
            alpha: args.alpha,
            beta: args.beta,
            gamma: args.gamma,
            alpha_cut: args.alpha_cut,
            alpha_cut_apply: args.alpha_cut_apply,
            classes: args.classes,
            out: args.out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
