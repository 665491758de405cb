//! End-to-end tests of the `fqrc` binary: command outputs, file formats
//! and exit codes (0 success, 2 data/validation, 3 I/O).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fqrc_cli::model_file::ModelFile;
use fqrc_cli::report::parse_key_value;
use fqrc_core::{FourTuple, MembershipModel};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn fqrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqrc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn train_writes_model_that_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = dir.path().join("model.fqrc");
    let data = data_dir().join("synthetic3.csv");

    let out = fqrc(&[
        "train",
        data.to_str().unwrap(),
        "--out",
        model_path.to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("class meadow: 12 samples"), "{text}");
    assert!(text.contains("tuple x/meadow:"), "{text}");

    let file = ModelFile::load(&model_path).unwrap();
    assert_eq!(file.model.num_features(), 2);
    assert_eq!(file.model.num_classes(), 3);
    assert_eq!(file.class_counts, vec![12, 12, 12]);
    // meadow spans [0, 1] on both features after training
    assert_eq!(file.model.tuple(0, 0).support(), (0.0, 1.0));

    // training again produces a byte-identical file
    let first = std::fs::read(&model_path).unwrap();
    let out = fqrc(&[
        "train",
        data.to_str().unwrap(),
        "--out",
        model_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&model_path).unwrap(), first);
}

#[test]
fn train_missing_file_is_io_error() {
    let out = fqrc(&[
        "train",
        "no-such-file.csv",
        "--out",
        "/tmp/never-written.fqrc",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn train_empty_class_is_data_error_naming_it() {
    let data = data_dir().join("synthetic3.csv");
    let out = fqrc(&[
        "train",
        data.to_str().unwrap(),
        "--out",
        "/tmp/never-written.fqrc",
        "--classes",
        "meadow,river,ridge,glacier",
    ]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("glacier"), "{err}");
}

#[test]
fn infer_reproduces_walkthrough_confidences() {
    let model = data_dir().join("walkthrough_model.fqrc");
    let input = data_dir().join("walkthrough_input.csv");

    let out = fqrc(&["infer", model.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("0.5561 0.0264 0.0000 0.4175"),
        "{}",
        stdout(&out)
    );

    // identical invocations are byte-identical
    let again = fqrc(&["infer", model.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);

    // --binary appends the argmax class
    let out = fqrc(&[
        "infer",
        model.to_str().unwrap(),
        "--vector",
        "-0.1545,-1.7597",
        "--binary",
    ]);
    assert_eq!(
        stdout(&out).trim(),
        "0\t0.5561 0.0264 0.0000 0.4175\tInsidecity"
    );
}

#[test]
fn infer_flags_out_of_support_sample_as_none() {
    let model = data_dir().join("walkthrough_model.fqrc");
    let out = fqrc(&["infer", model.to_str().unwrap(), "--vector", "50,50"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0\t0.0000 0.0000 0.0000 0.0000\tNONE");
}

#[test]
fn infer_dimension_mismatch_is_data_error() {
    let model = data_dir().join("walkthrough_model.fqrc");
    let out = fqrc(&["infer", model.to_str().unwrap(), "--vector", "1.0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn rank_renders_walkthrough_interpretation() {
    let model = data_dir().join("walkthrough_model.fqrc");
    let input = data_dir().join("walkthrough_input.csv");
    let out = fqrc(&["rank", model.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        "0\tInsidecity>Forest>Coast|x:Opencountry\t\
         Insidecity > Forest > Coast, definitely not: Opencountry"
    );
}

/// Eight-class model whose single feature yields confidences
/// 0.7644 / 0.2356 for the first two classes and zero elsewhere.
fn eight_class_model(path: &Path) {
    let x = 0.0;
    let names = ["T", "I", "S", "H", "C", "O", "M", "F"];
    let mu = [1.0, 0.2356 / 0.7644];
    let mut tuples = Vec::new();
    for k in 0..8usize {
        let t = match mu.get(k) {
            // left ramp of width 1 hitting mu[k] at x
            Some(&m) => FourTuple::new(x + 1.0 - m, x + 2.0, 1.0, 1.0).unwrap(),
            None => FourTuple::new(5.0, 6.0, 0.5, 0.5).unwrap(),
        };
        tuples.push(t);
    }
    let model = MembershipModel::new(
        tuples,
        vec!["f".to_string()],
        names.iter().map(|s| s.to_string()).collect(),
    )
    .unwrap();
    ModelFile::new(model, 50, vec![1; 8])
        .unwrap()
        .save(path)
        .unwrap();
}

#[test]
fn rank_much_higher_pair_against_eight_classes() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = dir.path().join("eight.fqrc");
    eight_class_model(&model_path);

    let out = fqrc(&["rank", model_path.to_str().unwrap(), "--vector", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        "0\tT>>I|x:S,H,C,O,M,F\tT >> I, definitely not: S,H,C,O,M,F"
    );

    // a wider "higher" band turns the pair into a plain >
    let out = fqrc(&[
        "rank",
        model_path.to_str().unwrap(),
        "--vector",
        "0",
        "--thresholds",
        "0,0.6,1",
    ]);
    assert_eq!(
        stdout(&out).trim(),
        "0\tT>I|x:S,H,C,O,M,F\tT > I, definitely not: S,H,C,O,M,F"
    );
}

#[test]
fn rank_uniform_pair_uses_equals() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("pair.csv");
    std::fs::write(&data, "f:x,label\n0.0,A\n0.0,A\n0.0,B\n0.0,B\n").unwrap();
    let model_path = dir.path().join("pair.fqrc");
    let out = fqrc(&[
        "train",
        data.to_str().unwrap(),
        "--out",
        model_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let out = fqrc(&["rank", model_path.to_str().unwrap(), "--vector", "0"]);
    assert_eq!(stdout(&out).trim(), "0\tA=B\tA = B");
}

#[test]
fn evaluate_writes_reloadable_report() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.txt");
    let data = data_dir().join("synthetic3.csv");

    let out = fqrc(&[
        "evaluate",
        data.to_str().unwrap(),
        "--alpha",
        "0",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table = stdout(&out);
    assert!(table.contains("accuracy"), "{table}");
    assert!(table.contains("meadow"), "{table}");

    let text = std::fs::read_to_string(&report_path).unwrap();
    let (report, names) = parse_key_value(&text, "report").unwrap();
    assert_eq!(report.accuracy(), 1.0);
    assert_eq!(names, vec!["meadow", "ridge", "river"]);
    // serializing the reloaded report reproduces the file byte for byte
    assert_eq!(fqrc_cli::report::to_key_value(&report, &names), text);
}

#[test]
fn evaluate_knn_baseline() {
    let data = data_dir().join("synthetic3.csv");
    let out = fqrc(&[
        "evaluate",
        data.to_str().unwrap(),
        "--classifier",
        "knn",
        "--knn-k",
        "1",
        "--alpha",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("accuracy               1.0000"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn evaluate_manifest_protocol() {
    let data = data_dir().join("synthetic3.csv");
    let manifest = data_dir().join("synthetic3_split.manifest");
    let out = fqrc(&[
        "evaluate",
        data.to_str().unwrap(),
        "--protocol",
        "manifest",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("accuracy               1.0000"));

    // an all-train manifest leaves nothing to evaluate
    let dir = tempfile::tempdir().unwrap();
    let all_train = dir.path().join("all-train.manifest");
    let lines: Vec<String> = (0..36).map(|i| format!("{i},train")).collect();
    std::fs::write(&all_train, lines.join("\n")).unwrap();
    let out = fqrc(&[
        "evaluate",
        data.to_str().unwrap(),
        "--protocol",
        "manifest",
        "--manifest",
        all_train.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no test rows"));
}

#[test]
fn evaluate_rejects_unknown_flags_values() {
    let data = data_dir().join("synthetic3.csv");
    let out = fqrc(&["evaluate", data.to_str().unwrap(), "--protocol", "bogus"]);
    assert_eq!(code(&out), 2);
    let out = fqrc(&["evaluate", data.to_str().unwrap(), "--classifier", "svm"]);
    assert_eq!(code(&out), 2);
}
