//! End-to-end tests of the `mildisc` binary: exit codes, file outputs, and
//! byte-identical reruns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mildisc::dataset::csv::write_csv;
use mildisc::dataset::{AttributeSpec, Cell, Dataset};
use mildisc::fixtures::golden_column;
use mildisc::read_schemes;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mildisc")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

/// 240 measurements realizing the worked-example histogram, alternating
/// between two classes.
fn golden_csv(dir: &Path) -> PathBuf {
    let column = golden_column();
    let ds = Dataset {
        attributes: vec![
            AttributeSpec::continuous("measurement"),
            AttributeSpec::class("outcome", vec!["a".into(), "b".into()]),
        ],
        rows: column
            .iter()
            .enumerate()
            .map(|(i, &v)| vec![Cell::Number(v), Cell::Code(1 + (i % 2) as u32)])
            .collect(),
        class_index: 1,
        dropped_rows: 0,
    };
    let path = dir.join("golden.csv");
    write_csv(&ds, &path).expect("write fixture");
    path
}

#[test]
fn discretize_writes_expected_scheme_and_inspect_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = golden_csv(dir.path());

    let out = run(
        dir.path(),
        &[
            "discretize",
            "--algo",
            "mil",
            "--output",
            "out.csv",
            "--scheme-out",
            "schemes.json",
            input.to_str().unwrap(),
        ],
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("measurement: 39 regions"), "stdout: {text}");

    let schemes = read_schemes(dir.path().join("schemes.json")).unwrap();
    assert_eq!(schemes.len(), 1);
    assert_eq!(schemes[0].regions[0].lower, 0.10);
    assert_eq!(schemes[0].regions[0].upper, 0.140);
    assert_eq!(schemes[0].regions[0].label, 1);

    let out = run(dir.path(), &["inspect", "schemes.json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[0.1, 0.14)"), "stdout: {text}");

    let out = run(
        dir.path(),
        &["inspect", "schemes.json", "--output", "reemitted.json"],
    );
    assert!(out.status.success());
    let reemitted = read_schemes(dir.path().join("reemitted.json")).unwrap();
    assert_eq!(schemes, reemitted);
}

#[test]
fn apply_reproduces_the_discretize_output_without_refitting() {
    let dir = tempfile::tempdir().unwrap();
    let input = golden_csv(dir.path());

    let out = run(
        dir.path(),
        &[
            "discretize",
            "--algo",
            "modified-mil",
            "--output",
            "discretized.csv",
            "--scheme-out",
            "schemes.json",
            input.to_str().unwrap(),
        ],
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let out = run(
        dir.path(),
        &[
            "apply",
            "--schemes",
            "schemes.json",
            "--output",
            "applied.csv",
            input.to_str().unwrap(),
        ],
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let a = std::fs::read(dir.path().join("discretized.csv")).unwrap();
    let b = std::fs::read(dir.path().join("applied.csv")).unwrap();
    assert_eq!(a, b, "stored schemes must relabel the training file identically");
}

#[test]
fn apply_lists_attribute_mismatches_and_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = golden_csv(dir.path());
    let out = run(
        dir.path(),
        &[
            "discretize",
            "--scheme-out",
            "schemes.json",
            input.to_str().unwrap(),
        ],
    );
    assert!(out.status.success());

    // Same data, renamed measurement column.
    let renamed = dir.path().join("renamed.csv");
    let text = std::fs::read_to_string(&input).unwrap();
    std::fs::write(&renamed, text.replacen("measurement", "reading", 1)).unwrap();

    let out = run(
        dir.path(),
        &[
            "apply",
            "--schemes",
            "schemes.json",
            renamed.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("measurement"), "stderr: {}", stderr(&out));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = golden_csv(dir.path());

    for args in [
        vec!["discretize", "--algo", "mil", "--c", "0", input.to_str().unwrap()],
        vec!["discretize", "--algo", "chimerge", input.to_str().unwrap()],
        vec!["evaluate", "--runs", "0", input.to_str().unwrap()],
        vec!["apply", input.to_str().unwrap()], // missing --schemes
    ] {
        let out = run(dir.path(), &args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["discretize", "no-such-file.csv"],
        vec!["compare", "--manifest", "no-such-manifest.json"],
        vec!["inspect", "no-such-schemes.json"],
    ] {
        let out = run(dir.path(), &args);
        assert_eq!(out.status.code(), Some(3), "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn evaluate_is_byte_identical_across_reruns_and_parallelism() {
    let dir = tempfile::tempdir().unwrap();
    let input = golden_csv(dir.path());

    let args = |json: &str, parallel: bool| {
        let mut v = vec![
            "evaluate".to_string(),
            "--algo".into(),
            "modified-mil".into(),
            "--runs".into(),
            "10".into(),
            "--seed".into(),
            "5".into(),
            "--json".into(),
            json.to_string(),
        ];
        if parallel {
            v.push("--parallel".into());
        }
        v.push(input.to_str().unwrap().into());
        v
    };

    let run_owned = |argv: Vec<String>| {
        Command::new(bin())
            .current_dir(dir.path())
            .args(argv)
            .output()
            .expect("binary runs")
    };

    let a = run_owned(args("a.json", false));
    let b = run_owned(args("b.json", false));
    let c = run_owned(args("c.json", true));
    assert!(a.status.success(), "stderr: {}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let ja = std::fs::read(dir.path().join("a.json")).unwrap();
    let jb = std::fs::read(dir.path().join("b.json")).unwrap();
    let jc = std::fs::read(dir.path().join("c.json")).unwrap();
    assert_eq!(ja, jb);
    assert_eq!(ja, jc);
    assert!(stdout(&a).contains('\u{b1}'), "table shows acc \u{b1} s.d.");
}

#[test]
fn compare_embeds_cell_failures_and_still_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let input = golden_csv(dir.path());

    let manifest = format!(
        r#"{{
  "datasets": [
    {{ "name": "golden", "path": "{}" }},
    {{ "name": "ghost", "path": "missing.csv" }}
  ]
}}"#,
        input.file_name().unwrap().to_str().unwrap()
    );
    std::fs::write(dir.path().join("manifest.json"), manifest).unwrap();

    let args = [
        "compare",
        "--manifest",
        "manifest.json",
        "--algos",
        "mil,equal-width",
        "--runs",
        "5",
    ];
    let out = run(dir.path(), &args);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("golden"), "table lists the loaded dataset");
    assert!(text.contains("n/a"), "failed cells render as n/a");
    assert!(text.contains("failures:"), "failures are listed");
    assert!(text.contains("ghost / mil"), "failure names the cell");

    let again = run(dir.path(), &args);
    assert_eq!(out.stdout, again.stdout, "reruns are byte-identical");
}
