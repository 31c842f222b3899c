//! CLI behavior: golden files for the bundled corpora, byte-level
//! determinism, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root exists")
}

fn bibcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bibcount"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("golden {name}: {e}"))
}

fn stdout_of(args: &[&str]) -> String {
    let output = bibcount(args);
    assert!(
        output.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("utf-8 output")
}

#[test]
fn worked_example_weights_match_the_golden_file() {
    let out = stdout_of(&[
        "weights",
        "--corpus",
        "data/worked_example.jsonl",
        "--level",
        "author",
        "--level",
        "organization",
        "--level",
        "country",
    ]);
    assert_eq!(out, golden("worked_example_weights.csv"));
}

#[test]
fn table6_indicators_match_the_golden_files() {
    let args = [
        "indicators",
        "--corpus",
        "data/table6.jsonl",
        "--level",
        "country",
        "--method",
        "full",
        "--method",
        "frac-country",
    ];
    assert_eq!(stdout_of(&args), golden("table6_indicators.csv"));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    assert_eq!(stdout_of(&json_args), golden("table6_indicators.json"));
}

#[test]
fn table7_field_bonus_matches_the_golden_file() {
    let out = stdout_of(&[
        "bonus",
        "--corpus",
        "data/table7.jsonl",
        "--level",
        "country",
        "--group-by",
        "field",
    ]);
    assert_eq!(out, golden("table7_bonus_by_field.csv"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "compare",
        "--corpus",
        "data/table6.jsonl",
        "--level",
        "country",
        "--method",
        "full",
        "--method",
        "frac-country",
        "--method",
        "frac-author",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert!(!first.is_empty());
}

#[test]
fn compare_against_full_never_shows_negative_p_decrease() {
    let out = stdout_of(&[
        "compare",
        "--corpus",
        "data/table7.jsonl",
        "--level",
        "country",
        "--method",
        "full",
        "--method",
        "frac-country",
        "--method",
        "first-author",
        "--baseline",
        "full",
    ]);
    let header_idx = out
        .lines()
        .position(|l| l.starts_with("unit,"))
        .expect("header row");
    let header: Vec<&str> = out.lines().nth(header_idx).unwrap().split(',').collect();
    for line in out.lines().skip(header_idx + 1) {
        for (column, value) in header.iter().zip(line.split(',')) {
            if column.starts_with("p_decrease_pct_") && !value.is_empty() {
                let decrease: f64 = value.parse().expect("numeric decrease");
                assert!(decrease >= 0.0, "negative decrease in {line}");
            }
        }
    }
}

#[test]
fn validate_reports_zero_records_for_an_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    std::fs::write(&path, "").unwrap();
    let output = bibcount(&["validate", "--corpus", path.to_str().unwrap()]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("0 records"), "{text}");
}

#[test]
fn exit_codes_distinguish_config_corpus_and_success() {
    // Unknown flag: clap usage error, exit 2.
    let output = bibcount(&["weights", "--corpus", "data/table6.jsonl", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2));

    // Invalid method/level combination: configuration error, exit 2.
    let output = bibcount(&[
        "weights",
        "--corpus",
        "data/table6.jsonl",
        "--level",
        "author",
        "--method",
        "frac-country",
    ]);
    assert_eq!(output.status.code(), Some(2));

    // Corpus validation failure: exit 3.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        r#"{"id":"x","year":2009,"doc_type":"article","citations":1,"authors":["a"],"regular_addresses":[{"organization":"O","country":"C"}],"author_address_links":[[9]],"field_assignments":["F"]}"#,
    )
    .unwrap();
    let output = bibcount(&["validate", "--corpus", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));
    let report = String::from_utf8(output.stdout).unwrap();
    assert!(report.contains("address index 9"), "{report}");

    // Missing corpus file: exit 3.
    let output = bibcount(&["indicators", "--corpus", "no/such/file", "--level", "country"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let c = dir.path().join("c.jsonl");
    for (path, seed) in [(&a, "11"), (&b, "11"), (&c, "12")] {
        let output = bibcount(&[
            "simulate",
            "--config",
            "data/sim_config.example.json",
            "--seed",
            seed,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    let bytes_c = std::fs::read(&c).unwrap();
    assert_eq!(bytes_a, bytes_b);
    assert_ne!(bytes_a, bytes_c);

    // The generated corpus is valid and analyzable end to end.
    let output = bibcount(&[
        "bonus",
        "--corpus",
        a.to_str().unwrap(),
        "--level",
        "country",
        "--group-by",
        "broad-field",
        "--broad-field-map",
        "data/broad_fields.example.json",
    ]);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );

    // Bad generator config: exit 2.
    let bad = dir.path().join("bad_config.json");
    std::fs::write(&bad, r#"{"fields": 0}"#).unwrap();
    let output = bibcount(&[
        "simulate",
        "--config",
        bad.to_str().unwrap(),
        "--out",
        dir.path().join("x.jsonl").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn multiplicative_mode_runs_through_the_cli() {
    let out = stdout_of(&[
        "indicators",
        "--corpus",
        "data/table7.jsonl",
        "--level",
        "country",
        "--method",
        "full",
        "--mode",
        "multiplicative",
    ]);
    assert!(out.contains("mode=multiplicative"));
    assert!(out.lines().filter(|l| l.starts_with("country,")).count() >= 4);
}
