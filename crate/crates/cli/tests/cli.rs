//! End-to-end checks of the `simplexct` binary: exit codes, record shapes,
//! and determinism of everything derived from `--seed`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use estimators::RunRecord;
use generators::gen_lb_disj;
use stream_engine::{read_edge_list_file, DedupPolicy};
use tempfile::TempDir;

fn simplexct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplexct"))
        .args(args)
        .env_remove("SIMPLEXCT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.push("--out");
    let path_str = path.to_str().unwrap().to_string();
    full.push(&path_str);
    let out = simplexct(&full);
    assert!(out.status.success(), "generate failed: {}", stderr_of(&out));
    path
}

#[test]
fn generate_writes_the_advertised_header() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "complete.txt", &["--family", "complete", "--k", "3", "--n", "5"]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("3 5 10\n"), "header line: {:?}", text.lines().next());
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn generate_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let args = ["--family", "random", "--k", "3", "--n", "14", "--m", "25", "--seed", "9"];
    let a = fs::read(generate(dir.path(), "a.txt", &args)).unwrap();
    let b = fs::read(generate(dir.path(), "b.txt", &args)).unwrap();
    assert_eq!(a, b);
    let c = fs::read(generate(
        dir.path(),
        "c.txt",
        &["--family", "random", "--k", "3", "--n", "14", "--m", "25", "--seed", "10"],
    ))
    .unwrap();
    assert_ne!(a, c);
}

#[test]
fn gadget_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = generate(
        dir.path(),
        "disj.txt",
        &["--family", "lb-disj", "--k", "3", "--n", "2", "--x-seed", "1", "--y-seed", "2"],
    );
    let parsed = read_edge_list_file(&path, DedupPolicy::Strict).unwrap();
    let direct = gen_lb_disj(3, 2, 1, 2, 0.5).unwrap();
    assert_eq!(parsed.edges.len(), direct.total_edges());
    assert_eq!(parsed.k, 3);
    assert_eq!(parsed.n, direct.n_vertices);
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = simplexct(&["generate", "--family", "complete", "--n", "5", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--k"));
}

#[test]
fn family_parameter_gaps_are_usage_errors() {
    let out = simplexct(&["generate", "--family", "random", "--k", "3", "--n", "9", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--m"));
}

#[test]
fn exact_census_record_has_fixed_fields() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "c.txt", &["--family", "complete", "--k", "3", "--n", "5"]);
    let out = simplexct(&["exact", "--in", path.to_str().unwrap()]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(record["t_k"], 5);
    assert_eq!(record["k"], 3);
    assert_eq!(record["n"], 5);
    assert_eq!(record["m"], 10);
    assert_eq!(record["schema_version"], 1);
}

#[test]
fn exact_reports_parse_errors_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "3 5 2\n1 2 3\n1 2\n").unwrap();
    let out = simplexct(&["exact", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("line 3"), "stderr: {}", stderr_of(&out));
}

#[test]
fn estimate_emits_a_deterministic_record() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "c.txt", &["--family", "complete", "--k", "3", "--n", "7"]);
    let args = [
        "estimate", "--in", path.to_str().unwrap(), "--algo", "simplest",
        "--T", "35", "--eps", "0.5", "--delta", "0.25", "--seed", "11",
    ];
    let first: RunRecord = serde_json::from_str(stdout_of(&simplexct(&args)).trim()).unwrap();
    let second: RunRecord = serde_json::from_str(stdout_of(&simplexct(&args)).trim()).unwrap();
    assert_eq!(first.algorithm, "simplest");
    assert_eq!(first.passes, Some(2));
    assert_eq!(first.seed, 11);
    assert!(first.space_peak_words.unwrap() > 0);
    assert_eq!(first.value, second.value);
    assert_eq!(first.trials, second.trials);
    assert_eq!(first.space_peak_words, second.space_peak_words);
}

#[test]
fn estimate_on_a_simplex_free_stream_returns_zero() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("flat.txt");
    fs::write(&path, "3 9 3\n1 2 3\n4 5 6\n7 8 9\n").unwrap();
    let out = simplexct(&[
        "estimate", "--in", path.to_str().unwrap(), "--algo", "shadow", "--T", "1", "--seed", "4",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let record: RunRecord = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(record.value, Some(0.0));
}

#[test]
fn onepass_without_promises_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "c.txt", &["--family", "complete", "--k", "3", "--n", "5"]);
    let out = simplexct(&[
        "estimate", "--in", path.to_str().unwrap(), "--algo", "onepass", "--T", "5",
        "--delta-e", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--delta-v"));
}

#[test]
fn unknown_algorithm_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "c.txt", &["--family", "complete", "--k", "3", "--n", "5"]);
    let out = simplexct(&["estimate", "--in", path.to_str().unwrap(), "--algo", "triangle", "--T", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("unknown algorithm"));
}

#[test]
fn env_var_supplies_the_default_seed() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "c.txt", &["--family", "complete", "--k", "3", "--n", "5"]);
    let out = Command::new(env!("CARGO_BIN_EXE_simplexct"))
        .args(["estimate", "--in", path.to_str().unwrap(), "--algo", "simplest", "--T", "5"])
        .env("SIMPLEXCT_SEED", "99")
        .output()
        .unwrap();
    assert!(out.status.success());
    let record: RunRecord = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(record.seed, 99);
}

#[test]
fn verify_reports_every_check_on_a_single_simplex() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("simplex.txt");
    fs::write(&path, "3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n").unwrap();
    let out = simplexct(&["verify", "--in", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("PASS label-census"));
    assert!(text.contains("PASS hyperwedge-census"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_random_suite_is_clean() {
    let out = simplexct(&["verify", "--suite", "random", "--cases", "25", "--seed", "1"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("25 cases, 0 failures"));
}

#[test]
fn verify_requires_a_target() {
    let out = simplexct(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--in or --suite"));
}

#[test]
fn bench_records_parse_back_losslessly() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("records.jsonl");
    let out = simplexct(&[
        "bench", "--algos", "simplest,shadow", "--family", "random",
        "--k", "3", "--n", "12", "--m-grid", "20,40",
        "--T", "1", "--runs", "2", "--seed", "3", "--exact",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8, "2 cells x 2 runs x 2 algorithms");
    for line in lines {
        let record: RunRecord = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&record).unwrap(), line);
        assert_eq!(record.passes, Some(2));
        assert!(record.exact.is_some());
        assert!(record.space_peak_words.unwrap() > 0);
    }
}

#[test]
fn bench_rejects_unknown_algorithms_up_front() {
    let out = simplexct(&[
        "bench", "--algos", "simplest,wedge", "--family", "random", "--k", "3", "--n", "10",
        "--m-grid", "10", "--T", "1", "--out", "nowhere.jsonl",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("unknown algorithm"));
    assert!(!Path::new("nowhere.jsonl").exists());
}
