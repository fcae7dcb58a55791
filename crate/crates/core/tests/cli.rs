use std::path::Path;
use std::process::{Command, Output};

use plates_olives::game::Game;

fn olives(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_olives"))
        .args(args)
        .env_remove("OLIVE_CACHE")
        .output()
        .expect("spawn olives")
}

fn stdout(output: &Output) -> String {
    assert!(
        output.status.success(),
        "olives failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn with_cache(cache: &Path, args: &[&str]) -> Output {
    let mut full = vec!["--cache", cache.to_str().unwrap()];
    full.extend_from_slice(args);
    olives(&full)
}

#[test]
fn count_csv_matches_known_values() {
    let out = stdout(&olives(&["--no-cache", "--format", "csv", "count", "--max-n", "4"]));
    assert_eq!(out, "n,count\n0,1\n1,2\n2,10\n3,76\n4,772\n");
}

#[test]
fn count_zero_prints_one_row() {
    let out = stdout(&olives(&["--no-cache", "--format", "csv", "count", "--max-n", "0"]));
    assert_eq!(out, "n,count\n0,1\n");
}

#[test]
fn count_variants() {
    let closed = stdout(&olives(&[
        "--no-cache", "--format", "csv", "count", "--max-n", "3", "--variant", "closed",
    ]));
    assert_eq!(closed, "n,count\n0,1\n1,3\n2,15\n3,107\n");
    let young = stdout(&olives(&[
        "--no-cache", "--format", "csv", "count", "--max-n", "3", "--variant", "young",
    ]));
    assert_eq!(young, "n,count\n0,1\n1,3\n2,15\n3,105\n");
}

#[test]
fn count_json_lines() {
    let out = stdout(&olives(&["--no-cache", "--format", "json", "count", "--max-n", "1"]));
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["n"], 1);
    assert_eq!(rows[1]["count"], "2");
}

#[test]
fn table_is_right_aligned() {
    let out = stdout(&olives(&["--no-cache", "count", "--max-n", "4"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    assert!(lines[5].ends_with("772"));
}

#[test]
fn enumerate_small_games() {
    assert_eq!(stdout(&olives(&["enumerate", "--n", "0"])), "P+ P-s\n");
    assert_eq!(
        stdout(&olives(&["enumerate", "--n", "1"])),
        "P+ O+f O-:1 P-s\nP+ P+ P-s P-s\n"
    );
}

#[test]
fn enumerated_games_round_trip() {
    let out = stdout(&olives(&["enumerate", "--n", "4"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 772);
    for line in &lines {
        let game: Game = line.parse().unwrap();
        assert_eq!(game.len(), 4);
        assert_eq!(&game.to_string(), line);
    }
    let mut sorted = lines.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), lines.len());
}

#[test]
fn histogram_totals_match_count() {
    let out = stdout(&olives(&["enumerate", "--n", "3", "--emit", "histogram"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("v_f,v_l,p_s,p_c,count"));
    let total: u64 = lines.map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 76);
}

#[test]
fn skeletons_are_distinct() {
    let out = stdout(&olives(&["enumerate", "--n", "1", "--emit", "skeletons"]));
    assert_eq!(out, "P+ O+f O- P-s\nP+ P+ P-s P-s\n");
}

#[test]
fn enumeration_above_ceiling_fails() {
    let output = olives(&["enumerate", "--n", "7"]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("error:"));
    let raised = olives(&["--oracle-ceiling", "2", "enumerate", "--n", "3"]);
    assert!(!raised.status.success());
}

#[test]
fn verify_suites_exit_zero() {
    for suite in ["paper-values", "identities", "bounds", "claims"] {
        let out = stdout(&olives(&["--no-cache", "verify", "--suite", suite]));
        assert!(out.trim_end().ends_with("0 failed"), "{suite}: {out}");
        assert!(!out.contains("FAIL"), "{suite}: {out}");
    }
    let out = stdout(&olives(&["--oracle-ceiling", "4", "verify", "--suite", "oracle"]));
    assert!(out.trim_end().ends_with("0 failed"));
}

#[test]
fn verify_reports_unreachable_ceiling() {
    let output = olives(&["--max-states", "10", "verify", "--suite", "oracle"]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stdout).contains("FAIL"));
}

#[test]
fn ratio_small_values() {
    let out = stdout(&olives(&["--no-cache", "--format", "csv", "ratio", "--max-n", "2"]));
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][..3], ["1", "2", "2.000000"]);
    assert_eq!(rows[1][..3], ["2", "10", "1.581139"]);
}

#[test]
fn ratio_precision() {
    let out = stdout(&olives(&[
        "--no-cache", "--format", "csv", "ratio", "--max-n", "1", "--precision", "2",
    ]));
    assert!(out.lines().nth(1).unwrap().starts_with("1,2,2.00,"));
}

#[test]
fn bounds_table_labels_envelopes() {
    let out = stdout(&olives(&["--no-cache", "bounds", "--max-n", "6"]));
    assert!(out.contains("not a theorem at finite n"));
    assert!(out.contains("10395") || out.contains("945"));
}

#[test]
fn resource_limit_is_an_error() {
    let output = olives(&["--no-cache", "--max-states", "5", "count", "--max-n", "10"]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("error:"));
}

#[test]
fn bad_arguments_are_rejected() {
    assert!(!olives(&["count"]).status.success());
    assert!(!olives(&["count", "--max-n", "x"]).status.success());
    assert!(!olives(&["--format", "xml", "count", "--max-n", "1"]).status.success());
}

#[test]
fn cache_cold_and_warm_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    let args = ["--format", "csv", "count", "--max-n", "12"];
    let cold = stdout(&with_cache(&cache, &args));
    assert!(cache.exists());
    let warm = stdout(&with_cache(&cache, &args));
    assert_eq!(cold, warm);
    let uncached = stdout(&olives(&["--no-cache", "--format", "csv", "count", "--max-n", "12"]));
    assert_eq!(cold, uncached);
    let checked = stdout(&with_cache(&cache, &["--format", "csv", "count", "--max-n", "12", "--self-check"]));
    assert_eq!(cold, checked);
}

#[test]
fn corrupted_cache_entry_fails_self_check() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.json");
    stdout(&with_cache(&cache, &["count", "--max-n", "3"]));
    let text = std::fs::read_to_string(&cache).unwrap().replace("\"76\"", "\"77\"");
    std::fs::write(&cache, text).unwrap();
    let output = with_cache(&cache, &["count", "--max-n", "3", "--self-check"]);
    assert!(!output.status.success());
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.json");
    let output = Command::new(env!("CARGO_BIN_EXE_olives"))
        .args(["count", "--max-n", "2"])
        .env("OLIVE_CACHE", &cache)
        .output()
        .unwrap();
    assert!(output.status.success());
    assert!(cache.exists());
}
