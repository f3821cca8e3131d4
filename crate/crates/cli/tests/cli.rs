use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bandit-replay")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Fields of the single data row of a CSV with a header line.
fn record(csv: &str) -> Vec<String> {
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2, "{csv}");
    lines[1].split(',').map(String::from).collect()
}

fn write_world(dir: &Path, name: &str, body: &str) -> String {
    let p = path(dir, name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn uniform_generation_over_ten_arms() {
    let dir = tempfile::tempdir().unwrap();
    let world = write_world(
        dir.path(),
        "ten.toml",
        "dim = 0\n[arms]\ncount = 10\n[contexts]\nkind = \"constant\"\nvalue = []\n\
         [payoff]\nkind = \"constant\"\nmeans = [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]\n",
    );
    let log = path(dir.path(), "ten.log");
    let text = stdout(&bin(&["generate", "--world", &world, "--events", "100000", "--seed", "1", "--out", &log]));
    let freqs: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(freqs.len(), 10);
    assert!(freqs.iter().all(|f| (0.095..=0.105).contains(f)), "{freqs:?}");
}

#[test]
fn generation_is_reproducible_and_needs_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.log"), path(dir.path(), "b.log"));
    for out in [&a, &b] {
        stdout(&bin(&["generate", "--world", &config("linear.toml"), "--events", "5000", "--seed", "9", "--out", out]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let seedless = write_world(
        dir.path(),
        "seedless.toml",
        "dim = 0\n[arms]\ncount = 2\n[contexts]\nkind = \"constant\"\nvalue = []\n[payoff]\nkind = \"constant\"\nmeans = [0.1, 0.2]\n",
    );
    let out = bin(&["generate", "--world", &seedless, "--events", "10", "--out", &a]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_world_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let log = path(dir.path(), "x.log");
    assert_eq!(bin(&["generate", "--events", "10", "--seed", "1", "--out", &log]).status.code(), Some(2));
    let absent = path(dir.path(), "absent.toml");
    assert_eq!(
        bin(&["generate", "--world", &absent, "--events", "10", "--seed", "1", "--out", &log]).status.code(),
        Some(2)
    );
}

#[test]
fn single_arm_log_of_ones() {
    let dir = tempfile::tempdir().unwrap();
    let world = write_world(
        dir.path(),
        "one.toml",
        "dim = 0\n[arms]\ncount = 1\n[contexts]\nkind = \"constant\"\nvalue = []\n[payoff]\nkind = \"constant\"\nmeans = [1.0]\n",
    );
    let log = path(dir.path(), "one.log");
    stdout(&bin(&["generate", "--world", &world, "--events", "100", "--seed", "1", "--out", &log]));
    let row = record(&stdout(&bin(&["replay", "--log", &log, "--algo", "fixed", "--seed", "1"])));
    assert_eq!(row, ["fixed", "1", "100", "100", "100"]);
}

#[test]
fn hand_written_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = path(dir.path(), "hand.log");
    let mut text = String::from("#bandit-log v1 dim=0 logger=uniform seed=0 count=6\n");
    for (t, (arm, payoff)) in [(0, 1), (1, 1), (1, 0), (0, 0), (1, 1), (0, 1)].iter().enumerate() {
        text += &format!("{t}\t\t0,1\t{arm}\t0.5\t{payoff}\n");
    }
    std::fs::write(&log, text).unwrap();
    let row = record(&stdout(&bin(&["replay", "--log", &log, "--algo", "fixed", "--arm", "0", "--seed", "1"])));
    assert_eq!(row[2..], ["2", "3", "6"]);
    assert!((row[1].parse::<f64>().unwrap() - 2.0 / 3.0).abs() < 1e-12);

    // arm 5 is never offered, so the policy falls back to arm 0
    let row = record(&stdout(&bin(&["replay", "--log", &log, "--algo", "fixed", "--arm", "5", "--seed", "1"])));
    assert_eq!(row[3], "3");
}

#[test]
fn example_one_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let log = path(dir.path(), "ex1.log");
    for seed in ["1", "2", "3", "4"] {
        stdout(&bin(&["generate", "--world", &config("example_one.toml"), "--events", "5000", "--seed", seed, "--out", &log]));
        let row = record(&stdout(&bin(&[
            "replay", "--log", &log, "--algo", "commit-first", "--mode", "infinite", "--target-t", "100", "--seed", "1",
        ])));
        let g: f64 = row[1].parse().unwrap();
        assert_eq!((g - 0.5).abs(), 0.5);
    }
}

#[test]
fn undefined_estimates_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let log = path(dir.path(), "short.log");
    stdout(&bin(&["generate", "--world", &config("bernoulli5.toml"), "--events", "50", "--seed", "1", "--out", &log]));
    let out = bin(&["replay", "--log", &log, "--algo", "ucb", "--mode", "infinite", "--target-t", "1000", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partial"));

    let empty = path(dir.path(), "empty.log");
    std::fs::write(&empty, "#bandit-log v1 dim=0 logger=uniform seed=0 count=0\n").unwrap();
    assert_eq!(bin(&["replay", "--log", &empty, "--algo", "fixed", "--seed", "1"]).status.code(), Some(3));
}

#[test]
fn replay_mode_flags() {
    let dir = tempfile::tempdir().unwrap();
    let log = path(dir.path(), "skew.log");
    stdout(&bin(&["generate", "--world", &config("skewed_logger.toml"), "--events", "20000", "--seed", "1", "--out", &log]));
    // non-uniform logs are refused by the plain evaluators
    assert_eq!(bin(&["replay", "--log", &log, "--algo", "fixed", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["replay", "--log", &log, "--algo", "fixed", "--mode", "rejection", "--seed", "1"]).status.code(), Some(2));
    let row = record(&stdout(&bin(&[
        "replay", "--log", &log, "--algo", "fixed", "--arm", "1", "--mode", "rejection", "--p-min", "0.2", "--seed", "1",
    ])));
    assert_eq!(row[4], "20000");
    let g: f64 = row[1].parse().unwrap();
    assert!((g - 0.6).abs() < 0.03, "{g}");
}

#[test]
fn bounds_closed_form() {
    let text = stdout(&bin(&["analyze", "--kind", "bounds", "--k", "2", "--l", "1000", "--g", "0.5", "--delta", "0.05"]));
    let row: Vec<f64> = record(&text).iter().map(|v| v.parse().unwrap()).collect();
    let log_term = (4.0f64 / 0.05).ln();
    let g1 = (3.0 * 2.0 / 1000.0 * log_term).sqrt();
    let g2 = (3.0 * 2.0 / (1000.0 * 0.5) * log_term).sqrt();
    assert!((row[4] - g1).abs() < 1e-12 && (row[4] - 0.162).abs() < 5e-4);
    assert!((row[5] - g2).abs() < 1e-12 && (row[5] - 0.229).abs() < 5e-4);
    assert!((row[6] - (g1 + g2) * 0.5 / (1.0 - g1)).abs() < 1e-12 && (row[6] - 0.234).abs() < 5e-4);

    let out = bin(&["analyze", "--kind", "bounds", "--k", "2", "--l", "10", "--g", "0.5", "--delta", "0.05"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn convergence_on_a_deterministic_world_has_no_error() {
    let dir = tempfile::tempdir().unwrap();
    let world = write_world(
        dir.path(),
        "det.toml",
        "dim = 0\nseed = 1\n[arms]\ncount = 2\n[contexts]\nkind = \"constant\"\nvalue = []\n\
         [payoff]\nkind = \"constant\"\nmeans = [0.0, 1.0]\n",
    );
    let text = stdout(&bin(&[
        "analyze", "--kind", "convergence", "--world", &world, "--arm", "1", "--l-grid", "100,1000", "--runs", "5", "--seed",
        "2",
    ]));
    for line in text.lines().skip(1) {
        assert_eq!(line.split(',').nth(1), Some("0"), "{text}");
    }
}

#[test]
fn replicate_with_identical_seeds_has_zero_spread() {
    let dir = tempfile::tempdir().unwrap();
    let log = path(dir.path(), "lin.log");
    stdout(&bin(&["generate", "--world", &config("linear.toml"), "--events", "4000", "--seed", "1", "--out", &log]));
    let text = stdout(&bin(&[
        "analyze", "--kind", "replicate", "--log", &log, "--algo", "ucb", "--runs", "2", "--identical-seeds", "--seed", "3",
    ]));
    assert_eq!(record(&text)[2], "0");
}

#[test]
fn unknown_analysis_kind() {
    assert_eq!(bin(&["analyze", "--kind", "histogram"]).status.code(), Some(2));
    assert_eq!(bin(&["analyze", "--kind", "convergence", "--runs", "3"]).status.code(), Some(2));
}
