use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn covlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covlab"))
        .args(args)
        .output()
        .unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut all = args.to_vec();
    let out = dir.to_str().unwrap();
    all.extend(["--out", out]);
    covlab(&all)
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn manifest_without_clock(dir: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&read(dir, "run.json")).unwrap();
    v.as_object_mut().unwrap().remove("wall_clock_seconds");
    v
}

const SIMULATE: &[&str] = &[
    "simulate",
    "--family",
    "identity:1",
    "--p",
    "10,20,40",
    "--q",
    "0.1",
    "--trials",
    "200",
    "--seed",
    "42",
];

#[test]
fn simulate_writes_one_row_per_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), SIMULATE);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(dir.path(), "sweep.csv");
    assert_eq!(
        csv.lines().next().unwrap(),
        "p,n,phi,xi,overshoot_freq,ci_low,ci_high,undershoot_freq,uci_low,uci_high,thm2_bound,thm3_bound,mean_l1,mean_lp"
    );
    let rows = rows(&csv);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2][..4], ["40", "400", "40", "40"]);
    let m: Value = serde_json::from_str(&read(dir.path(), "run.json")).unwrap();
    assert_eq!(m["master_seed"], 42);
    assert_eq!(m["dof_convention"], "n");
    assert_eq!(m["outputs"][0], "sweep.csv");
    assert_eq!(m["horizon"][0]["horizon"], 10_000);
    assert!(m["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn simulate_is_reproducible_across_runs_and_threads() {
    let (a, b, c) = (
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    );
    run_in(a.path(), SIMULATE);
    run_in(b.path(), SIMULATE);
    let mut four = SIMULATE.to_vec();
    four.extend(["--threads", "4"]);
    run_in(c.path(), &four);
    assert_eq!(read(a.path(), "sweep.csv"), read(b.path(), "sweep.csv"));
    assert_eq!(read(a.path(), "sweep.csv"), read(c.path(), "sweep.csv"));
    assert_eq!(
        manifest_without_clock(a.path()),
        manifest_without_clock(b.path())
    );
}

#[test]
fn bad_q_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "simulate",
            "--family",
            "identity:1",
            "--p",
            "10",
            "--q",
            "1.5",
            "--trials",
            "5",
            "--seed",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 1)"));
}

#[test]
fn missing_inputs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let no_family = run_in(
        dir.path(),
        &[
            "bounds", "--p", "20", "--q", "0.1", "--trials", "5", "--seed", "1",
        ],
    );
    assert_eq!(no_family.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&no_family.stderr).contains("--family"));
    let no_seed = run_in(
        dir.path(),
        &[
            "simulate",
            "--family",
            "identity:1",
            "--p",
            "10",
            "--q",
            "0.1",
            "--trials",
            "5",
        ],
    );
    assert_eq!(no_seed.status.code(), Some(2));
    let bad_expr = run_in(
        dir.path(),
        &["spectrum", "--family", "generator:2-*x", "--p", "10"],
    );
    assert_eq!(bad_expr.status.code(), Some(2));
    let rising = run_in(
        dir.path(),
        &["spectrum", "--family", "generator:1+x", "--p", "10"],
    );
    assert_eq!(rising.status.code(), Some(2));
    let list = run_in(
        dir.path(),
        &[
            "simulate",
            "--family",
            "identity:1",
            "--p",
            "20,10",
            "--q",
            "0.1",
            "--trials",
            "5",
            "--seed",
            "1",
        ],
    );
    assert_eq!(list.status.code(), Some(2));
    assert_eq!(covlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(covlab(&["--help"]).status.code(), Some(0));
}

const BOUNDS: &[&str] = &[
    "bounds",
    "--family",
    "identity:1",
    "--p",
    "20",
    "--q",
    "0.1",
    "--trials",
    "2000",
    "--seed",
    "9",
];

#[test]
fn bounds_hold_for_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), BOUNDS);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(dir.path(), "bounds.csv");
    assert_eq!(
        csv.lines().next().unwrap(),
        "x,emp_cdf_l1,muirhead_upper,emp_cdf_lp,muirhead_lower,stderr,pass"
    );
    let rows = rows(&csv);
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r[6] == "true"));
    let m: Value = serde_json::from_str(&read(dir.path(), "run.json")).unwrap();
    assert_eq!(m["pass"], true);
}

#[test]
fn dof_convention_only_moves_the_bounds() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_in(a.path(), BOUNDS);
    let mut minus = BOUNDS.to_vec();
    minus.extend(["--dof", "n-1"]);
    run_in(b.path(), &minus);
    let (ra, rb) = (
        rows(&read(a.path(), "bounds.csv")),
        rows(&read(b.path(), "bounds.csv")),
    );
    let mut bound_changed = false;
    for (x, y) in ra.iter().zip(&rb) {
        for col in [0, 1, 3, 5] {
            assert_eq!(x[col], y[col]);
        }
        bound_changed |= x[2] != y[2] || x[4] != y[4];
    }
    assert!(bound_changed);
}

#[test]
fn spectrum_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["spectrum", "--family", "identity:1", "--p", "10"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&read(dir.path(), "spectrum.json")).unwrap();
    assert_eq!((v["phi"].as_u64(), v["xi"].as_u64()), (Some(10), Some(10)));
    assert!(v["generator_check"].is_null());

    run_in(
        dir.path(),
        &[
            "spectrum",
            "--family",
            "generator:2-x",
            "--p",
            "100",
            "--horizon",
            "10000",
        ],
    );
    let v: Value = serde_json::from_str(&read(dir.path(), "spectrum.json")).unwrap();
    // brute force over every (i, m) pair for g(x) = 2 − x
    let g = |x: f64| 2.0 - x;
    let want: Vec<u64> = (1..=100u64)
        .filter(|&i| {
            (100..=10_000).all(|m| {
                let mf = m as f64;
                (g(1.0 / mf) / g(i as f64 / mf) - 1.0).abs() < 1.0 / mf.sqrt()
            })
        })
        .collect();
    let got: Vec<u64> = v["members_j"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(got, want);
    assert_eq!(v["phi"].as_u64().unwrap() as usize, want.len());
    assert_eq!(v["generator_check"]["passes"], true);
    assert_eq!(v["generator_check"]["heuristic"], true);

    run_in(
        dir.path(),
        &["spectrum", "--family", "generator:2-sqrt(x)", "--p", "50"],
    );
    let v: Value = serde_json::from_str(&read(dir.path(), "spectrum.json")).unwrap();
    assert_eq!(v["generator_check"]["passes"], false);
}

#[test]
fn mp_density_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["mp", "--q", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = read(dir.path(), "mp.csv");
    assert_eq!(csv.lines().next().unwrap(), "x,mp_density");
    let pts: Vec<(f64, f64)> = rows(&csv)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(pts.len(), 400);
    for &(x, d) in &pts {
        if x < 0.4675 || x > 1.7325 {
            assert_eq!(d, 0.0, "x = {x}");
        }
    }
    let area: f64 = pts
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum();
    assert!((area - 1.0).abs() < 1e-3, "area = {area}");
    assert!(!dir.path().join("mp_ks.csv").exists());
    assert_eq!(
        covlab(&["mp", "--q", "1.5", "--out", dir.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn mp_simulation_ks() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "mp",
            "--q",
            "0.1",
            "--simulate",
            "--p",
            "400",
            "--trials",
            "5",
            "--seed",
            "7",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let ks = read(dir.path(), "mp_ks.csv");
    assert_eq!(ks.lines().next().unwrap(), "ks,p,q,trials,seed");
    let d: f64 = rows(&ks)[0][0].parse().unwrap();
    assert!(d < 0.05, "ks = {d}");
    let mass: f64 = rows(&read(dir.path(), "mp_hist.csv"))
        .iter()
        .map(|r| r[2].parse::<f64>().unwrap())
        .sum();
    assert!((mass - 1.0).abs() < 1e-12);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"family": "blocks:2:1:0.5", "p": [10, 20], "q": 0.1, "trials": 30, "seed": 5, "dof": "n-1"}"#,
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["simulate", "--config", cfg.to_str().unwrap(), "--p", "10"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(rows(&read(dir.path(), "sweep.csv")).len(), 1);
    let m: Value = serde_json::from_str(&read(dir.path(), "run.json")).unwrap();
    assert_eq!(m["dof_convention"], "n-1");
    assert_eq!(m["config"]["family"], "blocks:2:1:0.5");

    fs::write(&cfg, r#"{"family": "identity:1", "colour": "blue"}"#).unwrap();
    let out = run_in(
        dir.path(),
        &["spectrum", "--config", cfg.to_str().unwrap(), "--p", "5"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_family_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.json");
    fs::write(&table, r#"{"4": [3, 3, 1, 1], "5": [3, 3, 3, 1, 1]}"#).unwrap();
    let fam = format!("table:{}", table.display());
    let out = run_in(
        dir.path(),
        &["spectrum", "--family", &fam, "--p", "4", "--horizon", "5"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_str(&read(dir.path(), "spectrum.json")).unwrap();
    assert_eq!(v["members_j"], serde_json::json!([1, 2]));
    let missing = run_in(
        dir.path(),
        &["spectrum", "--family", &fam, "--p", "4", "--horizon", "6"],
    );
    assert_eq!(missing.status.code(), Some(1));
}
