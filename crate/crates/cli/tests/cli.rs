use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hweno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hweno")).args(args).output().expect("spawn hweno")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn column(rows: &[Vec<String>], name: &str) -> usize {
    rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn burgers_run_matches_known_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = hweno(&["run", "--problem", "burgers1d-smooth", "--nx", "80", "--time-step", "accuracy", "--out-dir", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let rows = csv_rows(&dir.path().join("burgers1d-smooth-l-hweno-80-report.csv"));
    let l1: f64 = rows[1][column(&rows, "l1")].parse().unwrap();
    assert!((l1 - 3.05e-7).abs() < 0.05e-7, "l1 = {l1}");
    assert_eq!(rows[1][column(&rows, "sampling")], "exact-solution");

    let field = csv_rows(&dir.path().join("burgers1d-smooth-l-hweno-80.csv"));
    assert_eq!(field[0], ["x", "u"]);
    assert_eq!(field.len(), 81);
}

#[test]
fn unknown_problem_fails_with_names() {
    let o = hweno(&["run", "--problem", "sod-tube"]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("sod-tube") && err.contains("burgers1d-smooth") && err.contains("double-mach"), "{err}");
}

#[test]
fn bad_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "problem = lax\n\ncfl = quick\n").unwrap();
    let o = hweno(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.cfg:3"), "{err}");
}

#[test]
fn saved_config_reproduces_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let saved = dir.path().join("saved.cfg");
    let o = hweno(&[
        "run",
        "--problem",
        "euler1d-smooth",
        "--nx",
        "40",
        "--gamma0",
        "0.9",
        "--gamma1",
        "0.05",
        "--gamma2",
        "0.05",
        "--time-step",
        "accuracy",
        "--no-fields",
        "--out-dir",
        a.to_str().unwrap(),
        "--save-config",
        saved.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = hweno(&["run", "--config", saved.to_str().unwrap(), "--out-dir", b.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let name = "euler1d-smooth-l-hweno-40-report.csv";
    let (ra, rb) = (csv_rows(&a.join(name)), csv_rows(&b.join(name)));
    let wall = column(&ra, "wall_seconds");
    let strip = |rows: &[Vec<String>]| -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().enumerate().filter(|(i, _)| *i != wall).map(|(_, v)| v.clone()).collect()).collect()
    };
    assert_eq!(strip(&ra), strip(&rb));
    assert!(!a.join("euler1d-smooth-l-hweno-40.csv").exists());
}

#[test]
fn single_grid_convergence_has_no_order_column() {
    let dir = tempfile::tempdir().unwrap();
    let o = hweno(&[
        "convergence",
        "--problem",
        "burgers1d-smooth",
        "--grids",
        "40",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = String::from_utf8_lossy(&o.stdout);
    assert!(!table.contains("order"), "{table}");
    let rows = csv_rows(&dir.path().join("burgers1d-smooth-l-hweno-limiter-staged-convergence.csv"));
    assert!(!rows[0].iter().any(|h| h.contains("order")));
    assert_eq!(rows.len(), 2);
}

#[test]
fn convergence_orders_and_grid_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = hweno(&["convergence", "--problem", "burgers1d-smooth", "--grids", "40,60", "--out-dir", out]);
    assert!(!o.status.success());

    let o = hweno(&["convergence", "--problem", "burgers1d-smooth", "--grids", "40,80,160", "--time-step", "accuracy", "--out-dir", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&dir.path().join("burgers1d-smooth-l-hweno-limiter-staged-convergence.csv"));
    let k = column(&rows, "l1_order");
    assert!(rows[1][k].is_empty());
    let last: f64 = rows[3][k].parse().unwrap();
    assert!((4.7..=5.3).contains(&last), "order {last}");
}

#[test]
fn reference_is_cached() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = hweno(&["reference", "--problem", "buckley-leverett", "--out-dir", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let path = String::from_utf8_lossy(&o.stdout).trim().to_string();
    assert!(Path::new(&path).exists());

    let o = hweno(&["reference", "--problem", "burgers1d-smooth", "--out-dir", out]);
    assert!(!o.status.success());
}

#[test]
fn list_shows_all_problems() {
    let o = hweno(&["list"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(text.lines().count(), 13);
    assert!(text.contains("forward-step"));
}
