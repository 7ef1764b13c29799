use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use balanced_diagonals::{verify_partition, BicoloredGrid, DiagonalPartition};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn bdiag(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bdiag"));
    cmd.args(args).env_remove("BDIAG_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bdiag(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bdiag(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cross_is_reported_infeasible() {
    let o = run(&["check", path(&fixture("cross7.grid"))]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("infeasible\n"));
    assert!(text.contains("ImproperColorClass"));

    let o = run(&["decompose", path(&fixture("cross7.grid"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ImproperColorClass"));
}

#[test]
fn decompose_then_verify() {
    let grid_path = fixture("rows2.grid");
    let o = run(&["decompose", path(&grid_path)]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    let grid: BicoloredGrid = std::fs::read_to_string(&grid_path)
        .unwrap()
        .parse()
        .unwrap();
    let p = DiagonalPartition::from_json(&json).unwrap();
    assert!(verify_partition(&grid, &p).is_valid());

    let dir = std::env::temp_dir().join(format!("bdiag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let part = dir.join("rows2.json");
    std::fs::write(&part, &json).unwrap();
    let o = run(&["verify", path(&grid_path), path(&part)]);
    assert_eq!(o.status.code(), Some(0));

    let broken = p.to_json().replacen("0", "1", 1);
    std::fs::write(&part, broken).unwrap();
    let o = run(&["verify", path(&grid_path), path(&part)]);
    assert_ne!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn trace_and_pretty_output() {
    let o = run(&[
        "decompose",
        "--trace",
        "--full",
        path(&fixture("checker8.grid")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let trace: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(trace["n"], 8);
    assert!(trace["block"].is_object());

    let o = run(&["decompose", "--pretty", path(&fixture("rows2.grid"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() >= 7);
}

#[test]
fn oracle_on_small_cross() {
    let o = run(&["oracle", path(&fixture("cross4.grid"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "none exists");

    let o = run(&["oracle", "--limit", "3", path(&fixture("cross4.grid"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_points_at_the_character() {
    let o = run(&["check", path(&fixture("malformed.grid"))]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 2"), "{err}");
}

#[test]
fn seeds_are_deterministic_and_read_from_the_environment() {
    let a = run(&["gen", "--n", "9", "--seed", "42"]);
    let b = run(&["gen", "--n", "9", "--seed", "42"]);
    let c = bdiag(&["gen", "--n", "9"])
        .env("BDIAG_SEED", "42")
        .output()
        .unwrap();
    let d = run(&["gen", "--n", "9", "--seed", "43"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_ne!(a.stdout, d.stdout);

    let grid = stdout(&a);
    let x = run_stdin(&["decompose", "--full", "--seed", "7", "-"], &grid);
    let y = run_stdin(&["decompose", "--full", "-"], &grid.clone());
    let z = {
        let mut cmd = bdiag(&["decompose", "--full", "-"]);
        cmd.env("BDIAG_SEED", "7")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped());
        let mut child = cmd.spawn().unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(grid.as_bytes())
            .unwrap();
        child.wait_with_output().unwrap()
    };
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, z.stdout);
    assert_eq!(y.status.code(), Some(0));
}

#[test]
fn generated_grids_round_trip() {
    for (spec, n) in [
        ("feasible", 7),
        ("uniform:0.4", 10),
        ("blue:13", 7),
        ("diagonals:3", 11),
    ] {
        let g = run(&["gen", "--n", &n.to_string(), "--spec", spec, "--seed", "5"]);
        assert_eq!(g.status.code(), Some(0), "{spec}");
        let grid: BicoloredGrid = stdout(&g).parse().unwrap();
        let o = run_stdin(&["decompose", "-"], &stdout(&g));
        if o.status.code() == Some(0) {
            let p = DiagonalPartition::from_json(&stdout(&o)).unwrap();
            assert!(verify_partition(&grid, &p).is_valid());
        } else {
            assert_eq!(o.status.code(), Some(1), "{spec}");
        }
    }
    let o = run(&["gen", "--n", "7", "--spec", "cross"]);
    let c = run_stdin(&["check", "-"], &stdout(&o));
    assert_eq!(c.status.code(), Some(1));
}

#[test]
fn bench_reports_timings() {
    let o = run(&["bench", "--n", "8", "--count", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("partitions 10 errors 0"), "{text}");
}
