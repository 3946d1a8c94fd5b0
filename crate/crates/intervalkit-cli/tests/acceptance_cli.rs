//! CLI acceptance: the sweep-vs-new comparison pipeline end to end
//! (criterion 12), the selftest pass table (criterion 13), and the exit
//! code contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_intervalkit"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn run_ok(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {:?}\nstdout: {}\nstderr: {}",
        cmd,
        stdout(&out),
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

const QUADRATIC_NEW: &str = "\
rhs = [1,2]*t/(1+x^2)
t0 = 0
t_end = 4
step = 0.005
x0 = [-1,1]
method = rk4
";

const QUADRATIC_SWEEP: &str = "\
rhs = [1,2]*t/(1+x^2)
t0 = 0
t_end = 4
step = 0.005
x0 = [-1,1]
method = param_sweep

[sweep]
density = 5
";

const SIN_NEW: &str = "\
rhs = x*sin(t)
t0 = 0
t_end = 6
step = 0.005
x0 = [1,2]
method = rk4
";

const SIN_SWEEP: &str = "\
rhs = x*sin(t)
t0 = 0
t_end = 6
step = 0.005
x0 = [1,2]
method = param_sweep

[sweep]
density = 5
";

fn compare_pipeline(dir: &Path, label: &str, new_cfg: &str, sweep_cfg: &str) {
    let new_path = write_config(dir, &format!("{label}_new.conf"), new_cfg);
    let sweep_path = write_config(dir, &format!("{label}_sweep.conf"), sweep_cfg);

    run_ok(bin().arg("solve").arg(&new_path).arg("--out").arg(dir));
    run_ok(bin().arg("solve").arg(&sweep_path).arg("--out").arg(dir));

    let new_csv = dir.join(format!("{label}_new_rk4.csv"));
    let sweep_csv = dir.join(format!("{label}_sweep_sweep.csv"));
    assert!(new_csv.exists() && sweep_csv.exists());

    let svg = dir.join(format!("{label}.svg"));
    let dev_csv = dir.join(format!("{label}_dev.csv"));
    let out = run_ok(
        bin()
            .arg("compare")
            .arg(&new_csv)
            .arg(&sweep_csv)
            .arg("--svg")
            .arg(&svg)
            .arg("--csv")
            .arg(&dev_csv),
    );
    assert!(out.contains("sup deviation"), "missing deviation report:\n{out}");
    let dev: f64 = out
        .lines()
        .find(|l| l.contains("sup deviation"))
        .and_then(|l| l.rsplit('=').next())
        .and_then(|v| v.trim().parse().ok())
        .expect("deviation value");
    assert!(dev.is_finite(), "deviation not finite");

    let svg_text = fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg") && svg_text.contains("<polyline"));
    let dev_text = fs::read_to_string(&dev_csv).unwrap();
    assert!(dev_text.starts_with("t,dev_0_1"));
}

#[test]
fn criterion_12_sweep_vs_new_comparison() {
    let dir = tmp("crit12");
    compare_pipeline(&dir, "quadratic", QUADRATIC_NEW, QUADRATIC_SWEEP);
    compare_pipeline(&dir, "singrowth", SIN_NEW, SIN_SWEEP);
    println!("criterion 12 PASS: sweep-vs-new comparison emits CSV + SVG with reported deviations");
}

#[test]
fn criterion_13_selftest_table() {
    let start = Instant::now();
    let out = run_ok(bin().arg("selftest"));
    let elapsed = start.elapsed().as_secs_f64();
    let passes = out.lines().filter(|l| l.contains("PASS")).count();
    assert!(passes >= 11, "expected 11 PASS rows, got {passes}:\n{out}");
    assert!(!out.contains("FAIL"), "selftest reported failures:\n{out}");
    assert!(
        out.contains("all 11 checks passed"),
        "missing summary line:\n{out}"
    );
    assert!(elapsed < 30.0, "selftest took {elapsed:.1} s, budget 30 s");
    println!("criterion 13 PASS: selftest table in {elapsed:.2} s");
}

#[test]
fn exit_code_contract() {
    // parse errors → 2
    let out = bin().arg("eval").arg("[2,1]").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().arg("eval").arg("x -").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 3"));

    // evaluation errors → 3
    let out = bin().arg("eval").arg("x-x").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin().arg("eval").arg("1/0").output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // solver errors → 4, echoing the failing t
    let dir = tmp("exitcodes");
    let bad = write_config(
        &dir,
        "divzero.conf",
        "rhs = x/x\nt0 = 0\nt_end = 1\nx0 = [-1,1]\n",
    );
    let out = bin().arg("solve").arg(&bad).arg("--out").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t = 0"));

    // config parse errors → 2
    let unknown = write_config(
        &dir,
        "unknown.conf",
        "rhs = x\nt0 = 0\nt_end = 1\nx0 = [0,1]\nbogus = 3\n",
    );
    let out = bin().arg("solve").arg(&unknown).arg("--out").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_examples_match_reference_values() {
    let out = run_ok(bin().arg("eval").arg("[-2,-1]*[1,2]"));
    assert!(out.contains("[-3.8668066722416743e0,-6.3319332775832549e-1]"));
    let out = run_ok(bin().args(["eval", "x-x", "--x", "[5,9]"]));
    assert!(out.contains("[-1.0000000000000000e0,1.0000000000000000e0]"));
}

#[test]
fn solve_outputs_are_deterministic_and_round_trip() {
    let dir = tmp("determinism");
    let cfg = write_config(&dir, "p.conf", SIN_NEW);

    let out1 = tmp("determinism_run1");
    let out2 = tmp("determinism_run2");
    run_ok(bin().arg("solve").arg(&cfg).arg("--out").arg(&out1));
    run_ok(bin().arg("solve").arg(&cfg).arg("--out").arg(&out2));
    let a = fs::read(out1.join("p_rk4.csv")).unwrap();
    let b = fs::read(out2.join("p_rk4.csv")).unwrap();
    assert_eq!(a, b, "solve output is not byte-identical across runs");

    // x_l < x_r strictly on a new-calculus trajectory
    let text = String::from_utf8(a).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(f[1] < f[2], "row violates x_l < x_r: {line}");
    }

    // comparing a file against itself reproduces it exactly: deviation 0
    let out = run_ok(
        bin()
            .arg("compare")
            .arg(out1.join("p_rk4.csv"))
            .arg(out2.join("p_rk4.csv")),
    );
    assert!(out.contains("sup deviation = 0.000000e0"), "{out}");
}

#[test]
fn gh_solve_emits_one_csv_per_branch() {
    let dir = tmp("ghfour");
    let pi = std::f64::consts::PI;
    let cfg = write_config(
        &dir,
        "sin_gh.conf",
        &format!(
            "rhs = x*sin(t)\nt0 = 0\nt_end = 6\nstep = 0.005\nx0 = [1,2]\nmethod = gh_branch\n\n\
             [gh]\nbranch = i,ii @ {pi}\nbranch = ii,i @ {pi}\nbranch = i\nbranch = ii\n"
        ),
    );
    let out = run_ok(bin().arg("solve").arg(&cfg).arg("--out").arg(&dir));
    for k in 1..=4 {
        assert!(dir.join(format!("sin_gh_gh_{k}.csv")).exists());
    }
    assert!(!out.contains("discarded"), "no branch should be discarded:\n{out}");
}

#[test]
fn thread_cap_does_not_change_sweep_output() {
    let dir = tmp("threadcap");
    let cfg = write_config(&dir, "s.conf", QUADRATIC_SWEEP);
    let out1 = tmp("threadcap_auto");
    let out2 = tmp("threadcap_one");
    run_ok(bin().arg("solve").arg(&cfg).arg("--out").arg(&out1));
    run_ok(
        bin()
            .arg("solve")
            .arg(&cfg)
            .arg("--out")
            .arg(&out2)
            .env("INTERVALKIT_THREADS", "1"),
    );
    let a = fs::read(out1.join("s_sweep.csv")).unwrap();
    let b = fs::read(out2.join("s_sweep.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn compare_rejects_mismatched_grids() {
    let dir = tmp("mismatch");
    let a = write_config(&dir, "a.conf", SIN_NEW);
    let b = write_config(
        &dir,
        "b.conf",
        "rhs = x*sin(t)\nt0 = 0\nt_end = 5\nstep = 0.005\nx0 = [1,2]\n",
    );
    run_ok(bin().arg("solve").arg(&a).arg("--out").arg(&dir));
    run_ok(bin().arg("solve").arg(&b).arg("--out").arg(&dir));
    let out = bin()
        .arg("compare")
        .arg(dir.join("a_rk4.csv"))
        .arg(dir.join("b_rk4.csv"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn diff_subcommand_modes() {
    // gH derivative at 0: [0, 1]
    let out = run_ok(bin().args(["diff", "--gh", "[t, t^2+1]", "--at", "0"]));
    let line = out.lines().next().unwrap();
    assert!(line.starts_with("[l,r]"), "{out}");
    let nums: Vec<f64> = line
        .trim_start_matches("[l,r] = [")
        .trim_end_matches(']')
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!(nums[0].abs() < 1e-8 && (nums[1] - 1.0).abs() < 1e-8);

    // switching points of the three-switch example
    let tau = 2.0 * std::f64::consts::PI;
    let out = run_ok(bin().args([
        "diff",
        "--switching",
        "[t^2/2, 1 + t^2/2 + 2*sin(t)^2]",
        "--domain",
        &format!("0:{tau}"),
        "--grid-n",
        "128",
    ]));
    let pts: Vec<f64> = out.lines().map(|l| l.trim().parse().unwrap()).collect();
    assert_eq!(pts.len(), 3);
    for (p, want) in pts.iter().zip([0.5, 1.0, 1.5].map(|k| k * std::f64::consts::PI)) {
        assert!((p - want).abs() < 1e-7, "switching point {p} vs {want}");
    }

    // grid mode emits CSV rows
    let out = run_ok(bin().args([
        "diff",
        "[t, t^2+1]",
        "--grid",
        "0.1:0.9:9",
        "--domain",
        "0:1",
    ]));
    assert!(out.starts_with("t,x_l,x_r,x_c,x_w"));
    assert_eq!(out.lines().count(), 10);
}
