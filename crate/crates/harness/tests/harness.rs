use std::process::Command;

use chdd_harness::output::{report_csv, spec_from_csv, strip_wall_time, table_csv};
use chdd_harness::presets::{dn_base, nn_base};
use chdd_harness::{emit_plot_script, run, sweep, ExperimentSpec, Method, PlotKind, SweepGrid};

fn small_nn() -> ExperimentSpec {
    ExperimentSpec { sd: 4, h: 1.0 / 64.0, dt: 1e-3, ..nn_base(1) }
}

#[test]
fn identical_specs_give_identical_csv() {
    for spec in [dn_base([1.0, 2.0], 1.4), small_nn(), ExperimentSpec { method: Method::Monodomain, steps: 5, ..Default::default() }] {
        let a = report_csv(&run(&spec).unwrap()).unwrap();
        let b = report_csv(&run(&spec).unwrap()).unwrap();
        assert_eq!(strip_wall_time(&a), strip_wall_time(&b));
        assert!(a.contains("# wall_time"));
    }
}

#[test]
fn different_seed_changes_errors() {
    let a = run(&small_nn()).unwrap();
    let b = run(&ExperimentSpec { seed: 43, ..small_nn() }).unwrap();
    assert_ne!(a.errors[0], b.errors[0]);
}

#[test]
fn spec_echo_round_trips() {
    let spec = ExperimentSpec { theta: 0.3, h: 1.0 / 128.0, swap: true, tol: 1e-8, ..dn_base([-1.5, 1.0], 0.0) };
    let csv = report_csv(&run(&spec).unwrap()).unwrap();
    assert_eq!(spec_from_csv(&csv).unwrap(), spec);
    let strip = ExperimentSpec { dim: 2, domain: vec![0.0, 4.0, 0.0, 1.0], sd: 2, h: 1.0 / 16.0, hy: 1.0 / 8.0, ..nn_base(2) };
    let csv = report_csv(&run(&strip).unwrap()).unwrap();
    assert_eq!(spec_from_csv(&csv).unwrap(), strip);
}

#[test]
fn empty_grid_gives_header_only() {
    let rows = sweep(&dn_base([0.0, 1.0], 0.5), &SweepGrid::default()).unwrap();
    assert!(rows.is_empty());
    assert_eq!(table_csv(&rows).unwrap(), "h,theta_or_sd,dt,iters\n");
}

#[test]
fn sweep_marks_unconverged_cells() {
    let base = ExperimentSpec { max_iter: 3, ..dn_base([0.0, 1.0], 0.5) };
    let grid = SweepGrid { theta: vec![0.1, 0.5], ..Default::default() };
    let rows = sweep(&base, &grid).unwrap();
    assert_eq!(rows[0].iters_field(), "3+");
    assert_eq!(rows[1].iters_field(), "2");
    let csv = table_csv(&rows).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",0.1,9.9999999999999995e-7,3+"));
}

#[test]
fn curve_csv_columns() {
    let r = run(&dn_base([1.0, 2.0], 1.4)).unwrap();
    let csv = report_csv(&r).unwrap();
    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "k,error,bound_alpha,bound_beta");
    assert_eq!(body.len(), r.errors.len() + 1);
    let first: Vec<f64> = body[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first[1].to_bits(), r.errors[0].to_bits());
    // θ ≠ 1/2 has no closed-form DN factor
    let r = run(&ExperimentSpec { theta: 0.3, ..dn_base([1.0, 2.0], 1.4) }).unwrap();
    assert!(!r.has_bounds());
    assert!(report_csv(&r).unwrap().contains("\nk,error\n"));
}

#[test]
fn plot_scripts() {
    let r = run(&dn_base([1.0, 2.0], 1.4)).unwrap();
    let s = emit_plot_script(&r, "x.csv", PlotKind::Error).unwrap();
    assert!(s.contains("set logscale y") && s.contains("plot 'x.csv' using 1:2"));
    let s = emit_plot_script(&r, "x.csv", PlotKind::Bound).unwrap();
    assert!(s.contains("using 1:3") && s.contains("using 1:4"));
    let r = run(&ExperimentSpec { theta: 0.3, ..dn_base([1.0, 2.0], 1.4) }).unwrap();
    assert!(emit_plot_script(&r, "x.csv", PlotKind::Bound).is_err());
    assert!(emit_plot_script(&r, "x.csv", PlotKind::Physics).is_err());
}

fn chdd(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chdd")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn cli_exit_codes() {
    let (code, out) = chdd(&["dn", "--h", "1/64"]);
    assert_eq!(code, 0);
    assert!(out.contains("# iterations = 2"));
    assert_eq!(chdd(&["dn", "--theta", "0.1", "--max-iter", "3"]).0, 1);
    assert_eq!(chdd(&["dn", "--theta", "1.5"]).0, 2);
    assert_eq!(chdd(&["dn", "--sd", "3"]).0, 2);
    assert_eq!(chdd(&["nn", "--bogus"]).0, 2);
    assert_eq!(chdd(&["--preset", "nope"]).0, 2);
}

#[test]
fn cli_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "method = nn\ndomain = 0,20\nsd = 4\ntheta = 1/4\n").unwrap();
    let (code, _) = chdd(&["--config", cfg.to_str().unwrap(), "--dt", "1e-3", "--out", d, "--plot"]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("nn.csv")).unwrap();
    let spec = spec_from_csv(&csv).unwrap();
    assert_eq!((spec.sd, spec.theta, spec.dt), (4, 0.25, 1e-3));
    assert!(dir.path().join("nn.gp").exists());
}
