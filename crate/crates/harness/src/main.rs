use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use chdd_harness::output::{report_csv, table_csv, write};
use chdd_harness::{emit_plot_script, plot, preset, run, sweep, ExperimentSpec, HarnessError, PlotKind, PresetItem, RunStatus};

/// Run DN / NN substructuring experiments and write CSV results.
#[derive(Debug, Parser)]
#[command(name = "chdd", version)]
struct Cli {
    /// dn, nn or monodomain; ignored with --preset.
    method: Option<String>,
    #[arg(long)]
    dim: Option<String>,
    /// a,b or a,b,y0,y1
    #[arg(long)]
    domain: Option<String>,
    /// Interior breakpoints, comma separated.
    #[arg(long)]
    split: Option<String>,
    #[arg(long)]
    sd: Option<String>,
    #[arg(long)]
    unequal: bool,
    /// Put the Dirichlet solve on the right subdomain.
    #[arg(long)]
    swap: bool,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long, conflicts_with = "hx")]
    h: Option<String>,
    #[arg(long)]
    hx: Option<String>,
    #[arg(long)]
    hy: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    max_iter: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// smooth, smooth-x or constant
    #[arg(long)]
    c_profile: Option<String>,
    /// auto, direct or modal
    #[arg(long)]
    strip_solve: Option<String>,
    #[arg(long)]
    preset: Option<String>,
    /// `key = value` file applied before flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; CSV goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script (error, bound or physics).
    #[arg(long, num_args = 0..=1, default_missing_value = "auto")]
    plot: Option<String>,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut o = Vec::new();
        let mut put = |k: &'static str, v: &Option<String>| {
            if let Some(v) = v {
                o.push((k, v.clone()));
            }
        };
        put("dim", &self.dim);
        put("domain", &self.domain);
        put("split", &self.split);
        put("sd", &self.sd);
        put("theta", &self.theta);
        put("h", &self.h);
        put("hx", &self.hx);
        put("hy", &self.hy);
        put("dt", &self.dt);
        put("eps", &self.eps);
        put("c", &self.c);
        put("tol", &self.tol);
        put("max_iter", &self.max_iter);
        put("seed", &self.seed);
        put("steps", &self.steps);
        put("c_profile", &self.c_profile);
        put("strip_solve", &self.strip_solve);
        if self.unequal {
            o.push(("unequal", "true".into()));
        }
        if self.swap {
            o.push(("swap", "true".into()));
        }
        o
    }

    fn apply(&self, spec: &mut ExperimentSpec) -> Result<(), HarnessError> {
        for (k, v) in self.overrides() {
            spec.set(k, &v)?;
        }
        Ok(())
    }
}

fn emit(out: Option<&Path>, name: &str, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(dir) => write(&dir.join(name), text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn single(cli: &Cli, spec: &ExperimentSpec, label: &str) -> Result<bool, HarnessError> {
    let report = run(spec)?;
    let csv_name = format!("{label}.csv");
    emit(cli.out.as_deref(), &csv_name, &report_csv(&report)?)?;
    if let Some(kind) = &cli.plot {
        let kind = if kind == "auto" { plot::default_kind(&report) } else { kind.parse::<PlotKind>()? };
        let script = emit_plot_script(&report, &csv_name, kind)?;
        emit(cli.out.as_deref(), &format!("{label}.gp"), &script)?;
    }
    eprintln!("{label}: {:?} after {} iterations", report.status, report.iterations);
    Ok(report.status != RunStatus::NotConverged)
}

fn main_inner(cli: &Cli) -> Result<bool, HarnessError> {
    let mut base = ExperimentSpec::default();
    if let Some(path) = &cli.config {
        base.apply_config(&std::fs::read_to_string(path)?)?;
    }
    if let Some(name) = &cli.preset {
        let mut ok = true;
        for item in preset(name)? {
            match item {
                PresetItem::Run { label, mut spec } => {
                    cli.apply(&mut spec)?;
                    ok &= single(cli, &spec, &label)?;
                }
                PresetItem::Sweep { label, mut spec, grid } => {
                    cli.apply(&mut spec)?;
                    let rows = sweep(&spec, &grid)?;
                    emit(cli.out.as_deref(), &format!("{label}.csv"), &table_csv(&rows)?)?;
                    let bad = rows.iter().filter(|r| !r.converged).count();
                    eprintln!("{label}: {} cells, {bad} not converged", rows.len());
                    ok &= bad == 0;
                }
            }
        }
        return Ok(ok);
    }
    if let Some(m) = &cli.method {
        base.set("method", m)?;
    } else if cli.config.is_none() {
        return Err(HarnessError::Spec("give a method, --config or --preset".into()));
    }
    cli.apply(&mut base)?;
    let label = base.method.as_str().to_string();
    single(cli, &base, &label)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match main_inner(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ HarnessError::Spec(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            // solver refusals come from parameters the spec allowed through
            match e {
                HarnessError::Solver(
                    chdd_core::Error::InvalidParams(_)
                    | chdd_core::Error::InvalidGrid(_)
                    | chdd_core::Error::InvalidDecomposition(_),
                ) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
