//! CSV files: `#`-prefixed metadata lines, then a header row and data rows.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::run::RunReport;
use crate::spec::ExperimentSpec;
use crate::sweep::SweepRow;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn metadata(spec: &ExperimentSpec, extra: &[(&str, String)]) -> String {
    let mut o = String::new();
    for line in spec.to_config().lines() {
        o.push_str("# ");
        o.push_str(line);
        o.push('\n');
    }
    for (k, v) in extra {
        o.push_str(&format!("# {k} = {v}\n"));
    }
    o
}

fn rows(header: &[&str], data: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for r in data {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}

/// Curve CSV for an iterative run, or `step,mass,energy` for time stepping.
/// The wall-time line is last among the metadata and is the only
/// non-deterministic content.
pub fn report_csv(r: &RunReport) -> Result<String> {
    let widths = r.widths.iter().map(|w| real(*w)).collect::<Vec<_>>().join(" ");
    let mut out = metadata(
        &r.spec,
        &[
            ("status", format!("{:?}", r.status)),
            ("iterations", r.iterations.to_string()),
            ("monotone", r.monotone.to_string()),
            ("widths", widths),
        ],
    );
    out.push_str(&format!("# wall_time = {:.6}\n", r.wall_time));
    let body = if !r.mass.is_empty() {
        rows(
            &["step", "mass", "energy"],
            r.mass.iter().zip(&r.energy).enumerate().map(|(k, (m, e))| vec![k.to_string(), real(*m), real(*e)]),
        )?
    } else if let (Some(a), Some(b)) = (&r.bound_alpha, &r.bound_beta) {
        rows(
            &["k", "error", "bound_alpha", "bound_beta"],
            r.errors.iter().enumerate().map(|(k, e)| vec![k.to_string(), real(*e), real(a[k]), real(b[k])]),
        )?
    } else {
        rows(&["k", "error"], r.errors.iter().enumerate().map(|(k, e)| vec![k.to_string(), real(*e)]))?
    };
    out.push_str(&body);
    Ok(out)
}

/// Drops the wall-time line so outputs of identical runs compare equal.
pub fn strip_wall_time(csv: &str) -> String {
    csv.lines().filter(|l| !l.starts_with("# wall_time")).map(|l| format!("{l}\n")).collect()
}

/// Reads the spec echo back from a report CSV.
pub fn spec_from_csv(csv: &str) -> Result<ExperimentSpec> {
    let mut s = ExperimentSpec::default();
    for line in csv.lines().filter_map(|l| l.strip_prefix("# ")) {
        let Some((k, v)) = line.split_once('=') else { continue };
        // keys after the echo are report metadata
        if s.set(k, v).is_err() {
            continue;
        }
    }
    s.validate()?;
    Ok(s)
}

pub fn table_csv(rows_in: &[SweepRow]) -> Result<String> {
    rows(
        &["h", "theta_or_sd", "dt", "iters"],
        rows_in.iter().map(|r| vec![real(r.h), r.theta_or_sd.clone(), real(r.dt), r.iters_field()]),
    )
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(d) = path.parent() {
        if !d.as_os_str().is_empty() {
            fs::create_dir_all(d)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}
