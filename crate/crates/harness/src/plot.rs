//! Gnuplot scripts that read a report CSV. Nothing is rendered here.

use crate::error::{HarnessError, Result};
use crate::run::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Error against k on a log scale.
    Error,
    /// Error together with both bound curves.
    Bound,
    /// Mass and energy against the step.
    Physics,
}

impl std::str::FromStr for PlotKind {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "error" => Ok(Self::Error),
            "bound" => Ok(Self::Bound),
            "physics" => Ok(Self::Physics),
            _ => Err(HarnessError::Plot(format!("unknown plot kind `{s}`"))),
        }
    }
}

/// Picks a kind from what the report contains.
pub fn default_kind(report: &RunReport) -> PlotKind {
    if !report.mass.is_empty() {
        PlotKind::Physics
    } else if report.has_bounds() {
        PlotKind::Bound
    } else {
        PlotKind::Error
    }
}

pub fn emit_plot_script(report: &RunReport, csv_path: &str, kind: PlotKind) -> Result<String> {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile commentschars '#'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set grid\n");
    let title = format!("{} {}D", report.spec.method.as_str(), report.spec.dim);
    s.push_str(&format!("set title '{title}'\n"));
    match kind {
        PlotKind::Error | PlotKind::Bound => {
            if report.errors.is_empty() {
                return Err(HarnessError::Plot("report has no error curve".into()));
            }
            if kind == PlotKind::Bound && !report.has_bounds() {
                return Err(HarnessError::Plot("report has no bound columns".into()));
            }
            s.push_str("set logscale y\nset format y '%.0e'\n");
            s.push_str("set xlabel 'k'\nset ylabel 'error'\n");
            s.push_str(&format!("plot '{csv_path}' using 1:2 with linespoints lw 2"));
            if kind == PlotKind::Bound {
                s.push_str(", \\\n     '' using 1:3 with lines dt 2");
                s.push_str(", \\\n     '' using 1:4 with lines dt 3");
            }
            s.push('\n');
        }
        PlotKind::Physics => {
            if report.mass.is_empty() {
                return Err(HarnessError::Plot("report has no mass/energy columns".into()));
            }
            s.push_str("set xlabel 'step'\nset multiplot layout 2,1\n");
            s.push_str(&format!("plot '{csv_path}' using 1:2 with lines\n"));
            s.push_str(&format!("plot '{csv_path}' using 1:3 with lines\n"));
            s.push_str("unset multiplot\n");
        }
    }
    Ok(s)
}
