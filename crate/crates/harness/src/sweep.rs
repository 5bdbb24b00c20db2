use rayon::prelude::*;

use crate::error::Result;
use crate::run::{run, RunStatus};
use crate::spec::ExperimentSpec;

/// Values to vary; an empty list keeps the spec's own value, except that a
/// grid with every list empty has no cells.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepGrid {
    pub theta: Vec<f64>,
    pub h: Vec<f64>,
    pub dt: Vec<f64>,
    pub sd: Vec<usize>,
}

impl SweepGrid {
    pub fn is_empty(&self) -> bool {
        self.theta.is_empty() && self.h.is_empty() && self.dt.is_empty() && self.sd.is_empty()
    }

    /// Cells in table order: `dt` outermost, then `h`, then θ or sd.
    pub fn cells(&self, base: &ExperimentSpec) -> Vec<ExperimentSpec> {
        if self.is_empty() {
            return Vec::new();
        }
        let or = |v: &Vec<f64>, d: f64| if v.is_empty() { vec![d] } else { v.clone() };
        let dts = or(&self.dt, base.dt);
        let hs = or(&self.h, base.h);
        let thetas = or(&self.theta, base.theta);
        let sds = if self.sd.is_empty() { vec![base.sd] } else { self.sd.clone() };
        let mut out = Vec::new();
        for &dt in &dts {
            for &h in &hs {
                for &sd in &sds {
                    for &theta in &thetas {
                        out.push(ExperimentSpec { dt, h, sd, theta, out: None, ..base.clone() });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub h: f64,
    /// θ for DN tables, subdomain count for NN tables.
    pub theta_or_sd: String,
    pub dt: f64,
    pub iters: usize,
    pub converged: bool,
}

impl SweepRow {
    /// `max_iter+` marks cells that did not reach the tolerance.
    pub fn iters_field(&self) -> String {
        if self.converged {
            self.iters.to_string()
        } else {
            format!("{}+", self.iters)
        }
    }
}

/// Runs every cell; cells are independent and run concurrently.
pub fn sweep(base: &ExperimentSpec, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    base.validate()?;
    let by_sd = !grid.sd.is_empty();
    grid.cells(base)
        .par_iter()
        .map(|s| {
            let label = if by_sd { s.sd.to_string() } else { format!("{:?}", s.theta) };
            let (iters, converged) = match run(s) {
                Ok(r) => (r.iterations, r.status == RunStatus::Converged),
                Err(crate::HarnessError::Solver(_)) => (s.max_iter, false),
                Err(e) => return Err(e),
            };
            Ok(SweepRow { h: s.h, theta_or_sd: label, dt: s.dt, iters, converged })
        })
        .collect()
}
