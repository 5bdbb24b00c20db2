use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chdd_core::discretization::{energy, mass, LinearProblem};
use chdd_core::dn::{dn_solve, dn_solve_2d, strip_reference, DNReport, DnGeometry};
use chdd_core::nn::{nn_solve, nn_solve_2d};
use chdd_core::theory::{dn_contraction_bound, nn_bounds, symbols, BoundGeometry};
use chdd_core::{snap_decomposition, Decomposition, Grid1D, Grid2D, Mesh, Params, PhaseField, TraceSet};

use crate::error::{HarnessError, Result};
use crate::spec::{CProfile, ExperimentSpec, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Converged,
    NotConverged,
    /// Time stepping; no iteration involved.
    Completed,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub spec: ExperimentSpec,
    pub status: RunStatus,
    pub iterations: usize,
    /// Errors for `k = 0, 1, …`.
    pub errors: Vec<f64>,
    pub bound_alpha: Option<Vec<f64>>,
    pub bound_beta: Option<Vec<f64>>,
    /// Errors never increase; relaxed iterations may oscillate, so this is
    /// a flag rather than a check.
    pub monotone: bool,
    /// Subdomain widths actually used after snapping.
    pub widths: Vec<f64>,
    pub mass: Vec<f64>,
    pub energy: Vec<f64>,
    pub wall_time: f64,
}

impl RunReport {
    pub fn has_bounds(&self) -> bool {
        self.bound_alpha.is_some() && self.bound_beta.is_some()
    }
}

pub fn build_mesh(spec: &ExperimentSpec) -> Result<Mesh> {
    let x = Grid1D::with_spacing(spec.domain[0], spec.domain[1], spec.h)?;
    Ok(match spec.dim {
        1 => Mesh::Line(x),
        _ => {
            let y = Grid1D::with_spacing(spec.domain[2], spec.domain[3], spec.hy)?;
            Mesh::Strip(Grid2D::new(x, y, spec.y_boundary)?)
        }
    })
}

/// The frozen field `uⁿ` the linear step is built from.
pub fn frozen_field(spec: &ExperimentSpec, mesh: &Mesh) -> Vec<f64> {
    let gx = mesh.x();
    let ys = mesh.column_coords();
    let (y0, ly) = if spec.dim == 2 { (spec.domain[2], spec.domain[3] - spec.domain[2]) } else { (0.0, 1.0) };
    let mut out = Vec::with_capacity(mesh.n_unknown_nodes());
    for x in gx.nodes() {
        let fx = 1.0 + 0.05 * (2.0 * PI * (x - gx.x_left) / gx.length()).cos();
        for y in &ys {
            let fy = 1.0 + 0.05 * (PI * (y - y0) / ly).cos();
            out.push(
                spec.c
                    * match spec.c_profile {
                        CProfile::Constant => 1.0,
                        CProfile::SmoothX => fx,
                        CProfile::Smooth if spec.dim == 2 => fx * fy,
                        CProfile::Smooth => fx,
                    },
            );
        }
    }
    out
}

pub fn decomposition(spec: &ExperimentSpec, grid: &Grid1D) -> Result<Decomposition> {
    if !spec.split.is_empty() {
        let mut pts = vec![grid.x_left];
        pts.extend_from_slice(&spec.split);
        pts.push(grid.x_right);
        return Ok(snap_decomposition(&pts, grid)?);
    }
    Ok(if spec.unequal { Decomposition::alternating(*grid, spec.sd)? } else { Decomposition::equal(*grid, spec.sd)? })
}

fn params(spec: &ExperimentSpec) -> Result<Params> {
    Ok(Params::new(spec.eps, spec.dt, spec.c, spec.theta)?)
}

fn reference(spec: &ExperimentSpec, problem: &LinearProblem) -> Result<PhaseField> {
    Ok(match problem.mesh {
        Mesh::Line(_) => problem.solve_monodomain()?,
        Mesh::Strip(_) => strip_reference(problem, spec.strip_solve)?,
    })
}

fn curve(e0: f64, rate: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| e0 * rate.powi(k as i32)).collect()
}

pub fn run(spec: &ExperimentSpec) -> Result<RunReport> {
    spec.validate()?;
    let t0 = Instant::now();
    let mut report = match spec.method {
        Method::Monodomain => run_monodomain(spec)?,
        Method::Dn | Method::Nn => run_iterative(spec)?,
    };
    report.wall_time = t0.elapsed().as_secs_f64();
    Ok(report)
}

fn run_iterative(spec: &ExperimentSpec) -> Result<RunReport> {
    let mesh = build_mesh(spec)?;
    let p = params(spec)?;
    let problem = LinearProblem::time_step(mesh, &p, &frozen_field(spec, &mesh))?;
    let r = reference(spec, &problem)?;
    let dec = decomposition(spec, mesh.x())?;
    let widths = dec.widths();
    let initial = TraceSet::random(dec.n_interfaces(), mesh.column_len(), spec.seed);
    let (rep, ba, bb): (DNReport, Option<Vec<f64>>, Option<Vec<f64>>) = match spec.method {
        Method::Dn => {
            let geom = DnGeometry { split: dec.nodes()[1], swap: spec.swap };
            let rep = if spec.dim == 1 {
                dn_solve(&problem, geom, spec.theta, initial, spec.tol, spec.max_iter, &r)?
            } else {
                dn_solve_2d(&problem, geom, spec.theta, initial, spec.tol, spec.max_iter, &r, spec.strip_solve)?
            };
            let (a, b) = if spec.swap { (widths[1], widths[0]) } else { (widths[0], widths[1]) };
            // the closed-form factor is stated for θ = 1/2 only
            let bound = (spec.theta == 0.5).then(|| curve(rep.history[0], dn_contraction_bound(&p, a, b).factor, rep.history.len()));
            (rep, bound.clone(), bound)
        }
        _ => {
            let rep = if spec.dim == 1 {
                nn_solve(&problem, &dec, spec.theta, initial, spec.tol, spec.max_iter, &r)?
            } else {
                nn_solve_2d(&problem, &dec, spec.theta, initial, spec.tol, spec.max_iter, &r, spec.strip_solve)?
            };
            let geometry = if spec.dim == 1 {
                BoundGeometry::Line
            } else {
                BoundGeometry::Strip { height: spec.domain[3] - spec.domain[2] }
            };
            let s = symbols(&p);
            match nn_bounds(&s, &widths, geometry, dec.is_equal()).provided() {
                Some(b) => {
                    let n = rep.history.len();
                    (rep.clone(), Some(curve(rep.history[0], b.rate_alpha, n)), Some(curve(rep.history[0], b.rate_beta, n)))
                }
                None => (rep, None, None),
            }
        }
    };
    let monotone = rep.history.windows(2).all(|w| w[1] <= w[0]);
    Ok(RunReport {
        spec: spec.clone(),
        status: if rep.converged { RunStatus::Converged } else { RunStatus::NotConverged },
        iterations: rep.iterations,
        errors: rep.history,
        bound_alpha: ba,
        bound_beta: bb,
        monotone,
        widths,
        mass: Vec::new(),
        energy: Vec::new(),
        wall_time: 0.0,
    })
}

/// Seeded smooth data: `mean` plus eight random cosine modes in x (and four in y on strips).
pub fn smooth_random_field(mesh: &Mesh, amplitude: f64, mean: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gx = mesh.x();
    let coef: Vec<f64> = (0..8).map(|_| rng.gen_range(-amplitude..=amplitude)).collect();
    let ycoef: Vec<f64> = (0..4).map(|_| rng.gen_range(-amplitude..=amplitude)).collect();
    let ys = mesh.column_coords();
    let ly = match mesh {
        Mesh::Strip(g) => g.y.length(),
        Mesh::Line(_) => 1.0,
    };
    let y0 = match mesh {
        Mesh::Strip(g) => g.y.x_left,
        Mesh::Line(_) => 0.0,
    };
    let mut out = Vec::with_capacity(mesh.n_unknown_nodes());
    for x in gx.nodes() {
        let s = (x - gx.x_left) / gx.length();
        let fx: f64 = coef.iter().enumerate().map(|(m, a)| a * ((m + 1) as f64 * PI * s).cos()).sum();
        for y in &ys {
            let fy: f64 = if mesh.dimension() == 2 {
                ycoef.iter().enumerate().map(|(m, a)| a * ((m + 1) as f64 * PI * (y - y0) / ly).cos()).sum()
            } else {
                0.0
            };
            out.push(mean + fx + fy);
        }
    }
    out
}

fn run_monodomain(spec: &ExperimentSpec) -> Result<RunReport> {
    let mesh = build_mesh(spec)?;
    let p = params(spec)?;
    let mut u = smooth_random_field(&mesh, 0.1, 0.1 * spec.c, spec.seed);
    let mut m = vec![mass(&u, &mesh)];
    let mut e = vec![energy(&u, &p, &mesh)];
    for _ in 0..spec.steps {
        let next = LinearProblem::time_step(mesh, &p, &u)?.solve_monodomain()?;
        u = next.u;
        if u.iter().any(|x| !x.is_finite()) {
            return Err(HarnessError::Solver(chdd_core::Error::Unsupported("time stepping blew up".into())));
        }
        m.push(mass(&u, &mesh));
        e.push(energy(&u, &p, &mesh));
    }
    Ok(RunReport {
        spec: spec.clone(),
        status: RunStatus::Completed,
        iterations: spec.steps,
        errors: Vec::new(),
        bound_alpha: None,
        bound_beta: None,
        monotone: e.windows(2).all(|w| w[1] <= w[0]),
        widths: vec![mesh.x().length()],
        mass: m,
        energy: e,
        wall_time: 0.0,
    })
}
