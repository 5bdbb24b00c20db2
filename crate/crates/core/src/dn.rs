//! Two-subdomain Dirichlet–Neumann iteration.

use rayon::prelude::*;

use crate::discretization::{FaceData, FaceKind, LinearProblem};
use crate::error::{Error, Result};
use crate::field::{piecewise_error, trace_error, PhaseField, TraceSet};
use crate::subsolve::{Side, SubdomainSolver};
use crate::transform::ModalSplit;

/// Where the interface sits and which side takes the Dirichlet data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DnGeometry {
    /// Grid node index of `Γ`.
    pub split: usize,
    /// When set, the right subdomain is the Dirichlet side.
    pub swap: bool,
}

impl DnGeometry {
    pub fn new(split: usize) -> Self {
        Self { split, swap: false }
    }

    pub fn swapped(self) -> Self {
        Self { swap: !self.swap, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DNState {
    pub trace: TraceSet,
    pub k: usize,
    /// Error of the subdomain fields of sweeps `1..=k`.
    pub history: Vec<f64>,
}

impl DNState {
    pub fn new(trace: TraceSet) -> Self {
        Self { trace, k: 0, history: Vec::new() }
    }
}

#[derive(Debug, Clone)]
pub struct DnSweep {
    pub dirichlet: PhaseField,
    pub neumann: PhaseField,
    pub trace: TraceSet,
}

/// Both subdomain factorizations, reused across sweeps.
#[derive(Debug, Clone)]
pub struct DnSolver {
    dir: SubdomainSolver,
    neu: SubdomainSolver,
    geometry: DnGeometry,
    n_cells: usize,
    theta: f64,
}

impl DnSolver {
    pub fn new(problem: &LinearProblem, geometry: DnGeometry, theta: f64) -> Result<Self> {
        let n = problem.mesh.x().n_cells;
        let s = geometry.split;
        if s == 0 || s >= n {
            return Err(Error::InvalidDecomposition(format!("interface node {s} not inside 0..{n}")));
        }
        let (dir, neu) = if geometry.swap {
            (
                SubdomainSolver::new(problem, s, n, FaceKind::Dirichlet, FaceKind::Neumann)?,
                SubdomainSolver::new(problem, 0, s, FaceKind::Neumann, FaceKind::Neumann)?,
            )
        } else {
            (
                SubdomainSolver::new(problem, 0, s, FaceKind::Neumann, FaceKind::Dirichlet)?,
                SubdomainSolver::new(problem, s, n, FaceKind::Neumann, FaceKind::Neumann)?,
            )
        };
        Ok(Self { dir, neu, geometry, n_cells: n, theta })
    }

    pub fn geometry(&self) -> DnGeometry {
        self.geometry
    }

    /// Dirichlet solve, flux transfer, Neumann solve and relaxation.
    pub fn sweep(&self, t: &TraceSet) -> DnSweep {
        let (g, h) = (&t.g[0], &t.h[0]);
        let zero = FaceData::Zero;
        let trace = FaceData::Trace(g, h);
        // Γ is the right face of the left subdomain
        let (d_side, n_side) = if self.geometry.swap { (Side::Left, Side::Right) } else { (Side::Right, Side::Left) };
        let dirichlet = match d_side {
            Side::Right => self.dir.solve(zero, trace),
            Side::Left => self.dir.solve(trace, zero),
        };
        let (p, q) = self.dir.interface_flux(&dirichlet, d_side);
        let (p, q): (Vec<f64>, Vec<f64>) = (p.iter().map(|x| -x).collect(), q.iter().map(|x| -x).collect());
        let flux = FaceData::Flux(&p, &q);
        let neumann = match n_side {
            Side::Left => self.neu.solve(flux, zero),
            Side::Right => self.neu.solve(zero, flux),
        };
        let (u, v) = neumann.column(if n_side == Side::Left { 0 } else { neumann.n_columns() - 1 });
        let th = self.theta;
        let relax = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| th * x + (1.0 - th) * y).collect();
        let trace = TraceSet { g: vec![relax(u, g)], h: vec![relax(v, h)] };
        DnSweep { dirichlet, neumann, trace }
    }

    /// First column of each subdomain field in the global mesh.
    fn offsets(&self) -> (usize, usize) {
        if self.geometry.swap {
            (self.geometry.split, 0)
        } else {
            (0, self.geometry.split)
        }
    }

    pub fn sweep_error(&self, sweep: &DnSweep, reference: &PhaseField) -> f64 {
        let (od, on) = self.offsets();
        piecewise_error(&[(&sweep.dirichlet, od), (&sweep.neumann, on)], reference)
    }

    pub fn iterate(&self, state: &DNState, reference: &PhaseField) -> DNState {
        let s = self.sweep(&state.trace);
        let mut history = state.history.clone();
        history.push(self.sweep_error(&s, reference));
        DNState { trace: s.trace, k: state.k + 1, history }
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
}

/// One sweep from scratch; prefer [`DnSolver::iterate`] in loops.
pub fn dn_iterate(state: &DNState, problem: &LinearProblem, geometry: DnGeometry, theta: f64, reference: &PhaseField) -> Result<DNState> {
    Ok(DnSolver::new(problem, geometry, theta)?.iterate(state, reference))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DNReport {
    /// First `k` with error at most `tol`, or `max_iter` when not reached.
    pub iterations: usize,
    pub final_error: f64,
    /// Errors for `k = 0, 1, …`; entry 0 is the initial trace error.
    pub history: Vec<f64>,
    pub converged: bool,
    pub trace: TraceSet,
}

/// Iterate from `initial` until the subdomain error is at most `tol`.
pub fn dn_solve(
    problem: &LinearProblem,
    geometry: DnGeometry,
    theta: f64,
    initial: TraceSet,
    tol: f64,
    max_iter: usize,
    reference: &PhaseField,
) -> Result<DNReport> {
    let solver = DnSolver::new(problem, geometry, theta)?;
    let ref_trace = TraceSet::from_field_at(reference, &[geometry.split]);
    let e0 = trace_error(&initial, &ref_trace, &problem.mesh);
    Ok(drive(e0, initial, tol, max_iter, |t| {
        let s = solver.sweep(t);
        (solver.sweep_error(&s, reference), s.trace)
    }))
}

pub(crate) fn drive(
    e0: f64,
    initial: TraceSet,
    tol: f64,
    max_iter: usize,
    mut step: impl FnMut(&TraceSet) -> (f64, TraceSet),
) -> DNReport {
    let mut history = vec![e0];
    let mut trace = initial;
    let mut k = 0;
    while history[k] > tol && k < max_iter {
        let (e, t) = step(&trace);
        history.push(e);
        trace = t;
        k += 1;
    }
    let converged = history[k] <= tol;
    DNReport { iterations: k, final_error: history[k], history, converged, trace }
}

/// Strip DN sweeps carried out mode by mode in `y`.
#[derive(Debug, Clone)]
pub struct ModalDn {
    pub split: ModalSplit,
    solvers: Vec<DnSolver>,
}

impl ModalDn {
    pub fn new(problem: &LinearProblem, geometry: DnGeometry, theta: f64) -> Result<Self> {
        let split = ModalSplit::new(problem)?;
        let solvers = split.modes.par_iter().map(|p| DnSolver::new(p, geometry, theta)).collect::<Result<_>>()?;
        Ok(Self { split, solvers })
    }

    pub fn sweep(&self, t: &TraceSet) -> DnSweep {
        let per: Vec<DnSweep> =
            self.split.split_traces(t).par_iter().zip(&self.solvers).map(|(t, s)| s.sweep(t)).collect();
        let g = self.solvers[0].geometry;
        let n = self.solvers[0].n_cells;
        let sub = |first, last| self.split.sub_mesh(first, last);
        let (dm, nm) = if g.swap { (sub(g.split, n), sub(0, g.split)) } else { (sub(0, g.split), sub(g.split, n)) };
        let dir: Vec<PhaseField> = per.iter().map(|s| s.dirichlet.clone()).collect();
        let neu: Vec<PhaseField> = per.iter().map(|s| s.neumann.clone()).collect();
        let traces: Vec<TraceSet> = per.into_iter().map(|s| s.trace).collect();
        DnSweep {
            dirichlet: self.split.join_field(&dir, dm),
            neumann: self.split.join_field(&neu, nm),
            trace: self.split.join_traces(&traces),
        }
    }

    pub fn sweep_error(&self, sweep: &DnSweep, reference: &PhaseField) -> f64 {
        self.solvers[0].sweep_error(sweep, reference)
    }

    pub fn iterate(&self, state: &DNState, reference: &PhaseField) -> DNState {
        let s = self.sweep(&state.trace);
        let mut history = state.history.clone();
        history.push(self.sweep_error(&s, reference));
        DNState { trace: s.trace, k: state.k + 1, history }
    }
}

/// How strip problems are solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StripSolve {
    /// Banded solves of the full 2D subdomain systems.
    Direct,
    /// Independent line solves per `y`-mode; needs `c` constant along `y`.
    Modal,
    /// Modal when `c` allows it, otherwise direct; fails if the direct factors
    /// would exceed the memory budget.
    #[default]
    Auto,
}

/// Bytes of banded factor storage for `columns` columns of the given length.
pub fn factor_bytes(columns: usize, column_len: usize) -> usize {
    let kl = 2 * column_len + 1;
    2 * columns * column_len * (3 * kl + 1) * 8
}

pub(crate) const DIRECT_BUDGET: usize = 1 << 30;

pub(crate) fn choose(mode: StripSolve, problem: &LinearProblem, bytes: usize) -> Result<StripSolve> {
    match mode {
        StripSolve::Auto if crate::transform::is_separable(problem) => Ok(StripSolve::Modal),
        StripSolve::Auto if bytes > DIRECT_BUDGET => Err(Error::Unsupported(format!(
            "direct strip factors need {bytes} bytes and c varies along y"
        ))),
        StripSolve::Auto => Ok(StripSolve::Direct),
        m => Ok(m),
    }
}

/// Monodomain reference for a strip, by whichever path `mode` selects.
pub fn strip_reference(problem: &LinearProblem, mode: StripSolve) -> Result<PhaseField> {
    let n = problem.mesh.x().n_nodes();
    match choose(mode, problem, factor_bytes(n, problem.mesh.column_len()))? {
        StripSolve::Modal => ModalSplit::new(problem)?.solve_monodomain(),
        _ => problem.solve_monodomain(),
    }
}

/// Strip DN solve; the trace carries one value per unknown `y`-node.
#[allow(clippy::too_many_arguments)]
pub fn dn_solve_2d(
    problem: &LinearProblem,
    geometry: DnGeometry,
    theta: f64,
    initial: TraceSet,
    tol: f64,
    max_iter: usize,
    reference: &PhaseField,
    mode: StripSolve,
) -> Result<DNReport> {
    if problem.mesh.dimension() != 2 {
        return Err(Error::Unsupported("dn_solve_2d needs a strip mesh".into()));
    }
    let ref_trace = TraceSet::from_field_at(reference, &[geometry.split]);
    let e0 = trace_error(&initial, &ref_trace, &problem.mesh);
    let bytes = factor_bytes(problem.mesh.x().n_nodes() + 1, problem.mesh.column_len());
    match choose(mode, problem, bytes)? {
        StripSolve::Modal => {
            let m = ModalDn::new(problem, geometry, theta)?;
            Ok(drive(e0, initial, tol, max_iter, |t| {
                let s = m.sweep(t);
                (m.sweep_error(&s, reference), s.trace)
            }))
        }
        _ => {
            let solver = DnSolver::new(problem, geometry, theta)?;
            Ok(drive(e0, initial, tol, max_iter, |t| {
                let s = solver.sweep(t);
                (solver.sweep_error(&s, reference), s.trace)
            }))
        }
    }
}

/// One strip sweep through the mode path.
pub fn dn_iterate_2d(state: &DNState, problem: &LinearProblem, geometry: DnGeometry, theta: f64, reference: &PhaseField) -> Result<DNState> {
    Ok(ModalDn::new(problem, geometry, theta)?.iterate(state, reference))
}
