//! Multi-subdomain Neumann–Neumann iteration on strips `x_{i−1} < x < x_i`.

use rayon::prelude::*;

use crate::discretization::{FaceData, FaceKind, LinearProblem};
use crate::dn::{choose, drive, factor_bytes, DNReport, StripSolve};
use crate::error::{Error, Result};
use crate::field::{piecewise_error, trace_error, PhaseField, TraceSet};
use crate::grid::Decomposition;
use crate::subsolve::{Side, SubdomainSolver};
use crate::transform::ModalSplit;

pub type NNReport = DNReport;

#[derive(Debug, Clone, PartialEq)]
pub struct NNState {
    pub traces: TraceSet,
    /// `(φ_i, ψ_i)` from the last Neumann step; empty before the first sweep.
    pub auxiliary: Vec<PhaseField>,
    pub k: usize,
    pub history: Vec<f64>,
}

impl NNState {
    pub fn new(traces: TraceSet) -> Self {
        Self { traces, auxiliary: Vec::new(), k: 0, history: Vec::new() }
    }
}

#[derive(Debug, Clone)]
pub struct NnSweep {
    pub dirichlet: Vec<PhaseField>,
    pub neumann: Vec<PhaseField>,
    pub traces: TraceSet,
}

/// Factorized Dirichlet and Neumann subdomain operators for every subdomain.
#[derive(Debug, Clone)]
pub struct NnSolver {
    dir: Vec<SubdomainSolver>,
    neu: Vec<SubdomainSolver>,
    nodes: Vec<usize>,
    theta: f64,
}

fn outer(i: usize, n: usize) -> (FaceKind, FaceKind) {
    (
        if i == 0 { FaceKind::Neumann } else { FaceKind::Dirichlet },
        if i == n - 1 { FaceKind::Neumann } else { FaceKind::Dirichlet },
    )
}

impl NnSolver {
    pub fn new(problem: &LinearProblem, dec: &Decomposition, theta: f64) -> Result<Self> {
        if dec.grid().n_cells != problem.mesh.x().n_cells {
            return Err(Error::InvalidDecomposition("decomposition grid differs from the mesh".into()));
        }
        let nodes = dec.nodes().to_vec();
        let n = dec.n_subdomains();
        let dir = (0..n)
            .into_par_iter()
            .map(|i| {
                let (l, r) = outer(i, n);
                SubdomainSolver::new(problem, nodes[i], nodes[i + 1], l, r)
            })
            .collect::<Result<Vec<_>>>()?;
        let neu = (0..n)
            .into_par_iter()
            .map(|i| SubdomainSolver::new(problem, nodes[i], nodes[i + 1], FaceKind::Neumann, FaceKind::Neumann))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dir, neu, nodes, theta })
    }

    pub fn n_subdomains(&self) -> usize {
        self.dir.len()
    }

    /// Subdomain `i` takes `(g_{i−1}, h_{i−1})` on its left and `(g_i, h_i)` on its right.
    pub fn dirichlet_step(&self, t: &TraceSet) -> Vec<PhaseField> {
        let n = self.n_subdomains();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let l = if i == 0 { FaceData::Zero } else { FaceData::Trace(&t.g[i - 1], &t.h[i - 1]) };
                let r = if i == n - 1 { FaceData::Zero } else { FaceData::Trace(&t.g[i], &t.h[i]) };
                self.dir[i].solve(l, r)
            })
            .collect()
    }

    /// Flux jumps `J_i`: outward flux of `Ω_i` plus outward flux of `Ω_{i+1}` at `Γ_i`.
    pub fn flux_jumps(&self, fields: &[PhaseField]) -> Vec<(Vec<f64>, Vec<f64>)> {
        (0..self.n_subdomains() - 1)
            .into_par_iter()
            .map(|i| {
                let (pa, qa) = self.dir[i].interface_flux(&fields[i], Side::Right);
                let (pb, qb) = self.dir[i + 1].interface_flux(&fields[i + 1], Side::Left);
                (pa.iter().zip(&pb).map(|(a, b)| a + b).collect(), qa.iter().zip(&qb).map(|(a, b)| a + b).collect())
            })
            .collect()
    }

    /// Homogeneous solves with outward flux `J_i` on the right face and `−J_{i−1}` on the left.
    pub fn neumann_step(&self, dirichlet: &[PhaseField]) -> Vec<PhaseField> {
        let jumps = self.flux_jumps(dirichlet);
        let neg: Vec<(Vec<f64>, Vec<f64>)> =
            jumps.iter().map(|(p, q)| (p.iter().map(|x| -x).collect(), q.iter().map(|x| -x).collect())).collect();
        let n = self.n_subdomains();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let l = if i == 0 { FaceData::Zero } else { FaceData::Flux(&neg[i - 1].0, &neg[i - 1].1) };
                let r = if i == n - 1 { FaceData::Zero } else { FaceData::Flux(&jumps[i].0, &jumps[i].1) };
                self.neu[i].solve_homogeneous(l, r)
            })
            .collect()
    }

    pub fn sweep(&self, t: &TraceSet) -> NnSweep {
        let dirichlet = self.dirichlet_step(t);
        let neumann = self.neumann_step(&dirichlet);
        let traces = nn_update(t, &neumann, self.theta);
        NnSweep { dirichlet, neumann, traces }
    }

    pub fn sweep_error(&self, sweep: &NnSweep, reference: &PhaseField) -> f64 {
        let parts: Vec<(&PhaseField, usize)> = sweep.dirichlet.iter().zip(&self.nodes).map(|(f, &o)| (f, o)).collect();
        piecewise_error(&parts, reference)
    }

    pub fn iterate(&self, state: &NNState, reference: &PhaseField) -> NNState {
        let s = self.sweep(&state.traces);
        let mut history = state.history.clone();
        history.push(self.sweep_error(&s, reference));
        NNState { traces: s.traces, auxiliary: s.neumann, k: state.k + 1, history }
    }
}

pub fn nn_dirichlet_step(t: &TraceSet, dec: &Decomposition, problem: &LinearProblem) -> Result<Vec<PhaseField>> {
    Ok(NnSolver::new(problem, dec, 0.25)?.dirichlet_step(t))
}

pub fn nn_neumann_step(dirichlet: &[PhaseField], dec: &Decomposition, problem: &LinearProblem) -> Result<Vec<PhaseField>> {
    Ok(NnSolver::new(problem, dec, 0.25)?.neumann_step(dirichlet))
}

/// `g_i ← g_i − θ(φ_i − φ_{i+1})|_{Γ_i}`, and likewise for `h` with `ψ`.
pub fn nn_update(t: &TraceSet, neumann: &[PhaseField], theta: f64) -> TraceSet {
    let mut out = t.clone();
    for i in 0..t.len() {
        let a = &neumann[i];
        let (pu, pv) = a.column(a.n_columns() - 1);
        let (qu, qv) = neumann[i + 1].column(0);
        for j in 0..out.g[i].len() {
            out.g[i][j] -= theta * (pu[j] - qu[j]);
            out.h[i][j] -= theta * (pv[j] - qv[j]);
        }
    }
    out
}

pub fn nn_solve(
    problem: &LinearProblem,
    dec: &Decomposition,
    theta: f64,
    initial: TraceSet,
    tol: f64,
    max_iter: usize,
    reference: &PhaseField,
) -> Result<NNReport> {
    let solver = NnSolver::new(problem, dec, theta)?;
    let e0 = initial_error(&initial, dec, reference);
    Ok(drive(e0, initial, tol, max_iter, |t| {
        let s = solver.sweep(t);
        (solver.sweep_error(&s, reference), s.traces)
    }))
}

fn initial_error(t: &TraceSet, dec: &Decomposition, reference: &PhaseField) -> f64 {
    let nodes = dec.nodes();
    let r = TraceSet::from_field_at(reference, &nodes[1..nodes.len() - 1]);
    trace_error(t, &r, &reference.mesh)
}

/// Strip NN sweeps carried out mode by mode in `y`.
#[derive(Debug, Clone)]
pub struct ModalNn {
    pub split: ModalSplit,
    solvers: Vec<NnSolver>,
}

impl ModalNn {
    pub fn new(problem: &LinearProblem, dec: &Decomposition, theta: f64) -> Result<Self> {
        let split = ModalSplit::new(problem)?;
        let solvers = split.modes.par_iter().map(|p| NnSolver::new(p, dec, theta)).collect::<Result<_>>()?;
        Ok(Self { split, solvers })
    }

    pub fn sweep(&self, t: &TraceSet) -> NnSweep {
        let per: Vec<NnSweep> =
            self.split.split_traces(t).par_iter().zip(&self.solvers).map(|(t, s)| s.sweep(t)).collect();
        let nodes = &self.solvers[0].nodes;
        let join = |pick: &dyn Fn(&NnSweep) -> &Vec<PhaseField>| -> Vec<PhaseField> {
            (0..nodes.len() - 1)
                .map(|i| {
                    let fs: Vec<PhaseField> = per.iter().map(|s| pick(s)[i].clone()).collect();
                    self.split.join_field(&fs, self.split.sub_mesh(nodes[i], nodes[i + 1]))
                })
                .collect()
        };
        let dirichlet = join(&|s| &s.dirichlet);
        let neumann = join(&|s| &s.neumann);
        let traces: Vec<TraceSet> = per.iter().map(|s| s.traces.clone()).collect();
        NnSweep { dirichlet, neumann, traces: self.split.join_traces(&traces) }
    }

    pub fn sweep_error(&self, sweep: &NnSweep, reference: &PhaseField) -> f64 {
        self.solvers[0].sweep_error(sweep, reference)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn nn_solve_2d(
    problem: &LinearProblem,
    dec: &Decomposition,
    theta: f64,
    initial: TraceSet,
    tol: f64,
    max_iter: usize,
    reference: &PhaseField,
    mode: StripSolve,
) -> Result<NNReport> {
    if problem.mesh.dimension() != 2 {
        return Err(Error::Unsupported("nn_solve_2d needs a strip mesh".into()));
    }
    let e0 = initial_error(&initial, dec, reference);
    // each subdomain holds two factorizations
    let bytes = 2 * factor_bytes(problem.mesh.x().n_nodes() + dec.n_subdomains(), problem.mesh.column_len());
    match choose(mode, problem, bytes)? {
        StripSolve::Modal => {
            let m = ModalNn::new(problem, dec, theta)?;
            Ok(drive(e0, initial, tol, max_iter, |t| {
                let s = m.sweep(t);
                (m.sweep_error(&s, reference), s.traces)
            }))
        }
        _ => {
            let solver = NnSolver::new(problem, dec, theta)?;
            Ok(drive(e0, initial, tol, max_iter, |t| {
                let s = solver.sweep(t);
                (solver.sweep_error(&s, reference), s.traces)
            }))
        }
    }
}
