//! Discrete y-modes of a strip: sines for Dirichlet edges, cosines for
//! Neumann edges. Both diagonalise the discrete y-Laplacian, with eigenvalue
//! `−μ_m`, `μ_m = (4/h_y²)·sin²(mπ/(2n_y))`.

use rayon::prelude::*;

use crate::discretization::LinearProblem;
use crate::error::{Error, Result};
use crate::field::{PhaseField, TraceSet};
use crate::grid::{Grid2D, Mesh, YBoundary};

#[derive(Debug, Clone)]
pub struct ModeBasis {
    pub y_boundary: YBoundary,
    pub n_cells: usize,
    pub h: f64,
    /// Mode numbers represented on the grid.
    pub modes: Vec<usize>,
    /// `basis[r][j]`: mode `modes[r]` at unknown node `j`.
    basis: Vec<Vec<f64>>,
    weights: Vec<f64>,
    norms: Vec<f64>,
}

impl ModeBasis {
    pub fn new(grid: &Grid2D) -> Self {
        let n = grid.y.n_cells;
        let pi = std::f64::consts::PI;
        let (modes, nodes): (Vec<usize>, Vec<usize>) = match grid.y_boundary {
            YBoundary::Dirichlet => ((1..n).collect(), (1..n).collect()),
            YBoundary::Neumann => ((0..=n).collect(), (0..=n).collect()),
        };
        let f = |m: usize, j: usize| {
            let a = pi * (m * j) as f64 / n as f64;
            match grid.y_boundary {
                YBoundary::Dirichlet => a.sin(),
                YBoundary::Neumann => a.cos(),
            }
        };
        let basis: Vec<Vec<f64>> = modes.iter().map(|&m| nodes.iter().map(|&j| f(m, j)).collect()).collect();
        let weights: Vec<f64> = nodes
            .iter()
            .map(|&j| if grid.y_boundary == YBoundary::Neumann && (j == 0 || j == n) { 0.5 } else { 1.0 })
            .collect();
        let norms = basis.iter().map(|b| b.iter().zip(&weights).map(|(x, w)| w * x * x).sum()).collect();
        Self { y_boundary: grid.y_boundary, n_cells: n, h: grid.y.h, modes, basis, weights, norms }
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// `μ_m` for the `r`-th represented mode.
    pub fn eigenvalue(&self, r: usize) -> f64 {
        let s = (std::f64::consts::PI * self.modes[r] as f64 / (2.0 * self.n_cells as f64)).sin();
        4.0 * s * s / (self.h * self.h)
    }

    pub fn forward(&self, col: &[f64]) -> Vec<f64> {
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, n)| b.iter().zip(col).zip(&self.weights).map(|((x, y), w)| w * x * y).sum::<f64>() / n)
            .collect()
    }

    pub fn inverse(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.basis[0].len()];
        for (b, c) in self.basis.iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// A strip problem split into independent per-mode line problems.
#[derive(Debug, Clone)]
pub struct ModalSplit {
    pub basis: ModeBasis,
    pub strip: Mesh,
    pub modes: Vec<LinearProblem>,
}

/// True on strips whose `c²` is constant along every column.
pub fn is_separable(problem: &LinearProblem) -> bool {
    if problem.mesh.dimension() != 2 {
        return false;
    }
    let m = problem.mesh.column_len();
    problem.c2.chunks(m).all(|col| col.iter().all(|&v| (v - col[0]).abs() <= 1e-14 * col[0].abs().max(1.0)))
}

impl ModalSplit {
    /// Requires `c²` to be constant along every column.
    pub fn new(problem: &LinearProblem) -> Result<Self> {
        let Mesh::Strip(grid) = problem.mesh else {
            return Err(Error::Unsupported("mode splitting needs a strip mesh".into()));
        };
        let basis = ModeBasis::new(&grid);
        let m = problem.mesh.column_len();
        let nx = grid.x.n_nodes();
        if !is_separable(problem) {
            return Err(Error::Unsupported("c varies along y; modes do not decouple".into()));
        }
        let c2: Vec<f64> = (0..nx).map(|ix| problem.c2[ix * m]).collect();
        let fu: Vec<Vec<f64>> = (0..nx).map(|ix| basis.forward(&problem.f_u[ix * m..(ix + 1) * m])).collect();
        let fv: Vec<Vec<f64>> = (0..nx).map(|ix| basis.forward(&problem.f_v[ix * m..(ix + 1) * m])).collect();
        let line = Mesh::Line(grid.x);
        let modes = (0..basis.len())
            .map(|r| LinearProblem {
                mesh: line,
                epsilon: problem.epsilon,
                delta_t: problem.delta_t,
                shift: problem.shift + basis.eigenvalue(r),
                c2: c2.clone(),
                f_u: fu.iter().map(|c| c[r]).collect(),
                f_v: fv.iter().map(|c| c[r]).collect(),
            })
            .collect();
        Ok(Self { basis, strip: problem.mesh, modes })
    }

    /// Strip mesh of the columns `first..=last`.
    pub fn sub_mesh(&self, first: usize, last: usize) -> Mesh {
        let Mesh::Strip(g) = self.strip else { unreachable!("built from a strip") };
        let x = g.x;
        let xs = crate::grid::Grid1D { x_left: x.node(first), x_right: x.node(last), n_cells: last - first, h: x.h };
        Mesh::Strip(Grid2D { x: xs, ..g })
    }

    /// Per-mode scalar traces of a strip trace set.
    pub fn split_traces(&self, t: &TraceSet) -> Vec<TraceSet> {
        let gh: Vec<(Vec<f64>, Vec<f64>)> =
            t.g.iter().zip(&t.h).map(|(g, h)| (self.basis.forward(g), self.basis.forward(h))).collect();
        (0..self.basis.len())
            .map(|r| TraceSet {
                g: gh.iter().map(|(g, _)| vec![g[r]]).collect(),
                h: gh.iter().map(|(_, h)| vec![h[r]]).collect(),
            })
            .collect()
    }

    pub fn join_traces(&self, per_mode: &[TraceSet]) -> TraceSet {
        let n_if = per_mode[0].len();
        let mut out = TraceSet::zeros(0, 0);
        for i in 0..n_if {
            let g: Vec<f64> = per_mode.iter().map(|t| t.g[i][0]).collect();
            let h: Vec<f64> = per_mode.iter().map(|t| t.h[i][0]).collect();
            out.g.push(self.basis.inverse(&g));
            out.h.push(self.basis.inverse(&h));
        }
        out
    }

    /// Reassemble a strip field from per-mode line fields on the same x-columns.
    pub fn join_field(&self, per_mode: &[PhaseField], strip_mesh: Mesh) -> PhaseField {
        let nx = per_mode[0].u.len();
        let m = strip_mesh.column_len();
        let mut u = vec![0.0; nx * m];
        let mut v = vec![0.0; nx * m];
        for ix in 0..nx {
            let cu: Vec<f64> = per_mode.iter().map(|f| f.u[ix]).collect();
            let cv: Vec<f64> = per_mode.iter().map(|f| f.v[ix]).collect();
            u[ix * m..(ix + 1) * m].copy_from_slice(&self.basis.inverse(&cu));
            v[ix * m..(ix + 1) * m].copy_from_slice(&self.basis.inverse(&cv));
        }
        PhaseField { mesh: strip_mesh, u, v }
    }

    /// Monodomain solution assembled from independent per-mode solves.
    pub fn solve_monodomain(&self) -> Result<PhaseField> {
        let fields: Result<Vec<PhaseField>> = self.modes.par_iter().map(|p| p.solve_monodomain()).collect();
        Ok(self.join_field(&fields?, self.strip))
    }
}
