//! Finite differences for the linearized step
//!
//! ```text
//! u − δt·Δv           = f_u
//! v + ε²Δu − c²·u     = f_v
//! ```
//!
//! on a strip of x-columns. A line is a strip with one node per column. The
//! banded solve orders unknowns node by node, `(u, v)` interleaved, which keeps
//! the bandwidth at `2·column_len + 1`; [`BlockSystem`] also exposes the
//! stacked `(u-block, v-block)` view.

use crate::banded::{BandLu, BandMatrix};
use crate::error::{Error, Result};
use crate::field::PhaseField;
use crate::grid::{Grid1D, Mesh, YBoundary};
use crate::params::Params;

/// Pivot-ratio level above which a factorization is reported as unusable.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Row type at an x-face of a (sub)domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceKind {
    /// Face node values are prescribed.
    Dirichlet,
    /// Face node is solved with a mirror ghost carrying a given outward flux
    /// (zero for the physical boundary).
    Neumann,
}

/// Right-hand-side data attached to a face.
#[derive(Debug, Clone, Copy)]
pub enum FaceData<'a> {
    /// Values `(g, h)` of `(u, v)` at the face column.
    Trace(&'a [f64], &'a [f64]),
    /// Outward normal derivatives `(p, q)` of `(u, v)`.
    Flux(&'a [f64], &'a [f64]),
    Zero,
}

/// The block operator restricted to a run of consecutive x-columns.
#[derive(Debug, Clone)]
pub struct StripOperator {
    pub nx: usize,
    pub hx: f64,
    pub ny: usize,
    pub hy: f64,
    pub y_boundary: Option<YBoundary>,
    /// Constant added as `−shift·w` to the Laplacian (a y-mode symbol).
    pub shift: f64,
    pub epsilon: f64,
    pub delta_t: f64,
    pub c2: Vec<f64>,
    pub left: FaceKind,
    pub right: FaceKind,
}

impl StripOperator {
    pub fn n_nodes(&self) -> usize {
        self.nx * self.ny
    }

    /// Mirror-ghost Laplacian of `w` at node `(ix, iy)`; at the two x-faces this
    /// is the zero-flux form `2(w_nb − w_face)/h²`.
    pub fn laplacian_at(&self, w: &[f64], ix: usize, iy: usize) -> f64 {
        let ny = self.ny;
        let k = ix * ny + iy;
        let hx2 = self.hx * self.hx;
        let lx = if self.nx == 1 {
            0.0
        } else if ix == 0 {
            2.0 * (w[k + ny] - w[k]) / hx2
        } else if ix == self.nx - 1 {
            2.0 * (w[k - ny] - w[k]) / hx2
        } else {
            (w[k - ny] - 2.0 * w[k] + w[k + ny]) / hx2
        };
        lx + self.y_part(w, k, iy) - self.shift * w[k]
    }

    fn y_part(&self, w: &[f64], k: usize, iy: usize) -> f64 {
        let hy2 = self.hy * self.hy;
        match self.y_boundary {
            None => 0.0,
            Some(YBoundary::Neumann) => {
                if self.ny == 1 {
                    0.0
                } else if iy == 0 {
                    2.0 * (w[k + 1] - w[k]) / hy2
                } else if iy == self.ny - 1 {
                    2.0 * (w[k - 1] - w[k]) / hy2
                } else {
                    (w[k - 1] - 2.0 * w[k] + w[k + 1]) / hy2
                }
            }
            Some(YBoundary::Dirichlet) => {
                let lo = if iy > 0 { w[k - 1] } else { 0.0 };
                let hi = if iy + 1 < self.ny { w[k + 1] } else { 0.0 };
                (lo - 2.0 * w[k] + hi) / hy2
            }
        }
    }

    /// Stencil of the Laplacian at a node as `(node, weight)` pairs.
    fn stencil(&self, ix: usize, iy: usize, out: &mut Vec<(usize, f64)>) {
        out.clear();
        let ny = self.ny;
        let k = ix * ny + iy;
        let hx2 = self.hx * self.hx;
        let mut diag = -self.shift;
        if self.nx > 1 {
            if ix == 0 {
                out.push((k + ny, 2.0 / hx2));
            } else if ix == self.nx - 1 {
                out.push((k - ny, 2.0 / hx2));
            } else {
                out.push((k - ny, 1.0 / hx2));
                out.push((k + ny, 1.0 / hx2));
            }
            diag -= 2.0 / hx2;
        }
        let hy2 = self.hy * self.hy;
        match self.y_boundary {
            None => {}
            Some(YBoundary::Neumann) => {
                if ny > 1 {
                    if iy == 0 {
                        out.push((k + 1, 2.0 / hy2));
                    } else if iy == ny - 1 {
                        out.push((k - 1, 2.0 / hy2));
                    } else {
                        out.push((k - 1, 1.0 / hy2));
                        out.push((k + 1, 1.0 / hy2));
                    }
                    diag -= 2.0 / hy2;
                }
            }
            Some(YBoundary::Dirichlet) => {
                if iy > 0 {
                    out.push((k - 1, 1.0 / hy2));
                }
                if iy + 1 < ny {
                    out.push((k + 1, 1.0 / hy2));
                }
                diag -= 2.0 / hy2;
            }
        }
        out.push((k, diag));
    }

    fn face_kind(&self, ix: usize) -> Option<FaceKind> {
        if ix == 0 {
            Some(self.left)
        } else if ix == self.nx - 1 {
            Some(self.right)
        } else {
            None
        }
    }

    pub fn assemble(&self) -> BandMatrix {
        let n = self.n_nodes();
        let bw = 2 * self.ny + 1;
        let mut m = BandMatrix::zeros(2 * n, bw, bw);
        let mut st = Vec::with_capacity(5);
        let (dt, e2) = (self.delta_t, self.epsilon * self.epsilon);
        for ix in 0..self.nx {
            let dirichlet = self.face_kind(ix) == Some(FaceKind::Dirichlet);
            for iy in 0..self.ny {
                let k = ix * self.ny + iy;
                let (ru, rv) = (2 * k, 2 * k + 1);
                if dirichlet {
                    m.set(ru, ru, 1.0);
                    m.set(rv, rv, 1.0);
                    continue;
                }
                self.stencil(ix, iy, &mut st);
                m.add(ru, ru, 1.0);
                m.add(rv, rv, 1.0);
                m.add(rv, ru, -self.c2[k]);
                for &(j, w) in &st {
                    m.add(ru, 2 * j + 1, -dt * w);
                    m.add(rv, 2 * j, e2 * w);
                }
            }
        }
        m
    }

    /// Interleaved right-hand side; `f_u`, `f_v` are node-indexed.
    pub fn rhs(&self, f_u: &[f64], f_v: &[f64], left: FaceData, right: FaceData) -> Vec<f64> {
        let n = self.n_nodes();
        let mut b = vec![0.0; 2 * n];
        for k in 0..n {
            b[2 * k] = f_u[k];
            b[2 * k + 1] = f_v[k];
        }
        for (ix, data) in [(0, left), (self.nx - 1, right)] {
            let base = ix * self.ny;
            match data {
                FaceData::Trace(g, h) => {
                    for iy in 0..self.ny {
                        b[2 * (base + iy)] = g[iy];
                        b[2 * (base + iy) + 1] = h[iy];
                    }
                }
                FaceData::Flux(p, q) => {
                    let (su, sv) = (2.0 * self.delta_t / self.hx, -2.0 * self.epsilon * self.epsilon / self.hx);
                    for iy in 0..self.ny {
                        b[2 * (base + iy)] += su * q[iy];
                        b[2 * (base + iy) + 1] += sv * p[iy];
                    }
                }
                FaceData::Zero => {}
            }
        }
        b
    }

    /// Outward fluxes `(p, q)` at a face, taken from the residual of the
    /// zero-flux face rows so that they reproduce the solved node exactly.
    pub fn residual_flux(&self, u: &[f64], v: &[f64], f_u: &[f64], f_v: &[f64], right: bool) -> (Vec<f64>, Vec<f64>) {
        let ix = if right { self.nx - 1 } else { 0 };
        let (dt, e2, h) = (self.delta_t, self.epsilon * self.epsilon, self.hx);
        let mut p = vec![0.0; self.ny];
        let mut q = vec![0.0; self.ny];
        for iy in 0..self.ny {
            let k = ix * self.ny + iy;
            let lv = self.laplacian_at(v, ix, iy);
            let lu = self.laplacian_at(u, ix, iy);
            q[iy] = h / (2.0 * dt) * (u[k] - f_u[k] - dt * lv);
            p[iy] = h / (2.0 * e2) * (f_v[k] - v[k] + self.c2[k] * u[k] - e2 * lu);
        }
        (p, q)
    }

    pub fn factor(&self) -> Result<BandLu> {
        let lu = self.assemble().factor()?;
        if lu.pivot_ratio() > CONDITION_LIMIT {
            return Err(Error::IllConditioned { estimate: lu.pivot_ratio() });
        }
        Ok(lu)
    }
}

/// Split an interleaved solution into node-indexed `(u, v)`.
pub fn deinterleave(x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (x.iter().step_by(2).copied().collect(), x.iter().skip(1).step_by(2).copied().collect())
}

/// A linear step problem: mesh, constants, `c²` and right-hand sides per node.
#[derive(Debug, Clone)]
pub struct LinearProblem {
    pub mesh: Mesh,
    pub epsilon: f64,
    pub delta_t: f64,
    pub shift: f64,
    pub c2: Vec<f64>,
    pub f_u: Vec<f64>,
    pub f_v: Vec<f64>,
}

impl LinearProblem {
    pub fn new(mesh: Mesh, params: &Params, c_field: &[f64], f_u: Vec<f64>, f_v: Vec<f64>) -> Result<Self> {
        let n = mesh.n_unknown_nodes();
        for len in [c_field.len(), f_u.len(), f_v.len()] {
            if len != n {
                return Err(Error::ShapeMismatch { expected: n, found: len });
            }
        }
        Ok(Self {
            mesh,
            epsilon: params.epsilon,
            delta_t: params.delta_t,
            shift: 0.0,
            c2: c_field.iter().map(|c| c * c).collect(),
            f_u,
            f_v,
        })
    }

    /// The step from `uⁿ`: `c = uⁿ` pointwise, right-hand side `(uⁿ, −uⁿ)`.
    pub fn time_step(mesh: Mesh, params: &Params, un: &[f64]) -> Result<Self> {
        Self::new(mesh, params, un, un.to_vec(), un.iter().map(|x| -x).collect())
    }

    /// Homogeneous problem with the scalar `params.c`; its DD iterates are errors.
    pub fn error_equation(mesh: Mesh, params: &Params) -> Self {
        let n = mesh.n_unknown_nodes();
        Self {
            mesh,
            epsilon: params.epsilon,
            delta_t: params.delta_t,
            shift: 0.0,
            c2: vec![params.c * params.c; n],
            f_u: vec![0.0; n],
            f_v: vec![0.0; n],
        }
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    /// Node range `[first, last]` of x-columns, as a flat unknown range.
    pub fn node_range(&self, first: usize, last: usize) -> std::ops::Range<usize> {
        let m = self.mesh.column_len();
        first * m..(last + 1) * m
    }

    pub fn operator(&self, first: usize, last: usize, left: FaceKind, right: FaceKind) -> StripOperator {
        let (hy, yb) = match self.mesh {
            Mesh::Line(_) => (1.0, None),
            Mesh::Strip(g) => (g.y.h, Some(g.y_boundary)),
        };
        StripOperator {
            nx: last - first + 1,
            hx: self.mesh.x().h,
            ny: self.mesh.column_len(),
            hy,
            y_boundary: yb,
            shift: self.shift,
            epsilon: self.epsilon,
            delta_t: self.delta_t,
            c2: self.c2[self.node_range(first, last)].to_vec(),
            left,
            right,
        }
    }

    /// Mesh of the columns `first..=last`.
    pub fn sub_mesh(&self, first: usize, last: usize) -> Mesh {
        let x = self.mesh.x();
        let g = Grid1D { x_left: x.node(first), x_right: x.node(last), n_cells: last - first, h: x.h };
        match self.mesh {
            Mesh::Line(_) => Mesh::Line(g),
            Mesh::Strip(s) => Mesh::Strip(crate::grid::Grid2D { x: g, ..s }),
        }
    }

    pub fn solve_monodomain(&self) -> Result<PhaseField> {
        let n = self.mesh.x().n_cells;
        let op = self.operator(0, n, FaceKind::Neumann, FaceKind::Neumann);
        let lu = op.factor()?;
        let x = lu.solve(&op.rhs(&self.f_u, &self.f_v, FaceData::Zero, FaceData::Zero));
        let (u, v) = deinterleave(&x);
        PhaseField::new(self.mesh, u, v)
    }
}

/// Monodomain system with homogeneous Neumann conditions on the x-faces.
#[derive(Debug, Clone)]
pub struct BlockSystem {
    /// Interleaved `(u_0, v_0, u_1, v_1, …)` banded matrix.
    pub matrix: BandMatrix,
    /// Interleaved right-hand side.
    pub rhs: Vec<f64>,
    pub mesh: Mesh,
    pub left: FaceKind,
    pub right: FaceKind,
}

impl BlockSystem {
    pub fn n_nodes(&self) -> usize {
        self.rhs.len() / 2
    }

    fn stacked_index(&self, i: usize) -> usize {
        let n = self.n_nodes();
        if i < n {
            2 * i
        } else {
            2 * (i - n) + 1
        }
    }

    /// Dense matrix in stacked `(u-block, v-block)` ordering.
    pub fn to_dense_stacked(&self) -> Vec<Vec<f64>> {
        let n2 = self.rhs.len();
        (0..n2)
            .map(|i| (0..n2).map(|j| self.matrix.get(self.stacked_index(i), self.stacked_index(j))).collect())
            .collect()
    }

    pub fn rhs_stacked(&self) -> Vec<f64> {
        (0..self.rhs.len()).map(|i| self.rhs[self.stacked_index(i)]).collect()
    }

    pub fn solve(&self) -> Result<PhaseField> {
        let lu = self.matrix.clone().factor()?;
        if lu.pivot_ratio() > CONDITION_LIMIT {
            return Err(Error::IllConditioned { estimate: lu.pivot_ratio() });
        }
        let (u, v) = deinterleave(&lu.solve(&self.rhs));
        PhaseField::new(self.mesh, u, v)
    }
}

pub fn assemble_monodomain(
    mesh: Mesh,
    params: &Params,
    c_field: &[f64],
    rhs: (&[f64], &[f64]),
) -> Result<BlockSystem> {
    let p = LinearProblem::new(mesh, params, c_field, rhs.0.to_vec(), rhs.1.to_vec())?;
    let n = mesh.x().n_cells;
    let op = p.operator(0, n, FaceKind::Neumann, FaceKind::Neumann);
    Ok(BlockSystem {
        matrix: op.assemble(),
        rhs: op.rhs(&p.f_u, &p.f_v, FaceData::Zero, FaceData::Zero),
        mesh,
        left: FaceKind::Neumann,
        right: FaceKind::Neumann,
    })
}

/// One step of the linearized scheme from `uⁿ`.
pub fn time_step(un: &[f64], params: &Params, mesh: Mesh) -> Result<PhaseField> {
    LinearProblem::time_step(mesh, params, un)?.solve_monodomain()
}

/// Boundary handling for [`discrete_laplacian`].
#[derive(Debug, Clone, PartialEq)]
pub enum LaplacianBc {
    /// Field given on every column; mirror ghosts at both x-faces.
    Neumann,
    /// Field given on the interior columns only; the face columns hold these traces.
    Dirichlet { left: Vec<f64>, right: Vec<f64> },
}

/// Second-order Laplacian (3-point in x, 5-point on strips).
pub fn discrete_laplacian(field: &[f64], mesh: &Mesh, bc: &LaplacianBc) -> Result<Vec<f64>> {
    let m = mesh.column_len();
    let nx = mesh.x().n_nodes();
    let p = LinearProblem {
        mesh: *mesh,
        epsilon: 1.0,
        delta_t: 1.0,
        shift: 0.0,
        c2: Vec::new(),
        f_u: Vec::new(),
        f_v: Vec::new(),
    };
    let op = p.operator_shape(nx);
    match bc {
        LaplacianBc::Neumann => {
            if field.len() != nx * m {
                return Err(Error::ShapeMismatch { expected: nx * m, found: field.len() });
            }
            let mut out = vec![0.0; field.len()];
            for ix in 0..nx {
                for iy in 0..m {
                    out[ix * m + iy] = op.laplacian_at(field, ix, iy);
                }
            }
            Ok(out)
        }
        LaplacianBc::Dirichlet { left, right } => {
            let inner = nx.saturating_sub(2) * m;
            if field.len() != inner {
                return Err(Error::ShapeMismatch { expected: inner, found: field.len() });
            }
            if left.len() != m || right.len() != m {
                return Err(Error::ShapeMismatch { expected: m, found: left.len().min(right.len()) });
            }
            let mut full = left.clone();
            full.extend_from_slice(field);
            full.extend_from_slice(right);
            let mut out = vec![0.0; inner];
            for ix in 1..nx - 1 {
                for iy in 0..m {
                    out[(ix - 1) * m + iy] = op.laplacian_at(&full, ix, iy);
                }
            }
            Ok(out)
        }
    }
}

impl LinearProblem {
    fn operator_shape(&self, nx: usize) -> StripOperator {
        let (hy, yb) = match self.mesh {
            Mesh::Line(_) => (1.0, None),
            Mesh::Strip(g) => (g.y.h, Some(g.y_boundary)),
        };
        StripOperator {
            nx,
            hx: self.mesh.x().h,
            ny: self.mesh.column_len(),
            hy,
            y_boundary: yb,
            shift: 0.0,
            epsilon: self.epsilon,
            delta_t: self.delta_t,
            c2: Vec::new(),
            left: FaceKind::Neumann,
            right: FaceKind::Neumann,
        }
    }
}

/// Trapezoidal integral of `u` over the mesh.
pub fn mass(u: &[f64], mesh: &Mesh) -> f64 {
    mesh.node_weights().iter().zip(u).map(|(w, x)| w * x).sum()
}

/// Ginzburg–Landau energy with `F(u) = ¼(u² − 1)²`; gradients are cell-midpoint
/// differences, which is the quadratic form the mirror-ghost Laplacian derives from.
pub fn energy(u: &[f64], params: &Params, mesh: &Mesh) -> f64 {
    let bulk: f64 = mesh
        .node_weights()
        .iter()
        .zip(u)
        .map(|(w, x)| w * 0.25 * (x * x - 1.0) * (x * x - 1.0))
        .sum();
    let m = mesh.column_len();
    let gx = mesh.x();
    let wy = mesh.column_weights();
    let mut grad = 0.0;
    for ix in 0..gx.n_cells {
        for iy in 0..m {
            let d = (u[(ix + 1) * m + iy] - u[ix * m + iy]) / gx.h;
            grad += gx.h * wy[iy] * d * d;
        }
    }
    if let Mesh::Strip(g) = mesh {
        let wx = gx.weights();
        let hy = g.y.h;
        for (ix, w) in wx.iter().enumerate() {
            let col = &u[ix * m..(ix + 1) * m];
            let mut add = |d: f64| grad += w * hy * d * d;
            for j in 0..m.saturating_sub(1) {
                add((col[j + 1] - col[j]) / hy);
            }
            if g.y_boundary == YBoundary::Dirichlet {
                add(col[0] / hy);
                add(col[m - 1] / hy);
            }
        }
    }
    bulk + 0.5 * params.epsilon * params.epsilon * grad
}
