//! Vertex-centred meshes and strip decompositions.
//!
//! Nodes are `x_left + i·h` for `i = 0..=n_cells`. Interfaces always sit on
//! nodes, so a subdomain is a closed node range and neighbouring subdomains
//! share their face node.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub h: f64,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize) -> Result<Self> {
        if !(x_left.is_finite() && x_right.is_finite() && x_left < x_right) {
            return Err(Error::InvalidGrid(format!("need x_left < x_right, got ({x_left}, {x_right})")));
        }
        if n_cells == 0 {
            return Err(Error::InvalidGrid("n_cells must be positive".into()));
        }
        Ok(Self { x_left, x_right, n_cells, h: (x_right - x_left) / n_cells as f64 })
    }

    /// Grid with the requested spacing; the extent must be an integer number of cells.
    pub fn with_spacing(x_left: f64, x_right: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        let cells = (x_right - x_left) / h;
        let n = cells.round();
        if n < 1.0 || (cells - n).abs() > 1e-9 * cells.max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "extent {} is not a whole number of cells of size {h}",
                x_right - x_left
            )));
        }
        Self::new(x_left, x_right, n as usize)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n_cells {
            self.x_right
        } else {
            self.x_left + i as f64 * self.h
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_nodes()).map(|i| self.node(i)).collect()
    }

    pub fn nearest_node(&self, x: f64) -> usize {
        let t = ((x - self.x_left) / self.h).round();
        t.clamp(0.0, self.n_cells as f64) as usize
    }

    /// Trapezoidal quadrature weights.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![self.h; self.n_nodes()];
        w[0] = 0.5 * self.h;
        w[self.n_cells] = 0.5 * self.h;
        w
    }
}

/// How the `y = 0` and `y = L` edges of a strip are closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YBoundary {
    /// Homogeneous Neumann (the physical condition); every y-node is unknown.
    Neumann,
    /// Homogeneous Dirichlet; only interior y-nodes are unknown. This is the
    /// setting in which discrete sine modes diagonalise the y-Laplacian.
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
    pub y_boundary: YBoundary,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D, y_boundary: YBoundary) -> Result<Self> {
        if y_boundary == YBoundary::Dirichlet && y.n_cells < 2 {
            return Err(Error::InvalidGrid("Dirichlet y-edges need at least two y-cells".into()));
        }
        Ok(Self { x, y, y_boundary })
    }

    pub fn h_x(&self) -> f64 {
        self.x.h
    }

    pub fn h_y(&self) -> f64 {
        self.y.h
    }
}

/// Either a line or a strip; fields are stored column by column along x,
/// with the unknown y-nodes of one column contiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mesh {
    Line(Grid1D),
    Strip(Grid2D),
}

impl Mesh {
    pub fn x(&self) -> &Grid1D {
        match self {
            Mesh::Line(g) => g,
            Mesh::Strip(g) => &g.x,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Mesh::Line(_) => 1,
            Mesh::Strip(_) => 2,
        }
    }

    /// Number of unknown nodes in one x-column (one interface trace).
    pub fn column_len(&self) -> usize {
        match self {
            Mesh::Line(_) => 1,
            Mesh::Strip(g) => match g.y_boundary {
                YBoundary::Neumann => g.y.n_nodes(),
                YBoundary::Dirichlet => g.y.n_cells - 1,
            },
        }
    }

    pub fn n_unknown_nodes(&self) -> usize {
        self.x().n_nodes() * self.column_len()
    }

    /// y-coordinates of the unknown nodes of a column (`[0.0]` for a line).
    pub fn column_coords(&self) -> Vec<f64> {
        match self {
            Mesh::Line(_) => vec![0.0],
            Mesh::Strip(g) => match g.y_boundary {
                YBoundary::Neumann => g.y.nodes(),
                YBoundary::Dirichlet => (1..g.y.n_cells).map(|j| g.y.node(j)).collect(),
            },
        }
    }

    /// Quadrature weights along a column: trapezoid for Neumann edges, `h_y`
    /// for the interior nodes of a Dirichlet strip (the edge values are zero).
    pub fn column_weights(&self) -> Vec<f64> {
        match self {
            Mesh::Line(_) => vec![1.0],
            Mesh::Strip(g) => match g.y_boundary {
                YBoundary::Neumann => g.y.weights(),
                YBoundary::Dirichlet => vec![g.y.h; g.y.n_cells - 1],
            },
        }
    }

    /// Quadrature weights of every unknown node, column-major.
    pub fn node_weights(&self) -> Vec<f64> {
        let wx = self.x().weights();
        let wy = self.column_weights();
        let mut w = Vec::with_capacity(wx.len() * wy.len());
        for a in &wx {
            for b in &wy {
                w.push(a * b);
            }
        }
        w
    }

    /// Volume of the domain (length in 1D, area in 2D).
    pub fn measure(&self) -> f64 {
        match self {
            Mesh::Line(g) => g.length(),
            Mesh::Strip(g) => g.x.length() * g.y.length(),
        }
    }
}

/// Subdomain breakpoints `x_0 < x_1 < … < x_N`, stored as grid node indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    grid: Grid1D,
    nodes: Vec<usize>,
}

impl Decomposition {
    pub fn from_nodes(grid: Grid1D, nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::InvalidDecomposition("need at least two subdomains".into()));
        }
        if nodes[0] != 0 || *nodes.last().unwrap() != grid.n_cells {
            return Err(Error::InvalidDecomposition(
                "first and last breakpoints must be the domain ends".into(),
            ));
        }
        if let Some(w) = nodes.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidDecomposition(format!(
                "breakpoints collapse onto node {} (two interfaces on one node)",
                w[1]
            )));
        }
        Ok(Self { grid, nodes })
    }

    /// `N` equal subdomains; `n_cells` must be divisible by `N`.
    pub fn equal(grid: Grid1D, n_sub: usize) -> Result<Self> {
        if n_sub < 2 || !grid.n_cells.is_multiple_of(n_sub) {
            return Err(Error::InvalidDecomposition(format!(
                "{} cells cannot be split into {n_sub} equal subdomains",
                grid.n_cells
            )));
        }
        let w = grid.n_cells / n_sub;
        Self::from_nodes(grid, (0..=n_sub).map(|i| i * w).collect())
    }

    /// Widths alternating `d, 2d, d, 2d, …`, scaled to fill the domain and
    /// snapped to the grid.
    pub fn alternating(grid: Grid1D, n_sub: usize) -> Result<Self> {
        if n_sub < 2 {
            return Err(Error::InvalidDecomposition("need at least two subdomains".into()));
        }
        let units: Vec<f64> = (0..n_sub).map(|i| if i % 2 == 0 { 1.0 } else { 2.0 }).collect();
        let total: f64 = units.iter().sum();
        let mut acc = 0.0;
        let mut points = vec![grid.x_left];
        for u in &units {
            acc += u;
            points.push(grid.x_left + grid.length() * acc / total);
        }
        *points.last_mut().unwrap() = grid.x_right;
        snap_decomposition(&points, &grid)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn n_subdomains(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn n_interfaces(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.nodes.iter().map(|&i| self.grid.node(i)).collect()
    }

    /// Subdomain widths `d_i`, computed from node counts.
    pub fn widths(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| (w[1] - w[0]) as f64 * self.grid.h).collect()
    }

    pub fn d_min(&self) -> f64 {
        self.widths().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn is_equal(&self) -> bool {
        let w: Vec<usize> = self.nodes.windows(2).map(|w| w[1] - w[0]).collect();
        w.iter().all(|&x| x == w[0])
    }
}

/// Snap breakpoints to their nearest grid nodes.
pub fn snap_decomposition(breakpoints: &[f64], grid: &Grid1D) -> Result<Decomposition> {
    if breakpoints.len() < 3 {
        return Err(Error::InvalidDecomposition("need at least three breakpoints".into()));
    }
    if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidDecomposition("breakpoints must be strictly increasing".into()));
    }
    let tol = 0.5 * grid.h;
    if breakpoints[0] < grid.x_left - tol || *breakpoints.last().unwrap() > grid.x_right + tol {
        return Err(Error::InvalidDecomposition("breakpoints leave the grid extent".into()));
    }
    let nodes = breakpoints.iter().map(|&x| grid.nearest_node(x)).collect();
    Decomposition::from_nodes(*grid, nodes)
}
