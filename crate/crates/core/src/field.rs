use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Decomposition, Mesh};

/// Paired nodal fields: concentration `u` and chemical potential `v`.
///
/// Values are stored column-major (x outer, unknown y-nodes inner).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseField {
    pub mesh: Mesh,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl PhaseField {
    pub fn new(mesh: Mesh, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let n = mesh.n_unknown_nodes();
        for w in [&u, &v] {
            if w.len() != n {
                return Err(Error::ShapeMismatch { expected: n, found: w.len() });
            }
        }
        Ok(Self { mesh, u, v })
    }

    pub fn zeros(mesh: Mesh) -> Self {
        let n = mesh.n_unknown_nodes();
        Self { mesh, u: vec![0.0; n], v: vec![0.0; n] }
    }

    /// Values of `u` and `v` on x-column `ix`.
    pub fn column(&self, ix: usize) -> (&[f64], &[f64]) {
        let m = self.mesh.column_len();
        (&self.u[ix * m..(ix + 1) * m], &self.v[ix * m..(ix + 1) * m])
    }

    pub fn n_columns(&self) -> usize {
        self.mesh.x().n_nodes()
    }
}

/// Interface data `(g_i, h_i)` on `Γ_1..Γ_{N−1}`; each entry is one column.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSet {
    pub g: Vec<Vec<f64>>,
    pub h: Vec<Vec<f64>>,
}

impl TraceSet {
    pub fn zeros(n_interfaces: usize, len: usize) -> Self {
        Self { g: vec![vec![0.0; len]; n_interfaces], h: vec![vec![0.0; len]; n_interfaces] }
    }

    /// Uniform values on `[−1, 1]` from a seeded ChaCha8 stream; `g_1, h_1, g_2, …`.
    pub fn random(n_interfaces: usize, len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Self::zeros(n_interfaces, len);
        for i in 0..n_interfaces {
            for j in 0..len {
                t.g[i][j] = rng.gen_range(-1.0..=1.0);
            }
            for j in 0..len {
                t.h[i][j] = rng.gen_range(-1.0..=1.0);
            }
        }
        t
    }

    /// Traces read off a global field at the decomposition's interface nodes.
    pub fn from_field(field: &PhaseField, dec: &Decomposition) -> Self {
        let nodes = dec.nodes();
        let mut t = Self::zeros(0, 0);
        for &ix in &nodes[1..nodes.len() - 1] {
            let (u, v) = field.column(ix);
            t.g.push(u.to_vec());
            t.h.push(v.to_vec());
        }
        t
    }

    /// Traces read off a global field at the given column indices.
    pub fn from_field_at(field: &PhaseField, columns: &[usize]) -> Self {
        let mut t = Self::zeros(0, 0);
        for &ix in columns {
            let (u, v) = field.column(ix);
            t.g.push(u.to_vec());
            t.h.push(v.to_vec());
        }
        t
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn column_len(&self) -> usize {
        self.g.first().map_or(0, Vec::len)
    }

    /// Flattened `(g_1, h_1, g_2, h_2, …)`; for 1D this is the ordering the
    /// theory matrices act on.
    pub fn to_interleaved(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.len() * self.column_len());
        for i in 0..self.len() {
            out.extend_from_slice(&self.g[i]);
            out.extend_from_slice(&self.h[i]);
        }
        out
    }

    pub fn from_interleaved(data: &[f64], n_interfaces: usize) -> Result<Self> {
        if n_interfaces == 0 || !data.len().is_multiple_of(2 * n_interfaces) {
            return Err(Error::ShapeMismatch { expected: 2 * n_interfaces, found: data.len() });
        }
        let len = data.len() / (2 * n_interfaces);
        let mut t = Self::zeros(n_interfaces, len);
        for i in 0..n_interfaces {
            let base = 2 * i * len;
            t.g[i].copy_from_slice(&data[base..base + len]);
            t.h[i].copy_from_slice(&data[base + len..base + 2 * len]);
        }
        Ok(t)
    }

    pub fn max_abs(&self) -> f64 {
        self.g.iter().chain(&self.h).flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_g(&self) -> f64 {
        self.g.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| {
            a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
        };
        Self { g: d(&self.g, &other.g), h: d(&self.h, &other.h) }
    }
}

/// Reproducible random traces for a 1D decomposition.
pub fn random_traces(dec: &Decomposition, seed: u64) -> TraceSet {
    TraceSet::random(dec.n_interfaces(), 1, seed)
}

/// Random traces sized to the columns of `mesh` (one value per unknown y-node).
pub fn random_traces_on(dec: &Decomposition, mesh: &Mesh, seed: u64) -> TraceSet {
    TraceSet::random(dec.n_interfaces(), mesh.column_len(), seed)
}

/// Error of piecewise subdomain fields against a global reference.
///
/// Each part is a field on columns `first..` of the reference mesh. Lines use
/// the nodal max of `u`; strips use the `L²` norm with each part's own
/// trapezoid weights, so shared interface columns are counted half from each side.
pub fn piecewise_error(parts: &[(&PhaseField, usize)], reference: &PhaseField) -> f64 {
    let m = reference.mesh.column_len();
    match reference.mesh {
        Mesh::Line(_) => parts
            .iter()
            .flat_map(|(f, first)| f.u.iter().enumerate().map(move |(k, u)| (u - reference.u[first * m + k]).abs()))
            .fold(0.0, f64::max),
        Mesh::Strip(_) => parts
            .iter()
            .map(|(f, first)| {
                let w = f.mesh.node_weights();
                f.u.iter().zip(&w).enumerate().map(|(k, (u, w))| w * (u - reference.u[first * m + k]).powi(2)).sum::<f64>()
            })
            .sum::<f64>()
            .sqrt(),
    }
}

/// Distance of a trace set from a reference, in the norm `piecewise_error` uses.
pub fn trace_error(t: &TraceSet, reference: &TraceSet, mesh: &Mesh) -> f64 {
    let d = t.sub(reference);
    match mesh {
        Mesh::Line(_) => d.max_abs_g(),
        Mesh::Strip(_) => {
            let w = mesh.column_weights();
            d.g.iter().flat_map(|g| g.iter().zip(&w).map(|(x, w)| w * x * x)).sum::<f64>().sqrt()
        }
    }
}
