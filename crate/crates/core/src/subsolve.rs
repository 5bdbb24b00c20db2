//! Single-subdomain solves of the block system.

use crate::banded::BandLu;
use crate::discretization::{deinterleave, FaceData, FaceKind, LinearProblem, StripOperator};
use crate::error::{Error, Result};
use crate::field::PhaseField;
use crate::grid::Mesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Condition on one x-face of a subdomain; flux data are outward normal derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum FaceCondition {
    DirichletTrace { g: Vec<f64>, h: Vec<f64> },
    NeumannFlux { p: Vec<f64>, q: Vec<f64> },
    PhysicalNeumann,
}

impl FaceCondition {
    pub fn kind(&self) -> FaceKind {
        match self {
            FaceCondition::DirichletTrace { .. } => FaceKind::Dirichlet,
            _ => FaceKind::Neumann,
        }
    }

    fn data(&self) -> FaceData<'_> {
        match self {
            FaceCondition::DirichletTrace { g, h } => FaceData::Trace(g, h),
            FaceCondition::NeumannFlux { p, q } => FaceData::Flux(p, q),
            FaceCondition::PhysicalNeumann => FaceData::Zero,
        }
    }

    fn check(&self, len: usize) -> Result<()> {
        let (a, b) = match self {
            FaceCondition::DirichletTrace { g, h } => (g.len(), h.len()),
            FaceCondition::NeumannFlux { p, q } => (p.len(), q.len()),
            FaceCondition::PhysicalNeumann => return Ok(()),
        };
        for l in [a, b] {
            if l != len {
                return Err(Error::ShapeMismatch { expected: len, found: l });
            }
        }
        Ok(())
    }
}

/// Columns `first..=last` of a global problem with a condition on each face.
#[derive(Debug, Clone)]
pub struct SubdomainProblem<'a> {
    pub global: &'a LinearProblem,
    pub first: usize,
    pub last: usize,
    pub left: FaceCondition,
    pub right: FaceCondition,
}

impl SubdomainProblem<'_> {
    /// Neither face fixes `u`; solvable for the coupled system when `c ≠ 0`,
    /// but worth watching the condition estimate.
    pub fn is_floating(&self) -> bool {
        self.left.kind() == FaceKind::Neumann && self.right.kind() == FaceKind::Neumann
    }
}

pub fn solve_subdomain(problem: &SubdomainProblem) -> Result<PhaseField> {
    let s = SubdomainSolver::new(
        problem.global,
        problem.first,
        problem.last,
        problem.left.kind(),
        problem.right.kind(),
    )?;
    let len = s.column_len();
    problem.left.check(len)?;
    problem.right.check(len)?;
    Ok(s.solve(problem.left.data(), problem.right.data()))
}

/// A factorized subdomain operator; the factorization is reused across iterations.
#[derive(Debug, Clone)]
pub struct SubdomainSolver {
    op: StripOperator,
    lu: BandLu,
    mesh: Mesh,
    f_u: Vec<f64>,
    f_v: Vec<f64>,
}

impl SubdomainSolver {
    pub fn new(global: &LinearProblem, first: usize, last: usize, left: FaceKind, right: FaceKind) -> Result<Self> {
        if last <= first || last > global.mesh.x().n_cells {
            return Err(Error::InvalidDecomposition(format!("bad column range {first}..={last}")));
        }
        let op = global.operator(first, last, left, right);
        let lu = op.factor()?;
        let r = global.node_range(first, last);
        Ok(Self {
            op,
            lu,
            mesh: global.sub_mesh(first, last),
            f_u: global.f_u[r.clone()].to_vec(),
            f_v: global.f_v[r].to_vec(),
        })
    }

    pub fn column_len(&self) -> usize {
        self.op.ny
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn pivot_ratio(&self) -> f64 {
        self.lu.pivot_ratio()
    }

    fn run(&self, b: &[f64]) -> PhaseField {
        let (u, v) = deinterleave(&self.lu.solve(b));
        PhaseField { mesh: self.mesh, u, v }
    }

    /// Solve with the subdomain's own right-hand side.
    pub fn solve(&self, left: FaceData, right: FaceData) -> PhaseField {
        self.run(&self.op.rhs(&self.f_u, &self.f_v, left, right))
    }

    /// Solve with zero interior data (correction problems).
    pub fn solve_homogeneous(&self, left: FaceData, right: FaceData) -> PhaseField {
        let z = vec![0.0; self.f_u.len()];
        self.run(&self.op.rhs(&z, &z, left, right))
    }

    /// Outward flux at a face of a field this solver produced, in the form that
    /// makes the face equation of the neighbouring subdomain close exactly.
    pub fn interface_flux(&self, field: &PhaseField, side: Side) -> (Vec<f64>, Vec<f64>) {
        self.op.residual_flux(&field.u, &field.v, &self.f_u, &self.f_v, side == Side::Right)
    }
}

/// Outward normal derivatives of `(u, v)` at a face by one-sided 3-point differences.
pub fn extract_flux(field: &PhaseField, side: Side) -> Result<(Vec<f64>, Vec<f64>)> {
    let nx = field.n_columns();
    if nx < 3 {
        return Err(Error::InvalidGrid(format!("one-sided flux needs 3 columns, got {nx}")));
    }
    let h = field.mesh.x().h;
    let (a, b, c) = match side {
        Side::Left => (0, 1, 2),
        Side::Right => (nx - 1, nx - 2, nx - 3),
    };
    let d = |w: &[f64]| -> Vec<f64> {
        let m = field.mesh.column_len();
        (0..m).map(|j| (3.0 * w[a * m + j] - 4.0 * w[b * m + j] + w[c * m + j]) / (2.0 * h)).collect()
    };
    Ok((d(&field.u), d(&field.v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::params::Params;

    fn line(a: f64, b: f64, n: usize) -> Mesh {
        Mesh::Line(Grid1D::new(a, b, n).unwrap())
    }

    fn field_from(mesh: Mesh, f: impl Fn(f64) -> f64) -> PhaseField {
        let u: Vec<f64> = mesh.x().nodes().iter().map(|&x| f(x)).collect();
        PhaseField { mesh, v: u.clone(), u }
    }

    #[test]
    fn one_sided_flux_exact_for_polynomials() {
        let m = line(0.0, 1.5, 12);
        let (p, _) = extract_flux(&field_from(m, |x| x), Side::Right).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12);
        let (p, _) = extract_flux(&field_from(m, |x| x), Side::Left).unwrap();
        assert!((p[0] + 1.0).abs() < 1e-12);
        let (p, q) = extract_flux(&field_from(m, |x| x * x), Side::Right).unwrap();
        assert!((p[0] - 3.0).abs() < 1e-11 && (q[0] - 3.0).abs() < 1e-11);
        assert!(extract_flux(&field_from(line(0.0, 1.0, 1), |x| x), Side::Left).is_err());
    }

    #[test]
    fn one_sided_flux_second_order() {
        let xi = 3.0;
        let err = |n| {
            let m = line(0.0, 1.0, n);
            let (p, _) = extract_flux(&field_from(m, |x| (xi * x).cosh()), Side::Right).unwrap();
            (p[0] - xi * xi.sinh()).abs()
        };
        let rate = (err(64) / err(128)).log2();
        assert!((1.9..2.1).contains(&rate), "rate {rate}");
    }

    #[test]
    fn zero_data_zero_solution() {
        let p = Params::new(0.01, 1e-3, 1.0, 0.5).unwrap();
        let g = LinearProblem::error_equation(line(0.0, 1.0, 32), &p);
        let sp = SubdomainProblem {
            global: &g,
            first: 0,
            last: 32,
            left: FaceCondition::PhysicalNeumann,
            right: FaceCondition::PhysicalNeumann,
        };
        assert!(sp.is_floating());
        let f = solve_subdomain(&sp).unwrap();
        assert!(f.u.iter().chain(&f.v).all(|x| *x == 0.0));
    }

    #[test]
    fn restriction_is_reproduced() {
        let p = Params::new(0.05, 1e-3, 1.0, 0.5).unwrap();
        let mesh = line(0.0, 1.0, 40);
        let un: Vec<f64> = mesh.x().nodes().iter().map(|x| 0.3 * (5.0 * x).sin()).collect();
        let g = LinearProblem::time_step(mesh, &p, &un).unwrap();
        let mono = g.solve_monodomain().unwrap();
        let (u, v) = mono.column(25);
        let sp = SubdomainProblem {
            global: &g,
            first: 0,
            last: 25,
            left: FaceCondition::PhysicalNeumann,
            right: FaceCondition::DirichletTrace { g: u.to_vec(), h: v.to_vec() },
        };
        let f = solve_subdomain(&sp).unwrap();
        assert_eq!(f.u[25], u[0]);
        assert_eq!(f.v[25], v[0]);
        for i in 0..=25 {
            assert!((f.u[i] - mono.u[i]).abs() < 1e-12);
            assert!((f.v[i] - mono.v[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn shape_of_face_data_is_checked() {
        let p = Params::new(0.05, 1e-3, 1.0, 0.5).unwrap();
        let g = LinearProblem::error_equation(line(0.0, 1.0, 10), &p);
        let sp = SubdomainProblem {
            global: &g,
            first: 0,
            last: 5,
            left: FaceCondition::PhysicalNeumann,
            right: FaceCondition::DirichletTrace { g: vec![1.0, 2.0], h: vec![0.0, 0.0] },
        };
        assert!(matches!(solve_subdomain(&sp), Err(Error::ShapeMismatch { .. })));
    }
}
