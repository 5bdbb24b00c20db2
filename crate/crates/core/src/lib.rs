//! Substructuring solvers for the linearized Cahn–Hilliard step.

pub mod banded;
pub mod discretization;
pub mod dn;
pub mod error;
pub mod field;
pub mod grid;
pub mod nn;
pub mod params;
pub mod subsolve;
pub mod theory;
pub mod transform;

pub use error::{Error, Result};
pub use field::{random_traces, random_traces_on, PhaseField, TraceSet};
pub use grid::{snap_decomposition, Decomposition, Grid1D, Grid2D, Mesh, YBoundary};
pub use params::Params;
