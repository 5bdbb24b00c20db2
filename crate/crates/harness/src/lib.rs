//! Experiment specs, runs, parameter sweeps and CSV output for the
//! substructuring solvers in `chdd-core`.

pub mod error;
pub mod output;
pub mod plot;
pub mod presets;
pub mod run;
pub mod spec;
pub mod sweep;

pub use error::{HarnessError, Result};
pub use plot::{emit_plot_script, PlotKind};
pub use presets::{preset, PresetItem, PRESETS};
pub use run::{run, RunReport, RunStatus};
pub use spec::{CProfile, ExperimentSpec, Method};
pub use sweep::{sweep, SweepGrid, SweepRow};
