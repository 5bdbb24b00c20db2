//! Named experiment setups and the reference iteration counts they are compared with.

use crate::error::{HarnessError, Result};
use crate::spec::{CProfile, ExperimentSpec, Method};
use crate::sweep::SweepGrid;

pub const THETAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
pub const HS: [f64; 4] = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0];
pub const DTS: [f64; 2] = [1e-6, 1e-3];
pub const SDS: [usize; 6] = [2, 4, 8, 16, 32, 64];

/// `[dt][h][θ]`, θ = 0.1..0.9.
pub type ThetaTable = [[[usize; 9]; 4]; 2];
/// `[dt or variant][h][sd]`, sd = 2..64.
pub type SdTable = [[[usize; 6]; 4]; 2];

/// Two equal halves of (0, 1).
pub const TABLE1: ThetaTable = [
    [
        [81, 36, 20, 11, 2, 11, 20, 36, 81],
        [82, 36, 20, 12, 2, 12, 20, 36, 82],
        [84, 37, 21, 12, 2, 12, 21, 36, 84],
        [85, 37, 21, 12, 2, 12, 21, 36, 85],
    ],
    [
        [84, 37, 22, 13, 2, 13, 21, 37, 84],
        [86, 38, 21, 12, 2, 12, 21, 38, 86],
        [88, 38, 22, 13, 2, 13, 22, 38, 88],
        [89, 38, 22, 13, 2, 13, 22, 39, 89],
    ],
];

/// (1, 2) split at 1.4; the Neumann side is larger.
pub const TABLE2: ThetaTable = [
    [
        [75, 35, 20, 12, 2, 12, 20, 37, 84],
        [76, 35, 20, 12, 2, 12, 20, 38, 86],
        [77, 36, 20, 12, 2, 12, 20, 39, 87],
        [79, 37, 22, 12, 2, 12, 22, 39, 89],
    ],
    [
        [74, 34, 22, 12, 3, 12, 22, 39, 84],
        [82, 39, 22, 13, 3, 13, 22, 45, 87],
        [83, 39, 23, 12, 3, 12, 23, 45, 88],
        [84, 39, 23, 13, 5, 13, 23, 44, 91],
    ],
];

/// (−1.5, 1) split at 0; the Dirichlet side is larger.
pub const TABLE3: ThetaTable = [
    [
        [65, 35, 20, 12, 2, 12, 20, 37, 66],
        [66, 35, 20, 12, 2, 12, 20, 38, 66],
        [67, 36, 20, 12, 2, 12, 20, 39, 67],
        [67, 37, 22, 12, 2, 12, 22, 39, 69],
    ],
    [
        [70, 37, 22, 12, 2, 12, 22, 37, 70],
        [70, 37, 22, 13, 2, 13, 22, 59, 70],
        [72, 38, 22, 12, 2, 12, 22, 54, 72],
        [73, 39, 23, 13, 2, 13, 23, 47, 73],
    ],
];

/// Reference cells whose value breaks the trend of its row or column; compared with ±2.
/// Entries are `(table, dt index, h index, θ index)`.
pub const ANOMALOUS: [(u8, usize, usize, usize); 5] = [(3, 1, 1, 7), (3, 1, 2, 7), (3, 1, 3, 7), (2, 1, 0, 0), (2, 1, 3, 4)];

/// NN on (0, 20), equal widths, θ = 1/4; index 0 is δt = 1e−6.
pub const TABLE4: SdTable = [
    [[2, 2, 2, 2, 2, 2], [2, 2, 2, 2, 2, 2], [2, 2, 2, 2, 2, 3], [2, 2, 2, 2, 3, 3]],
    [[2, 2, 2, 2, 2, 2], [2, 2, 2, 2, 2, 3], [2, 2, 2, 2, 3, 5], [2, 2, 2, 3, 5, 10]],
];

/// As `TABLE4` with unequal widths.
pub const TABLE5: SdTable = [
    [[2, 2, 3, 3, 4, 6], [2, 2, 3, 4, 4, 6], [2, 2, 4, 4, 6, 8], [2, 2, 4, 4, 8, 10]],
    [[2, 2, 3, 3, 4, 6], [2, 2, 3, 4, 4, 6], [2, 2, 4, 4, 6, 9], [2, 2, 4, 7, 9, 13]],
];

/// NN on (0, 16)×(0, 1), h_y = 1/32, δt = 1e−6; index 0 equal widths, 1 unequal.
pub const TABLE6: SdTable = [
    [[2, 2, 2, 2, 2, 2], [2, 2, 2, 2, 2, 2], [2, 2, 2, 2, 2, 3], [2, 2, 2, 2, 3, 3]],
    [[2, 2, 3, 3, 4, 6], [2, 2, 3, 4, 4, 6], [2, 2, 4, 4, 6, 8], [2, 2, 4, 4, 8, 10]],
];

#[derive(Debug, Clone)]
pub enum PresetItem {
    Run { label: String, spec: ExperimentSpec },
    Sweep { label: String, spec: ExperimentSpec, grid: SweepGrid },
}

pub const PRESETS: [&str; 13] = [
    "table1",
    "table2",
    "table3",
    "table4",
    "table5",
    "table6",
    "fig-dn-nld",
    "fig-dn-dln",
    "fig-dn-2d",
    "fig-nn-32sd",
    "fig-nn-64sd",
    "fig-nn-2d",
    "monodomain",
];

pub fn dn_base(domain: [f64; 2], split: f64) -> ExperimentSpec {
    ExperimentSpec { method: Method::Dn, domain: domain.to_vec(), split: vec![split], ..Default::default() }
}

pub fn nn_base(dim: usize) -> ExperimentSpec {
    let domain = if dim == 1 { vec![0.0, 20.0] } else { vec![0.0, 16.0, 0.0, 1.0] };
    ExperimentSpec {
        method: Method::Nn,
        dim,
        domain,
        theta: 0.25,
        hy: 1.0 / 32.0,
        // x-only frozen data keeps large strip cases on the y-mode path
        c_profile: if dim == 2 { CProfile::SmoothX } else { CProfile::Smooth },
        ..Default::default()
    }
}

fn theta_grid() -> SweepGrid {
    SweepGrid { theta: THETAS.to_vec(), h: HS.to_vec(), dt: DTS.to_vec(), sd: Vec::new() }
}

fn sd_grid(dts: &[f64]) -> SweepGrid {
    SweepGrid { theta: Vec::new(), h: HS.to_vec(), dt: dts.to_vec(), sd: SDS.to_vec() }
}

fn sweep_item(label: &str, spec: ExperimentSpec, grid: SweepGrid) -> PresetItem {
    PresetItem::Sweep { label: label.into(), spec, grid }
}

fn run_item(label: &str, spec: ExperimentSpec) -> PresetItem {
    PresetItem::Run { label: label.into(), spec }
}

pub fn preset(name: &str) -> Result<Vec<PresetItem>> {
    let dts = |spec: ExperimentSpec, tag: &str| -> Vec<PresetItem> {
        DTS.iter().map(|&dt| run_item(&format!("{tag}-dt{dt:e}"), ExperimentSpec { dt, ..spec.clone() })).collect()
    };
    Ok(match name {
        "table1" => vec![sweep_item("table1", dn_base([0.0, 1.0], 0.5), theta_grid())],
        "table2" => vec![sweep_item("table2", dn_base([1.0, 2.0], 1.4), theta_grid())],
        "table3" => vec![sweep_item("table3", dn_base([-1.5, 1.0], 0.0), theta_grid())],
        "table4" => vec![sweep_item("table4", nn_base(1), sd_grid(&DTS))],
        "table5" => vec![sweep_item("table5", ExperimentSpec { unequal: true, ..nn_base(1) }, sd_grid(&DTS))],
        "table6" => vec![
            sweep_item("table6-equal", nn_base(2), sd_grid(&[1e-6])),
            sweep_item("table6-unequal", ExperimentSpec { unequal: true, ..nn_base(2) }, sd_grid(&[1e-6])),
        ],
        "fig-dn-nld" => dts(dn_base([1.0, 2.0], 1.4), "fig-dn-nld"),
        "fig-dn-dln" => dts(dn_base([-1.5, 1.0], 0.0), "fig-dn-dln"),
        "fig-dn-2d" => [([0.0, 1.0], 0.5, "equal"), ([-1.5, 1.0], 0.0, "dln"), ([1.0, 2.0], 1.4, "nld")]
            .into_iter()
            .flat_map(|(d, s, tag)| {
                let spec = ExperimentSpec {
                    dim: 2,
                    domain: vec![d[0], d[1], 0.0, 1.0],
                    hy: 1.0 / 64.0,
                    ..dn_base(d, s)
                };
                dts(spec, &format!("fig-dn-2d-{tag}"))
            })
            .collect(),
        "fig-nn-32sd" | "fig-nn-64sd" => {
            let sd = if name == "fig-nn-32sd" { 32 } else { 64 };
            dts(ExperimentSpec { sd, h: 1.0 / 512.0, ..nn_base(1) }, name)
        }
        "fig-nn-2d" => [4, 8, 16]
            .into_iter()
            .map(|sd| run_item(&format!("fig-nn-2d-sd{sd}"), ExperimentSpec { sd, h: 1.0 / 64.0, dt: 1e-3, ..nn_base(2) }))
            .collect(),
        "monodomain" => [1e-6, 1e-3]
            .into_iter()
            .map(|dt| {
                run_item(
                    &format!("monodomain-dt{dt:e}"),
                    ExperimentSpec { method: Method::Monodomain, dt, h: 1.0 / 128.0, steps: 200, ..Default::default() },
                )
            })
            .collect(),
        _ => return Err(HarnessError::Spec(format!("unknown preset `{name}`; known: {}", PRESETS.join(", ")))),
    })
}
