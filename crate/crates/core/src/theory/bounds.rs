use num_complex::Complex64;

use super::hyper::csch;
use super::symbols::SymbolSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundGeometry {
    Line,
    /// Strip of height `l`; the bounds use the first sine mode `p₁ = π/l`.
    Strip { height: f64 },
}

/// Constants of the NN convergence estimates for one geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSet {
    pub geometry: BoundGeometry,
    pub equal: bool,
    /// `d` for equal widths, `d_min` otherwise.
    pub d: f64,
    /// Per-iteration envelope factors (`α*, β*`, `ᾱ, β̄`, `√α_e*, √β_e*` or `√α_u*, √β_u*`).
    pub rate_alpha: f64,
    pub rate_beta: f64,
    /// The constants themselves (`α_e*` rather than its root in 2D).
    pub alpha: f64,
    pub beta: f64,
    /// Bounds on the row sums `Σ|α_i^j|`, `Σ|β_i^j|` used in the proofs.
    pub row_alpha: f64,
    pub row_beta: f64,
    /// Width threshold (`d*`, `d̄`, `d_e*`, `d_u*`).
    pub threshold: f64,
    /// `d̄` with `11δtλ₁/λ` in place of `10δtλ₁/λ`; 1D unequal only.
    pub threshold_alt: Option<f64>,
    pub c_alpha: Option<f64>,
    pub c_beta: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub converged_by_theory: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundStatus {
    Provided(BoundSet),
    /// Complex-symbol regime: the estimates are only asserted, without constants.
    NotProvided,
}

impl BoundStatus {
    pub fn provided(&self) -> Option<&BoundSet> {
        match self {
            BoundStatus::Provided(b) => Some(b),
            BoundStatus::NotProvided => None,
        }
    }
}

pub fn nn_bounds(s: &SymbolSet, widths: &[f64], geometry: BoundGeometry, equal: bool) -> BoundStatus {
    if !s.real {
        return BoundStatus::NotProvided;
    }
    let (l1, l2, l, dt) = (s.lambda1.re, s.lambda2.re, s.lambda.re, s.delta_t);
    let d = widths.iter().copied().fold(f64::INFINITY, f64::min);
    let mut b = BoundSet {
        geometry,
        equal,
        d,
        rate_alpha: 0.0,
        rate_beta: 0.0,
        alpha: 0.0,
        beta: 0.0,
        row_alpha: 0.0,
        row_beta: 0.0,
        threshold: 0.0,
        threshold_alt: None,
        c_alpha: None,
        c_beta: None,
        c1: None,
        c2: None,
        converged_by_theory: false,
    };
    match geometry {
        BoundGeometry::Line => {
            let (na, nb, na_thr) = if equal {
                let k = 12.0 * (1.0 + dt * l1);
                (k / l, k / (dt * l * l2), k / l)
            } else {
                let tail = 1.0 / (2.0 * l1);
                let na = 11.0 / l + 11.0 * dt * l1 / l + tail;
                let nb = 11.0 / (dt * l * l2) + 11.0 * l1 / (l * l2) + tail;
                (na, nb, 11.0 / l + 10.0 * dt * l1 / l + tail)
            };
            b.alpha = na / (d * d);
            b.beta = nb / (d * d);
            b.rate_alpha = b.alpha;
            b.rate_beta = b.beta;
            b.row_alpha = b.alpha;
            b.row_beta = b.beta;
            b.threshold = na_thr.sqrt().max(nb.sqrt());
            if !equal {
                b.threshold_alt = Some(na.sqrt().max(nb.sqrt()));
            }
        }
        BoundGeometry::Strip { height } => {
            let p1 = std::f64::consts::PI / height;
            let xi3 = (l2 + p1 * p1).sqrt();
            let (ca, cb, factor) = if equal {
                (12.0 * (l1 / l + dt * l1 * l2 / l), 12.0 * (l1 / l + 1.0 / (dt * l)), 576.0)
            } else {
                (
                    11.0 * l1 / l + 10.0 * dt * l1 * l2 / l + 0.5,
                    11.0 * l1 / l + 10.0 / (dt * l) + 0.5,
                    462.25,
                )
            };
            let inv_sigma = csch(Complex64::new(xi3 * d, 0.0)).re;
            let s2 = inv_sigma * inv_sigma;
            let s4 = s2 * s2;
            let c1 = 5.0 * s4 * ((l1 / l).powi(2) + (dt * l1 * l2 / l).powi(2));
            let c2 = 5.0 * s4 * ((l1 / l).powi(2) + (1.0 / (dt * l)).powi(2));
            b.c_alpha = Some(ca);
            b.c_beta = Some(cb);
            b.c1 = Some(c1);
            b.c2 = Some(c2);
            b.alpha = factor * c1;
            b.beta = factor * c2;
            b.rate_alpha = b.alpha.sqrt();
            b.rate_beta = b.beta.sqrt();
            b.row_alpha = ca * s2;
            b.row_beta = cb * s2;
            b.threshold = ca.sqrt().asinh().max(cb.sqrt().asinh()) / xi3;
        }
    }
    b.converged_by_theory = d > b.threshold;
    BoundStatus::Provided(b)
}
