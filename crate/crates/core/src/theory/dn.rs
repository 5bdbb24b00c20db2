use num_complex::Complex64;

use super::hyper::{coth, tanh};
use super::symbols::SymbolSet;
use crate::params::Params;

/// Two-subdomain iteration matrix acting on `(g, h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DNMatrix {
    pub h: [[f64; 2]; 2],
    /// `ρ_j = tanh(ξ_j a)·coth(ξ_j b)` at `ξ₁`, `ξ₃`.
    pub rho: [Complex64; 2],
    /// Eigenvalues `1 − θ − θρ_j`.
    pub eig: [Complex64; 2],
    /// Width of the Dirichlet side.
    pub a: f64,
    /// Width of the Neumann side.
    pub b: f64,
    pub theta: f64,
}

impl DNMatrix {
    pub fn apply(&self, g: f64, h: f64) -> (f64, f64) {
        (self.h[0][0] * g + self.h[0][1] * h, self.h[1][0] * g + self.h[1][1] * h)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eig[0].norm().max(self.eig[1].norm())
    }

    pub fn norm_inf(&self) -> f64 {
        (self.h[0][0].abs() + self.h[0][1].abs()).max(self.h[1][0].abs() + self.h[1][1].abs())
    }
}

/// `P·diag(t₁, t₃)·P⁻¹` with `P = [μ₁ μ₃]`, real part of each entry.
pub(crate) fn modal_2x2(s: &SymbolSet, t1: Complex64, t3: Complex64) -> [[f64; 2]; 2] {
    let (l1, l2, l, dt) = (s.lambda1, s.lambda2, s.lambda, s.delta_t);
    [
        [((l1 * t1 - l2 * t3) / l).re, (-dt * l1 * l2 * (t1 - t3) / l).re],
        [((t1 - t3) / (dt * l)).re, ((l1 * t3 - l2 * t1) / l).re],
    ]
}

pub fn dn_iteration_matrix(s: &SymbolSet, a: f64, b: f64, theta: f64) -> DNMatrix {
    let rho = [s.xi1, s.xi3].map(|xi| tanh(xi * a) * coth(xi * b));
    let mut eig = rho.map(|r| 1.0 - theta - theta * r);
    let h = if a == b {
        eig = [Complex64::new(1.0 - 2.0 * theta, 0.0); 2];
        [[1.0 - 2.0 * theta, 0.0], [0.0, 1.0 - 2.0 * theta]]
    } else {
        modal_2x2(s, eig[0], eig[1])
    };
    DNMatrix { h, rho, eig, a, b, theta }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnBound {
    pub factor: f64,
    pub real_regime: bool,
    /// The Dirichlet side is more than three times the Neumann side;
    /// exchanging the roles is advised.
    pub swap_advised: bool,
}

/// Per-iteration contraction for `θ = 1/2`: `|b−a|/(2b)` for real symbols,
/// `|b−a|/(√2·b)` otherwise.
pub fn dn_contraction_bound(params: &Params, a: f64, b: f64) -> DnBound {
    let real = params.is_real_symbol();
    let d = (b - a).abs();
    let factor = if real { d / (2.0 * b) } else { d / (std::f64::consts::SQRT_2 * b) };
    DnBound { factor, real_regime: real, swap_advised: a > 3.0 * b }
}
