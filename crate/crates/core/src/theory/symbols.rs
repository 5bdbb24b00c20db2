use num_complex::Complex64;

use crate::params::Params;

/// Roots of `ε²δt·λ² − c²δt·λ + 1 = 0` and the derived modal quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSet {
    pub epsilon: f64,
    pub delta_t: f64,
    pub c: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    /// `λ₁ − λ₂`.
    pub lambda: Complex64,
    /// Principal roots `ξ₁ = √(λ₁ + p²)`, `ξ₃ = √(λ₂ + p²)`; `ξ₂ = −ξ₁`, `ξ₄ = −ξ₃`.
    pub xi1: Complex64,
    pub xi3: Complex64,
    /// Squared y-frequency `p²` (zero in 1D).
    pub p2: f64,
    pub mode: Option<usize>,
    pub real: bool,
}

impl SymbolSet {
    pub fn eigvec1(&self) -> [Complex64; 2] {
        [self.delta_t * self.lambda1, Complex64::new(1.0, 0.0)]
    }

    pub fn eigvec3(&self) -> [Complex64; 2] {
        [self.delta_t * self.lambda2, Complex64::new(1.0, 0.0)]
    }

    /// Real part of the roots in the complex regime, `c²/(2ε²)`.
    pub fn lambda_re(&self) -> f64 {
        self.lambda1.re
    }

    /// Modal coordinates `(η₁, η₂)` of a trace pair.
    pub fn modal_coords(&self, g: f64, h: f64) -> (Complex64, Complex64) {
        let dl = self.delta_t * self.lambda;
        ((g - self.delta_t * self.lambda2 * h) / dl, -(g - self.delta_t * self.lambda1 * h) / dl)
    }

    /// Residual of the characteristic quadratic at `λ`, relative to its largest term.
    pub fn quadratic_residual(&self, l: Complex64) -> f64 {
        let a = self.epsilon * self.epsilon * self.delta_t;
        let b = self.c * self.c * self.delta_t;
        let r = a * l * l - b * l + 1.0;
        r.norm() / (a * l.norm_sqr()).max(b * l.norm()).max(1.0)
    }

    /// Determinant of the symbol matrix `[1, −δt(ξ²−p²); ε²(ξ²−p²) − c², 1]`,
    /// scaled by `1 + |δt ε² (ξ²−p²)²|`.
    pub fn determinant_residual(&self, xi: Complex64) -> f64 {
        let k = xi * xi - self.p2;
        let det = 1.0 + self.delta_t * k * (self.epsilon * self.epsilon * k - self.c * self.c);
        det.norm() / (1.0 + (self.delta_t * self.epsilon * self.epsilon * k * k).norm())
    }
}

/// Symbols of the 1D problem.
pub fn symbols(params: &Params) -> SymbolSet {
    symbols_shifted(params, 0.0, None)
}

/// Symbols of sine mode `m` on a strip of height `l`, with `p_m = mπ/l`.
pub fn symbols_mode(params: &Params, m: usize, l: f64) -> SymbolSet {
    let p = m as f64 * std::f64::consts::PI / l;
    symbols_shifted(params, p * p, Some(m))
}

pub fn symbols_shifted(params: &Params, p2: f64, mode: Option<usize>) -> SymbolSet {
    let (eps, dt, c) = (params.epsilon, params.delta_t, params.c);
    let e2dt = eps * eps * dt;
    let c2 = c * c;
    let disc = params.discriminant();
    let real = disc > 0.0;
    let (l1, l2) = if real {
        // larger root directly, smaller from the product to avoid cancellation
        let l1 = (c2 * dt + disc.sqrt()) / (2.0 * e2dt);
        (Complex64::new(l1, 0.0), Complex64::new(1.0 / (e2dt * l1), 0.0))
    } else {
        let re = c2 / (2.0 * eps * eps);
        let im = (-disc).sqrt() / (2.0 * e2dt);
        (Complex64::new(re, im), Complex64::new(re, -im))
    };
    SymbolSet {
        epsilon: eps,
        delta_t: dt,
        c,
        lambda1: l1,
        lambda2: l2,
        lambda: l1 - l2,
        xi1: (l1 + p2).sqrt(),
        xi3: (l2 + p2).sqrt(),
        p2,
        mode,
        real,
    }
}
