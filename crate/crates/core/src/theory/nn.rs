use num_complex::Complex64;

use super::dn::modal_2x2;
use super::hyper::{coth, csch, tanh};
use super::symbols::SymbolSet;
use crate::error::{Error, Result};

/// Multi-subdomain iteration matrix on `(g₁, h₁, g₂, h₂, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NNMatrix {
    pub t: Vec<Vec<f64>>,
    pub widths: Vec<f64>,
    pub theta: f64,
}

impl NNMatrix {
    pub fn n_interfaces(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.t.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// Nonzero count of interface row `i` (1-based): 6, 8 or 10.
    pub fn row_length(&self, i: usize) -> usize {
        let n = self.widths.len();
        let lo = i.saturating_sub(2).max(1);
        let hi = (i + 2).min(n - 1);
        2 * (hi - lo + 1)
    }

    /// `(Σ_j |α_i^j|, Σ_j |β_i^j|)` for interface `i` (1-based).
    pub fn row_sums(&self, i: usize) -> (f64, f64) {
        let s = |r: &Vec<f64>| r.iter().map(|x| x.abs()).sum();
        (s(&self.t[2 * (i - 1)]), s(&self.t[2 * (i - 1) + 1]))
    }

    pub fn norm_inf(&self) -> f64 {
        self.t.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Coefficients of row `i` in the order `α_i^1, …, α_i^{S_i}` (and β).
    pub fn row_coefficients(&self, i: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.widths.len();
        let lo = i.saturating_sub(2).max(1);
        let hi = (i + 2).min(n - 1);
        let cols = 2 * (lo - 1)..2 * hi;
        (self.t[2 * (i - 1)][cols.clone()].to_vec(), self.t[2 * (i - 1) + 1][cols].to_vec())
    }
}

/// Scalar trace map `g ← T g` for one root `ξ`.
///
/// Dirichlet step: outward fluxes of each subdomain; the jump at `Γ_i` is the
/// sum of the two outward fluxes there. Neumann step: `Ω_i` takes the jump at
/// its right face and the negated jump at its left face (both data are
/// x-derivatives). Update `g_i ← g_i − θ(φ_i − φ_{i+1})|_{Γ_i}`.
pub fn scalar_trace_map(xi: Complex64, widths: &[f64], theta: f64) -> Vec<Vec<Complex64>> {
    let n = widths.len();
    let m = n - 1;
    let z = |i: usize| xi * widths[i - 1];
    let ct = |i: usize| coth(z(i));
    let cs = |i: usize| csch(z(i));
    // outward flux factor of subdomain i at an interface face, over ξ
    let dir_diag = |i: usize| if i == 1 || i == n { tanh(z(i)) } else { ct(i) };
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![vec![zero; m]; m];
    let mut b = vec![vec![zero; m]; m];
    for r in 0..m {
        let (left, right) = (r + 1, r + 2);
        a[r][r] = dir_diag(left) + dir_diag(right);
        b[r][r] = ct(left) + ct(right);
        if left > 1 {
            a[r][r - 1] = -cs(left);
            b[r][r - 1] = -cs(left);
        }
        if right < n {
            a[r][r + 1] = -cs(right);
            b[r][r + 1] = -cs(right);
        }
    }
    let mut t = vec![vec![zero; m]; m];
    for r in 0..m {
        for c in 0..m {
            let mut s = zero;
            for k in r.saturating_sub(1)..=(r + 1).min(m - 1) {
                s += b[r][k] * a[k][c];
            }
            t[r][c] = -theta * s;
        }
        t[r][r] += 1.0;
    }
    t
}

fn assemble(s: &SymbolSet, t1: &[Vec<Complex64>], t3: &[Vec<Complex64>]) -> Vec<Vec<f64>> {
    let m = t1.len();
    let mut t = vec![vec![0.0; 2 * m]; 2 * m];
    for r in 0..m {
        for c in 0..m {
            let blk = modal_2x2(s, t1[r][c], t3[r][c]);
            for (p, row) in blk.iter().enumerate() {
                for (q, v) in row.iter().enumerate() {
                    t[2 * r + p][2 * c + q] = *v;
                }
            }
        }
    }
    t
}

pub fn nn_iteration_matrix(s: &SymbolSet, widths: &[f64], theta: f64) -> Result<NNMatrix> {
    if widths.len() < 3 {
        return Err(Error::Unsupported("closed-form matrix needs at least three subdomains".into()));
    }
    if widths.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::InvalidDecomposition("widths must be positive".into()));
    }
    let t1 = scalar_trace_map(s.xi1, widths, theta);
    let t3 = scalar_trace_map(s.xi3, widths, theta);
    Ok(NNMatrix { t: assemble(s, &t1, &t3), widths: widths.to_vec(), theta })
}

/// How to read the closed-form coefficient list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaReading {
    /// Signs and factors taken literally, including interior
    /// `β_i^4 = −(λ₂/λ)Υ₁,ᵢ² + (λ₂/λ)Υ₃,ᵢ²` and the row-2 entries
    /// `α_2^4`, `β_2^4` whose signs break the diagonal pattern.
    Literal,
    /// The same terms with those three entries brought in line with the
    /// pattern of every other row (`λ₁` in the second term of `β_i^4`).
    Corrected,
}

/// Hyperbolic shorthands for one root, 1-based subdomain index.
struct Hyp {
    coth: Vec<Complex64>,
    csch: Vec<Complex64>,
    tanh: Vec<Complex64>,
}

impl Hyp {
    fn new(xi: Complex64, widths: &[f64]) -> Self {
        let z: Vec<Complex64> = widths.iter().map(|d| xi * *d).collect();
        Self {
            coth: z.iter().map(|&v| coth(v)).collect(),
            csch: z.iter().map(|&v| csch(v)).collect(),
            tanh: z.iter().map(|&v| tanh(v)).collect(),
        }
    }
    // γ_i/σ_i
    fn c(&self, i: usize) -> Complex64 {
        self.coth[i - 1]
    }
    // 1/σ_i
    fn s(&self, i: usize) -> Complex64 {
        self.csch[i - 1]
    }
    // σ_i/γ_i
    fn t(&self, i: usize) -> Complex64 {
        self.tanh[i - 1]
    }
}

/// The `Υ^k_{j,i}` terms of row `i` of the closed-form coefficient list, in
/// ratio form (`γ/σ = coth`, `1/σ = csch`, `σ/γ = tanh`).
fn upsilon(y: &Hyp, i: usize, n: usize) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let (c, s, t) = (|k| y.c(k), |k| y.s(k), |k| y.t(k));
    if i == 1 {
        vec![
            one + c(1) * c(2) + t(1) * c(2) + c(2) * c(2) + s(2) * s(2),
            c(1) * s(1) + 2.0 * c(2) * s(2) + c(3) * s(2),
            s(2) * s(3),
        ]
    } else if i == 2 {
        vec![
            t(1) * s(2) + 2.0 * c(2) * s(2) + c(3) * s(2),
            c(2) * c(2) + 2.0 * c(2) * c(3) + s(2) * s(2) + s(3) * s(3) + c(3) * c(3),
            c(2) * s(3) + 2.0 * c(3) * s(3) + c(4) * s(3),
            s(3) * s(4),
        ]
    } else if i == n - 2 {
        vec![
            s(n - 3) * s(n - 2),
            2.0 * c(n - 2) * s(n - 2) + c(n - 3) * s(n - 2) + c(n - 1) * s(n - 2),
            c(n - 2) * c(n - 2)
                + 2.0 * c(n - 2) * c(n - 1)
                + s(n - 2) * s(n - 2)
                + s(n - 1) * s(n - 1)
                + c(n - 1) * c(n - 1),
            2.0 * c(n - 1) * s(n - 1) + c(n - 2) * s(n - 1) + t(n) * s(n - 1),
        ]
    } else if i == n - 1 {
        vec![
            s(n - 2) * s(n - 1),
            2.0 * c(n - 1) * s(n - 1) + c(n - 2) * s(n - 1) + c(n) * s(n - 1),
            one + c(n - 1) * c(n - 1) + t(n - 1) * t(n) + s(n - 1) * s(n - 1) + c(n - 1) * c(n),
        ]
    } else {
        vec![
            s(i) * s(i - 1),
            2.0 * c(i) * s(i) + c(i - 1) * s(i) + c(i + 1) * s(i),
            c(i) * c(i) + c(i + 1) * c(i + 1) + 2.0 * c(i) * c(i + 1) + s(i) * s(i) + s(i + 1) * s(i + 1),
            c(i) * s(i + 1) + c(i + 2) * s(i + 1) + 2.0 * c(i + 1) * s(i + 1),
            s(i + 1) * s(i + 2),
        ]
    }
}

/// Row coefficients `(α_i, β_i)` from the closed-form formulas, with each
/// `Υ` scaled by `θ` (the identity terms are not scaled).
///
/// Row `i` is classified as first/second/last-two/interior by its position;
/// when `N < 6` some rows fall under several headings and the first matching
/// heading (1, 2, N−2, N−1) is used.
pub fn closed_form_row(s: &SymbolSet, widths: &[f64], theta: f64, i: usize, reading: FormulaReading) -> (Vec<f64>, Vec<f64>) {
    let n = widths.len();
    let y1 = upsilon(&Hyp::new(s.xi1, widths), i, n);
    let y3 = upsilon(&Hyp::new(s.xi3, widths), i, n);
    let (l1, l2, l, dt) = (s.lambda1, s.lambda2, s.lambda, s.delta_t);
    let one = Complex64::new(1.0, 0.0);
    // (sign, identity) pattern per Υ-index; the g-coefficient is
    //   sign·(−λ₁Υ₁ + λ₂Υ₃)/λ (+1), the h-coefficient sign·δtλ₁λ₂(Υ₁ − Υ₃)/λ,
    // and similarly for the β row.
    let diag_k = match i {
        1 => 0,
        2 => 1,
        _ => 2,
    };
    let interior = i > 2 && i + 2 < n;
    let literal = reading == FormulaReading::Literal;
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for k in 0..y1.len() {
        let (u1, u3) = (theta * y1[k], theta * y3[k]);
        // off-diagonal neighbours at distance one carry the opposite sign
        let dist = k as i64 - diag_k as i64;
        let sgn = if dist.abs() == 1 { -1.0 } else { 1.0 };
        let id = if k == diag_k { one } else { Complex64::new(0.0, 0.0) };
        let row2_diag = literal && i == 2 && k == 1;
        let flip = if row2_diag { -1.0 } else { 1.0 };
        alpha.push((id + sgn * (-l1 * u1 + l2 * u3) / l).re);
        alpha.push((flip * sgn * dt * l1 * l2 * (u1 - u3) / l).re);
        beta.push((sgn * (-u1 + u3) / (dt * l)).re);
        let second = if literal && interior && k == 1 { l2 } else { l1 };
        beta.push((id + flip * sgn * (l2 * u1 - second * u3) / l).re);
    }
    (alpha, beta)
}

/// Full matrix from the closed-form row formulas.
pub fn closed_form_matrix(s: &SymbolSet, widths: &[f64], theta: f64, reading: FormulaReading) -> Result<NNMatrix> {
    if widths.len() < 3 {
        return Err(Error::Unsupported("closed-form matrix needs at least three subdomains".into()));
    }
    let n = widths.len();
    let m = n - 1;
    let mut t = vec![vec![0.0; 2 * m]; 2 * m];
    for i in 1..=m {
        let (a, b) = closed_form_row(s, widths, theta, i, reading);
        let lo = match i {
            1 | 2 => 1,
            _ if i == n - 1 => n - 3,
            _ if i == n - 2 => n - 4,
            _ => i - 2,
        }
        .max(1);
        for (k, (x, y)) in a.iter().zip(&b).enumerate() {
            let col = 2 * (lo - 1) + k;
            if col < 2 * m {
                t[2 * (i - 1)][col] = *x;
                t[2 * (i - 1) + 1][col] = *y;
            }
        }
    }
    Ok(NNMatrix { t, widths: widths.to_vec(), theta })
}
