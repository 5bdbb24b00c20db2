//! Hyperbolic ratios in exponentially scaled form.
//!
//! Arguments have `Re z ≥ 0`; with `e = exp(−2z)` every ratio stays bounded
//! even when `sinh z` itself would overflow.

use num_complex::Complex64;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `coth z`.
pub fn coth(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        // Laurent series; the scaled form loses digits near the pole
        let z2 = z * z;
        return one() / z + z / 3.0 - z * z2 / 45.0;
    }
    let e = (-2.0 * z).exp();
    (one() + e) / (one() - e)
}

/// `csch z = 1/sinh z`.
pub fn csch(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        let z2 = z * z;
        return one() / z - z / 6.0 + 7.0 * z * z2 / 360.0;
    }
    let e = (-2.0 * z).exp();
    2.0 * (-z).exp() / (one() - e)
}

/// `tanh z`.
pub fn tanh(z: Complex64) -> Complex64 {
    let e = (-2.0 * z).exp();
    (one() - e) / (one() + e)
}

/// `sech z = 1/cosh z`.
pub fn sech(z: Complex64) -> Complex64 {
    let e = (-2.0 * z).exp();
    2.0 * (-z).exp() / (one() + e)
}

/// `sinh(a)/sinh(b)` for `0 < Re a`, `0 < Re b`, without forming either sinh.
pub fn sinh_ratio(a: Complex64, b: Complex64) -> Complex64 {
    let ea = (-2.0 * a).exp();
    let eb = (-2.0 * b).exp();
    (a - b).exp() * (one() - ea) / (one() - eb)
}
