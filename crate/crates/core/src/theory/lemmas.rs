use num_complex::Complex64;

use super::hyper::{coth, csch, sinh_ratio};

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub name: &'static str,
    pub samples: usize,
    pub pass: bool,
    /// Smallest slack over all samples (relative where noted by the check).
    pub worst_margin: f64,
    pub worst_at: f64,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `f(t) = sinh(at)/sinh(bt)` for `0 < a < b`.
pub fn sinh_ratio_value(a: f64, b: f64, t: f64) -> f64 {
    sinh_ratio(re(a * t), re(b * t)).re
}

/// Checks `0 < f(t) < a/b` at every sample and strict decrease between
/// consecutive samples (samples are sorted first).
pub fn sinh_ratio_check(a: f64, b: f64, samples: &[f64]) -> LemmaReport {
    let mut ts = samples.to_vec();
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let bound = a / b;
    let mut pass = a > 0.0 && a < b;
    let mut worst = f64::INFINITY;
    let mut worst_at = f64::NAN;
    let mut prev: Option<f64> = None;
    for &t in &ts {
        let f = sinh_ratio_value(a, b, t);
        // relative slack against the upper bound, and positivity
        let mut m = ((bound - f) / bound).min(f / bound);
        if let Some(p) = prev {
            m = m.min((p - f) / bound);
        }
        if m < worst {
            worst = m;
            worst_at = t;
        }
        if m <= 0.0 {
            pass = false;
        }
        prev = Some(f);
    }
    LemmaReport { name: "sinh(at)/sinh(bt) in (0, a/b), decreasing", samples: ts.len(), pass, worst_margin: worst, worst_at }
}

/// Checks `cosh(t)/sinh²(t) < 2/t²`; the margin is `1 − t²·cosh/(2 sinh²)`.
pub fn coth_csch_check(samples: &[f64]) -> LemmaReport {
    let mut pass = true;
    let mut worst = f64::INFINITY;
    let mut worst_at = f64::NAN;
    for &t in samples {
        let lhs = (coth(re(t)) * csch(re(t))).re;
        let m = 1.0 - t * t * lhs / 2.0;
        if m < worst {
            worst = m;
            worst_at = t;
        }
        if !(t > 0.0) || m <= 0.0 {
            pass = false;
        }
    }
    LemmaReport { name: "cosh(t)/sinh^2(t) < 2/t^2", samples: samples.len(), pass, worst_margin: worst, worst_at }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaChecks {
    pub sinh_ratio_check: LemmaReport,
    pub coth_csch_check: LemmaReport,
}

impl LemmaChecks {
    pub fn pass(&self) -> bool {
        self.sinh_ratio_check.pass && self.coth_csch_check.pass
    }
}

pub fn lemma_checks(a: f64, b: f64, samples: &[f64]) -> LemmaChecks {
    LemmaChecks { sinh_ratio_check: sinh_ratio_check(a, b, samples), coth_csch_check: coth_csch_check(samples) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let t: f64 = 1.0;
        let v = t.cosh() / t.sinh().powi(2);
        assert!((v - 1.1172855).abs() < 1e-6);
        let r = coth_csch_check(&[1.0]);
        assert!(r.pass);
        assert!((r.worst_margin - (1.0 - v / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn small_t_limit() {
        // Taylor: f(t) = (a/b)(1 + (a²−b²)t²/6 + …)
        let f = sinh_ratio_value(1.0, 2.0, 1e-4);
        assert!((f - 0.5).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_ordering() {
        assert!(!sinh_ratio_check(2.0, 1.0, &[0.5, 1.0]).pass);
        assert!(!coth_csch_check(&[0.0]).pass);
    }
}
