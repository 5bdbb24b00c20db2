use chdd_core::theory::*;
use chdd_core::Params;
use num_complex::Complex64;
use proptest::prelude::*;

fn long_step() -> Params {
    Params::new(0.01, 1e-3, 1.0, 0.5).unwrap()
}

fn short_step() -> Params {
    Params::new(0.01, 1e-6, 1.0, 0.5).unwrap()
}

#[test]
fn equal_widths_give_scaled_identity() {
    for p in [long_step(), short_step()] {
        let s = symbols(&p);
        for theta in [0.1, 0.25, 0.5, 0.9] {
            let m = dn_iteration_matrix(&s, 0.5, 0.5, theta);
            assert_eq!(m.h, [[1.0 - 2.0 * theta, 0.0], [0.0, 1.0 - 2.0 * theta]]);
        }
    }
}

#[test]
fn half_relaxation_eigenvalues() {
    for p in [long_step(), short_step(), Params::new(0.1, 0.1, 1.0, 0.5).unwrap()] {
        let s = symbols(&p);
        for (a, b) in [(0.4, 0.6), (1.5, 1.0), (0.2, 0.25)] {
            let m = dn_iteration_matrix(&s, a, b, 0.5);
            let mut expect = 0.0f64;
            for (k, xi) in [s.xi1, s.xi3].into_iter().enumerate() {
                let e = (xi * (b - a)).sinh() / (2.0 * (xi * b).sinh() * (xi * a).cosh());
                assert!((m.eig[k] - e).norm() < 1e-12 * (1.0 + e.norm()), "{a} {b}");
                expect = expect.max(e.norm());
            }
            assert!((m.spectral_radius() - expect).abs() < 1e-12);
            assert!(m.spectral_radius() <= dn_contraction_bound(&p, a, b).factor + 1e-12);
        }
    }
}

#[test]
fn contraction_bound_values() {
    let b = dn_contraction_bound(&long_step(), 0.4, 0.6);
    assert!(b.real_regime);
    assert!((b.factor - 0.2 / 1.2).abs() < 1e-15);
    let b = dn_contraction_bound(&short_step(), 1.5, 1.0);
    assert!(!b.real_regime);
    assert!((b.factor - 0.5 / 2f64.sqrt()).abs() < 1e-15);
    assert!(!b.swap_advised);
    assert!(dn_contraction_bound(&short_step(), 3.5, 1.0).swap_advised);
}

#[test]
fn modal_matrix_reproduces_eigenvectors() {
    let p = Params::new(0.1, 0.1, 1.0, 0.5).unwrap();
    let s = symbols(&p);
    let m = dn_iteration_matrix(&s, 0.4, 0.6, 0.3);
    for (k, v) in [s.eigvec1(), s.eigvec3()].into_iter().enumerate() {
        let (x, y) = m.apply(v[0].re, v[1].re);
        let e = m.eig[k].re;
        assert!((x - e * v[0].re).abs() < 1e-12 * v[0].norm().max(1.0));
        assert!((y - e * v[1].re).abs() < 1e-12);
    }
}

#[test]
fn nn_row_lengths() {
    let s = symbols(&long_step());
    let m = nn_iteration_matrix(&s, &[0.3; 8], 0.25).unwrap();
    let lens: Vec<usize> = (1..=7).map(|i| m.row_length(i)).collect();
    assert_eq!(lens, vec![6, 8, 10, 10, 10, 8, 6]);
    for i in 1..=7 {
        let (a, b) = m.row_coefficients(i);
        assert_eq!(a.len(), m.row_length(i));
        assert_eq!(b.len(), m.row_length(i));
    }
    assert!(nn_iteration_matrix(&s, &[0.3, 0.3], 0.25).is_err());
}

#[test]
fn nn_equal_widths_symmetric_ends() {
    let p = Params::new(0.1, 0.1, 1.0, 0.25).unwrap();
    let s = symbols(&p);
    let m = nn_iteration_matrix(&s, &[0.2; 7], 0.25).unwrap();
    // mirror symmetry: first and last rows carry the same coefficients reversed
    let (a1, _) = m.row_coefficients(1);
    let (a6, _) = m.row_coefficients(6);
    assert!((a1[0] - a6[4]).abs() < 1e-12 && (a1[1] - a6[5]).abs() < 1e-12);
    assert!((a1[4] - a6[0]).abs() < 1e-12);
}

#[test]
fn two_equal_subdomains_converge_in_two_steps() {
    let xi = Complex64::new(7.0, 0.0);
    let t = scalar_trace_map(xi, &[0.5, 0.5], 0.25);
    // single interface: 1 − θ·(2coth)(2tanh) = 0 at θ = 1/4
    assert!(t[0][0].norm() < 1e-14);
}

#[test]
fn corrected_formulas_match_derived_matrix() {
    for p in [Params::new(0.1, 0.1, 1.0, 0.25).unwrap(), long_step()] {
        let s = symbols(&p);
        for n in [6usize, 7] {
            let widths: Vec<f64> = (0..n).map(|i| 0.15 + 0.05 * (i % 3) as f64).collect();
            let derived = nn_iteration_matrix(&s, &widths, 0.25).unwrap();
            let corrected = closed_form_matrix(&s, &widths, 0.25, FormulaReading::Corrected).unwrap();
            let literal = closed_form_matrix(&s, &widths, 0.25, FormulaReading::Literal).unwrap();
            let scale = derived.norm_inf().max(1.0);
            let mut worst_c = 0.0f64;
            let mut worst_p = 0.0f64;
            for i in 3..n - 2 {
                for r in [2 * (i - 1), 2 * (i - 1) + 1] {
                    for c in 0..2 * (n - 1) {
                        worst_c = worst_c.max((derived.t[r][c] - corrected.t[r][c]).abs());
                        worst_p = worst_p.max((derived.t[r][c] - literal.t[r][c]).abs());
                    }
                }
            }
            assert!(worst_c < 1e-9 * scale, "corrected interior rows differ by {worst_c}");
            assert!(worst_p > 1e-6 * scale, "literal β^4 should differ");
        }
    }
}

#[test]
fn vieta_and_determinant_spot_checks() {
    let s = symbols(&long_step());
    assert!((s.lambda1.re - 8872.983346207417).abs() < 1e-8);
    assert!((s.lambda2.re - 1127.016653792583).abs() < 1e-8);
    assert!(s.quadratic_residual(s.lambda1) < 1e-12);
    assert!(s.determinant_residual(s.xi1) < 1e-10);
    assert!(s.determinant_residual(s.xi3) < 1e-10);
}

#[test]
fn bounds_absent_in_complex_regime() {
    let s = symbols(&short_step());
    assert!(nn_bounds(&s, &[0.5; 4], BoundGeometry::Line, true).provided().is_none());
    let s = symbols(&long_step());
    let b = nn_bounds(&s, &[0.5; 4], BoundGeometry::Line, true);
    let b = b.provided().expect("real regime");
    assert!(b.threshold > 0.0 && b.alpha > 0.0 && b.beta > 0.0);
}

#[test]
fn lemma_suites_pass() {
    let samples: Vec<f64> = (1..=2000).map(|k| k as f64 * 0.01).collect();
    let r = lemma_checks(0.4, 0.6, &samples);
    assert!(r.pass(), "{r:?}");
}

proptest! {
    #[test]
    fn dn_theta_half_bound_holds(a in 0.05f64..2.0, b in 0.05f64..2.0, eps in 1e-3f64..0.1, dt in 1e-8f64..1e-1) {
        let p = Params::new(eps, dt, 1.0, 0.5).unwrap();
        let s = symbols(&p);
        let m = dn_iteration_matrix(&s, a, b, 0.5);
        prop_assert!(m.spectral_radius() <= dn_contraction_bound(&p, a, b).factor + 1e-9);
    }

    #[test]
    fn nn_matrix_linear_in_theta(theta in 0.05f64..0.5, d in 0.05f64..1.0) {
        let s = symbols(&long_step());
        let w = [d, 1.3 * d, d, 0.8 * d];
        let m0 = nn_iteration_matrix(&s, &w, 0.0).unwrap();
        let m1 = nn_iteration_matrix(&s, &w, 1.0).unwrap();
        let mt = nn_iteration_matrix(&s, &w, theta).unwrap();
        for r in 0..mt.t.len() {
            for c in 0..mt.t.len() {
                let lin = (1.0 - theta) * m0.t[r][c] + theta * m1.t[r][c];
                prop_assert!((mt.t[r][c] - lin).abs() < 1e-8 * (1.0 + m1.t[r][c].abs()));
            }
        }
    }
}
