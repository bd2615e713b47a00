mod common;

use common::{erf_quadrature, erf_series, fresnel_tail};
use landau_zener::tails::tail_integral_matrix;
use landau_zener::{erf_complex, eta, xi, LZParams};
use num_complex::Complex64 as C;
use std::f64::consts::{FRAC_PI_4, PI};

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

#[test]
fn oracles_agree_with_each_other() {
    for z in [C::new(0.3, 0.2), C::new(-1.2, 0.9), C::new(2.0, 2.0), C::new(0.0, 2.5)] {
        assert!(rel(erf_quadrature(z), erf_series(z)) < 1e-12, "{z}");
    }
}

#[test]
fn erf_matches_quadrature_on_a_grid() {
    for i in -8..=8 {
        for j in -8..=8 {
            let z = C::new(i as f64 * 0.75, j as f64 * 0.75);
            let got = erf_complex(z).unwrap().value;
            let want = erf_quadrature(z);
            assert!(rel(got, want) < 1e-10, "z={z} got={got} want={want}");
        }
    }
}

#[test]
fn erf_matches_series_near_origin() {
    for k in 0..64 {
        let theta = k as f64 * PI / 32.0;
        for r in [0.05, 0.5, 1.3, 2.1, 2.9] {
            let z = C::from_polar(r, theta);
            assert!(rel(erf_complex(z).unwrap().value, erf_series(z)) < 1e-12, "z={z}");
        }
    }
}

#[test]
fn erf_on_diagonal_rays() {
    for r in [0.5, 1.0, 3.0, 4.0, 6.0, 8.0, 10.0, 14.0] {
        for theta in [FRAC_PI_4, -FRAC_PI_4, 3.0 * FRAC_PI_4] {
            let z = C::from_polar(r, theta);
            let got = erf_complex(z).unwrap();
            let want = erf_quadrature(z);
            assert!(rel(got.value, want) < 1e-10, "z={z}");
            assert!((got.value - want).norm() <= got.est_abs_error.max(1e-13) * 50.0, "z={z}");
        }
    }
}

#[test]
fn eta_xi_match_fresnel_quadrature() {
    for (v, hbar) in [(PI, 1.0), (2.0, 0.5), (0.7, 1.3)] {
        let a = v / hbar;
        for t in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0] {
            let e = eta(t, v, hbar).unwrap();
            let x = xi(t, v, hbar).unwrap();
            assert!((e - fresnel_tail(t, a, 1.0)).norm() < 1e-9, "eta t={t} v={v} hbar={hbar}");
            assert!((x - fresnel_tail(t, a, -1.0)).norm() < 1e-9, "xi t={t} v={v} hbar={hbar}");
        }
    }
}

#[test]
fn tail_matrix_matches_quadrature() {
    let i = C::new(0.0, 1.0);
    for (delta, hbar) in [(1.0, 1.0), (2.0, 1.0), (0.5, 0.8)] {
        let p = LZParams::new(PI, delta, hbar).unwrap();
        let m = tail_integral_matrix(5.0, &p).unwrap();
        let a = PI / hbar;
        // ∫_{−∞}^{−5} V′_I = δ [[0, ∫e^{+ias²}], [∫e^{−ias²}, 0]]
        let upper = -i / hbar * delta * fresnel_tail(5.0, a, -1.0);
        let lower = -i / hbar * delta * fresnel_tail(5.0, a, 1.0);
        assert!((m.get(0, 1) - upper).norm() < 1e-8);
        assert!((m.get(1, 0) - lower).norm() < 1e-8);
        assert_eq!(m.get(0, 0), C::new(1.0, 0.0));
        assert_eq!(m.get(1, 1), C::new(1.0, 0.0));
    }
}
