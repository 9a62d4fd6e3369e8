//! Reference values computed independently at 40 digits (direct product
//! with 400 factors, adaptive quadrature for the weight moments) and frozen
//! here.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::peaks::{herglotz_weight_moments, metric_sum, MetricSumMode, PeakParams};
use crate::{fs_coeff_oracle, fs_coeff_product, pisot_check, PisotVerdict, RatioParam};

const SIGMA: &[(u64, u64, i64, f64)] = &[
    (1, 3, 1, 0.37143735670876563505),
    (1, 3, 2, -0.076541712728668360837),
    (1, 3, 3, 0.37143735670876563505),
    (1, 3, 7, -0.0042429424880476373104),
    (1, 3, 27, 0.37143735670876563505),
    (1, 3, 100, -0.0056106939648482179193),
    (1, 4, 1, 0.58115392142938681918),
    (1, 4, 2, 0.0),
    (1, 4, 3, 0.12389481707696233895),
    (1, 4, 7, -0.19486225967601775723),
    (1, 4, 27, -0.24567092309577747622),
    (1, 4, 100, 0.1983030465099063723),
    (2, 5, 1, 0.21323717168701189088),
    (2, 5, 2, -0.040397646465027415278),
    (2, 5, 3, 0.29427715188363126349),
    (2, 5, 7, 0.13822258568641383249),
    (2, 5, 27, -0.0032169458721958351086),
    (2, 5, 100, -0.0072701247569993081941),
    (2, 13, 1, 0.81078868442865808728),
    (2, 13, 2, 0.38525996118180939027),
    (2, 13, 3, 0.039901492251350563286),
    (2, 13, 7, 0.84237820128984454299),
    (2, 13, 27, -0.0050676525385601584944),
    (2, 13, 100, 0.19845818176694502276),
];

#[test]
fn product_formula_matches_reference() {
    for &(p, q, n, expected) in SIGMA {
        let xi = RatioParam::rational(p, q).unwrap();
        let v = fs_coeff_product(&xi, n, 1e-12).unwrap();
        let err = (v.value.re - expected).abs();
        assert!(
            err <= v.tail_bound + 1e-14,
            "{p}/{q} n={n}: {err:e} > {:e}",
            v.tail_bound
        );
        assert_eq!(v.value.im, 0.0);
        let neg = fs_coeff_product(&xi, -n, 1e-12).unwrap();
        assert_eq!(neg.value, v.value.conj());
    }
}

#[test]
fn oracle_matches_reference() {
    for &(p, q, n, expected) in SIGMA {
        let xi = RatioParam::rational(p, q).unwrap();
        let m = 16;
        let v = fs_coeff_oracle(&xi, m, n).unwrap();
        let bound = 2.0 * PI * n as f64 * xi.value().powi(m as i32);
        assert!(
            (v - Complex64::new(expected, 0.0)).norm() <= bound + 1e-12,
            "{p}/{q} n={n}"
        );
    }
}

#[test]
fn pisot_roots_match_reference() {
    let golden = pisot_check(&[1, -1, -1], 1e-9).unwrap();
    assert_eq!(golden.verdict, PisotVerdict::Pisot);
    assert!((golden.dominant_root.unwrap() - 1.6180339887498948482).abs() < 1e-15);
    assert!((golden.conjugate_moduli[0] - 0.6180339887498948482).abs() < 1e-15);

    let plastic = pisot_check(&[1, 0, -1, -1], 1e-9).unwrap();
    assert_eq!(plastic.verdict, PisotVerdict::Pisot);
    assert!((plastic.dominant_root.unwrap() - 1.3247179572447460260).abs() < 1e-15);
    let modulus = Complex64::new(-0.66235897862237301298, 0.56227951206230124390).norm();
    for m in &plastic.conjugate_moduli {
        assert!((m - modulus).abs() < 1e-15);
    }

    let r = pisot_check(&[1, -3, 1], 1e-9).unwrap();
    assert!((r.dominant_root.unwrap() - 2.6180339887498948482).abs() < 1e-15);
}

#[test]
fn weight_constants_match_reference() {
    let p = PeakParams::new(0.6, RatioParam::rational(2, 13).unwrap(), 1, 8);
    let w = herglotz_weight_moments(&p).unwrap();
    assert!((w.central_gap_mass - 3.2709783447555444135).abs() < 1e-14);
    assert!((w.total_mass - 60.509034189008167706).abs() < 1e-12);
    // After u = s^(1 - alpha) the integrand still carries u^(1/(1 - alpha)),
    // which is not analytic at 0; the 32-point rule converges algebraically
    // and lands near 1e-11 here.
    assert!((w.c0() - 3.2709783447555444135).abs() < 1e-10);
    assert!((w.moments[1].re - 0.062806253548998441489).abs() < 1e-10);
    assert!((w.moments[5].re - 0.76731724999405340085).abs() < 1e-10);
    assert!(w.moments[1].im.abs() < 1e-14);
}

#[test]
fn metric_sum_matches_reference() {
    let closed = metric_sum(0.2, 0.5, MetricSumMode::ClosedForm);
    assert!((closed - 7.3370849613451714722).abs() < 1e-13);
}
