use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

use crate::circlemeasure::{
    cantor_stage, fs_coeff_oracle, fs_coeff_product, pisot_check, rajchman_classify, PisotVerdict, RatioParam,
};
use crate::peaks::{admissible_parameters, metric_sum, weak_to_peak, MetricSumMode};
use crate::support::{phi_lambda, sup_over_s0, CircleMeasure, DiskAtomSet, SearchConfig};
use crate::wiener::{mobius_phase, mobius_postcompose, reciprocal_one_plus, CoefficientSeries};

fn ratio() -> impl Strategy<Value = RatioParam> {
    (1u64..=12, 3u64..=40)
        .prop_filter("0 < p/q < 1/2", |(p, q)| 2 * p < *q)
        .prop_map(|(p, q)| RatioParam::rational(p, q).unwrap())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn series(max_len: usize) -> impl Strategy<Value = CoefficientSeries> {
    prop::collection::vec(complex(), 1..max_len).prop_map(CoefficientSeries::new)
}

fn sparse_series() -> impl Strategy<Value = CoefficientSeries> {
    (1usize..=64, prop::collection::vec((0usize..=64, complex()), 1..8)).prop_map(|(deg, terms)| {
        let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
        c[deg] = Complex64::new(0.5, -0.25);
        for (j, v) in terms {
            c[j % (deg + 1)] = v;
        }
        CoefficientSeries::new(c)
    })
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.999, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stages_nest_with_exact_lengths(xi in ratio(), n in 0u32..8) {
        let outer = cantor_stage(&xi, n).unwrap();
        let inner = cantor_stage(&xi, n + 1).unwrap();
        prop_assert_eq!(outer.len(), 1usize << n);
        prop_assert!(inner.is_nested_in(&outer));
        let exact = xi.exact().unwrap();
        let two = BigRational::from_integer(2.into());
        prop_assert_eq!(outer.total_length(), num_traits::pow(two * exact.clone(), n as usize));
        for (a, b) in &outer.intervals {
            prop_assert_eq!(b - a, num_traits::pow(exact.clone(), n as usize));
        }
    }

    #[test]
    fn product_agrees_with_oracle(xi in ratio(), n in -300i64..300, m in 6u32..12) {
        let p = fs_coeff_product(&xi, n, 1e-12).unwrap();
        let o = fs_coeff_oracle(&xi, m, n).unwrap();
        let bound = p.tail_bound + 2.0 * PI * n.abs() as f64 * xi.value().powi(m as i32);
        prop_assert!((p.value - o).norm() <= bound + 1e-12);
    }

    #[test]
    fn coefficients_are_bounded_and_symmetric(xi in ratio(), n in -5000i64..5000) {
        let p = fs_coeff_product(&xi, n, 1e-12).unwrap();
        prop_assert!(p.value.norm() <= 1.0);
        prop_assert_eq!(fs_coeff_product(&xi, -n, 1e-12).unwrap().value, p.value.conj());
        prop_assert_eq!(fs_coeff_product(&xi, 0, 1e-12).unwrap().value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rational_classification(p in 1u64..50, q in 3u64..200) {
        prop_assume!(2 * p < q && p.gcd(&q) == 1);
        let v = rajchman_classify(&RatioParam::rational(p, q).unwrap());
        prop_assert_eq!(v.verdict.is_rajchman(), Some(p != 1));
        prop_assert_eq!(rajchman_classify(&RatioParam::rational(p, q).unwrap()).verdict, v.verdict);
    }

    #[test]
    fn linear_integers_are_pisot(k in 2i64..100_000) {
        prop_assert_eq!(pisot_check(&[1, -k], 1e-9).unwrap().verdict, PisotVerdict::Pisot);
    }

    #[test]
    fn cached_norm_and_evaluation_bound(a in series(40), z in disk_point()) {
        let recomputed: f64 = a.coefficients().iter().map(|c| c.norm()).sum();
        prop_assert!((a.wiener_norm() - recomputed).abs() <= 1e-15 * recomputed.max(1.0));
        prop_assert!(a.evaluate(z).unwrap().norm() <= a.wiener_norm() * (1.0 + 1e-12));
        let b = a.sup_norm_estimate(256).unwrap();
        prop_assert!(b.lower <= b.upper && b.lower <= a.wiener_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn pairing_with_phi_is_evaluation(a in series(60), lam in disk_point()) {
        let phi = phi_lambda(lam, a.degree()).unwrap();
        let p = a.pairing(&phi.entries).unwrap();
        prop_assert!((p - a.evaluate(lam).unwrap()).norm() <= 1e-12 * a.wiener_norm().max(1.0));
        prop_assert!(p.norm() <= a.wiener_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn reciprocal_inverts(f in series(30), d in 1usize..80) {
        // Keep 1 + F well away from zero.
        let f = f.map(|c| c * 0.5 / f.wiener_norm().max(1.0));
        let h = reciprocal_one_plus(&f, d).unwrap();
        let mut one_plus = f.coefficients().to_vec();
        one_plus[0] += 1.0;
        let prod = crate::wiener::convolve(&one_plus, h.coefficients(), d);
        prop_assert!((prod[0] - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        for c in &prod[1..] {
            prop_assert!(c.norm() < 1e-10);
        }
    }

    #[test]
    fn mobius_vanishes_and_matches_direct(g in series(12), z in disk_point()) {
        let g = g.map(|c| c * 0.9 / g.wiener_norm());
        let g0 = g.coefficient(0);
        prop_assume!(g0.norm() > 1e-3);
        let out = mobius_postcompose(&g, 400).unwrap();
        prop_assert_eq!(out.coefficient(0), Complex64::new(0.0, 0.0));
        let z = z * 0.5;
        let w = g.evaluate(z).unwrap();
        let direct = mobius_phase(g0) * (w - g0) / (Complex64::new(1.0, 0.0) - g0.conj() * w);
        prop_assert!((out.evaluate(z).unwrap() - direct).norm() < 1e-9);
    }

    #[test]
    fn sup_over_s0_is_bracketed(a in sparse_series()) {
        let config = SearchConfig { angles: 1024, max_k: 20 };
        let s = sup_over_s0(&a, config).unwrap();
        let b = a.sup_norm_estimate(config.angles).unwrap();
        prop_assert!(s.best <= b.upper);
        prop_assert!(s.best >= b.lower - s.resolution);
    }

    #[test]
    fn atom_moments_are_bounded(points in prop::collection::vec((disk_point(), 0.01f64..1.0), 1..10), d in 0usize..40) {
        let total: f64 = points.iter().map(|p| p.1).sum();
        let mut weights: Vec<f64> = points.iter().map(|p| p.1 / total).collect();
        weights[0] += 1.0 - weights.iter().sum::<f64>();
        let set = DiskAtomSet::new(points.iter().map(|p| p.0).collect(), weights).unwrap();
        let y = set.moments(d);
        prop_assert!((y.entries[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let r = set.max_modulus();
        for (j, v) in y.entries.iter().enumerate() {
            prop_assert!(v.norm() <= r.powi(j as i32) * (1.0 + 1e-12) + 1e-15);
        }
    }

    #[test]
    fn arc_masses_sum_to_one(xi in ratio(), stage in 0u32..9, n in 2usize..300) {
        let masses = CircleMeasure::CantorStage { ratio: xi, stage }.arc_masses(n).unwrap();
        prop_assert!((masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(masses.iter().all(|m| *m >= 0.0));
    }

    #[test]
    fn metric_partial_sums_increase_to_closed_form(alpha in 0.51f64..0.95, t in 0.05f64..0.95) {
        let xi = t * admissible_parameters(alpha, 0.1).threshold;
        prop_assert!(admissible_parameters(alpha, xi).accepted);
        let closed = metric_sum(xi, alpha, MetricSumMode::ClosedForm);
        prop_assert!(closed.is_finite());
        let mut prev = 0.0;
        for k in 0..=20 {
            let s = metric_sum(xi, alpha, MetricSumMode::Partial(k));
            prop_assert!(s > prev && s <= closed * (1.0 + 1e-12));
            prev = s;
        }
        let r: f64 = 2.0 * xi.powf(1.0 - alpha);
        prop_assert!((closed - prev) <= closed * r.powi(21) * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn weak_to_peak_hits_one(beta in disk_point(), lam in disk_point()) {
        prop_assume!(beta.norm() > 0.05);
        // f = beta z^2 takes the value beta at z = 1.
        let f = CoefficientSeries::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), beta]);
        let g = weak_to_peak(&f, beta).unwrap();
        prop_assert!((g.evaluate(Complex64::new(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-12);
        prop_assert!(g.evaluate(lam).unwrap().norm() <= 1.0);
    }
}
