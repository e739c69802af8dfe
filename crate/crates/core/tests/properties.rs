//! Randomized invariants.

use std::f64::consts::PI;

use frabessel::fracbessel::{frac_derivative, potential_kernel, riesz_b_potential, FracOrder, PotentialScheme};
use frabessel::golden::format_general;
use frabessel::hankel::{hankel_forward, HankelIndex};
use frabessel::oracles::{oracle_gaussian_potential, oracle_j_derivative_gamma2};
use frabessel::quadrature::{gauss_laguerre_rule, integrate_laguerre};
use frabessel::specfun::{
    gamma_fn, gauss_2f1, gauss_2f1_euler, gauss_2f1_series, kummer_1f1, normalized_bessel_j, BesselOrder, HyperParams,
};
use frabessel::translation::translate_gaussian;
use frabessel::{GammaWeight, TestFunction, TranslationMethod};
use proptest::prelude::*;

fn w(g: f64) -> GammaWeight {
    GammaWeight::new(g).unwrap()
}

fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    (a - b).abs() <= abs + rel * b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_doubling(x in 0.05f64..20.0) {
        let lhs = gamma_fn(2.0 * x).unwrap();
        let rhs = 2f64.powf(2.0 * x - 1.0) / PI.sqrt() * gamma_fn(x).unwrap() * gamma_fn(x + 0.5).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12, 0.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn hypergeometric_series_and_euler_agree(
        a in -2.0f64..2.0, c in 0.6f64..4.0, bf in 0.05f64..0.95, z in 0.5f64..0.89,
    ) {
        let b = bf * c;
        prop_assume!(c - a - b > 0.05);
        let p = HyperParams::new(a, b, c, z).unwrap();
        let s = gauss_2f1_series(p).unwrap();
        let e = gauss_2f1_euler(p).unwrap();
        prop_assert!(close(s, e, 1e-9, 1e-12), "series {s} vs integral {e}");
        prop_assert!(close(gauss_2f1(p).unwrap(), s, 1e-9, 1e-12));
    }

    #[test]
    fn terminating_hypergeometric(m in 0u32..8, b in -3.0f64..3.0, c in 0.3f64..5.0, z in -3.0f64..0.99) {
        let a = -(m as f64);
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..m {
            let k = k as f64;
            term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
            sum += term;
        }
        let v = gauss_2f1(HyperParams::new(a, b, c, z).unwrap()).unwrap();
        prop_assert!(close(v, sum, 1e-10, 1e-12), "{v} vs {sum}");
    }

    #[test]
    fn kummer_transformation(a in -3.0f64..3.0, b in 0.2f64..4.0, z in -8.0f64..8.0) {
        let lhs = kummer_1f1(a, b, z).unwrap();
        let rhs = z.exp() * kummer_1f1(b - a, b, -z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn bessel_eigenfunction(g in 0.0f64..4.0, lambda in 0.2f64..3.0, x in 0.3f64..6.0) {
        let order = BesselOrder::from_gamma(g).unwrap();
        let j = |t: f64| normalized_bessel_j(order, lambda * t).unwrap();
        let h = 1e-3;
        let d2 = (j(x + h) - 2.0 * j(x) + j(x - h)) / (h * h);
        let d1 = (j(x + h) - j(x - h)) / (2.0 * h);
        let lhs = d2 + g / x * d1;
        prop_assert!((lhs + lambda * lambda * j(x)).abs() < 1e-5, "{lhs} vs {}", -lambda * lambda * j(x));
    }

    #[test]
    fn laguerre_polynomial_exactness(n in 1usize..16, coeffs in prop::collection::vec(-1.0f64..1.0, 1..32)) {
        let deg = coeffs.len().min(2 * n);
        let coeffs = &coeffs[..deg];
        let rule = gauss_laguerre_rule(n).unwrap();
        let p = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let v = integrate_laguerre(|x| p(x) * (-x).exp(), &rule, None).unwrap().value;
        let mut exact = 0.0;
        let mut scale = 0.0;
        let mut fact = 1.0;
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            exact += c * fact;
            scale += c.abs() * fact;
        }
        prop_assert!((v - exact).abs() <= 1e-11 * scale, "{v} vs {exact}");
    }

    #[test]
    fn gaussian_hankel_image(g in 0.0f64..4.0, xi in 0.0f64..6.0) {
        let idx = HankelIndex::new(g).unwrap();
        let b = 0.5 * (g + 1.0);
        let want = gamma_fn(b).unwrap() / 2.0 * (-xi * xi / 4.0).exp();
        let got = hankel_forward(&TestFunction::gaussian(1.0).unwrap(), xi, idx, 48).unwrap().value;
        prop_assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn potential_kernel_symmetric(x in 0.01f64..5.0, y in 0.01f64..5.0, g in 0.0f64..4.0, af in 0.05f64..0.95) {
        let alpha = af * 0.5 * (g + 1.0);
        let a = potential_kernel(x, y, alpha, w(g)).unwrap();
        let b = potential_kernel(y, x, alpha, w(g)).unwrap();
        prop_assert!(close(a, b, 1e-12, 0.0), "{a} vs {b}");
    }

    #[test]
    fn format_general_is_idempotent(v in -1e4f64..1e4, width in 6usize..14) {
        let s = format_general(v, width);
        let again = format_general(s.parse().unwrap(), width);
        prop_assert_eq!(&s, &again);
        prop_assert!(s.len() <= width.max(s.split('.').next().unwrap().len()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn translation_symmetry_and_methods_agree(x in 0.05f64..3.0, y in 0.05f64..3.0, g in 0.3f64..4.0) {
        let f = TestFunction::gaussian(1.0).unwrap();
        let closed = translate_gaussian(x, y, w(g)).unwrap();
        prop_assert!(close(closed, translate_gaussian(y, x, w(g)).unwrap(), 1e-12, 1e-15));
        for m in [TranslationMethod::Trig, TranslationMethod::UnitInterval, TranslationMethod::Kernel] {
            let v = frabessel::translation::translate(&f, x, y, w(g), m, 1e-11).unwrap().value;
            prop_assert!((v - closed).abs() < 1e-8, "{m:?}: {v} vs {closed}");
        }
    }

    #[test]
    fn translation_product_formula(x in 0.05f64..4.0, y in 0.05f64..4.0, g in 0.3f64..4.0, lambda in 0.3f64..2.0) {
        let nu = 0.5 * (g - 1.0);
        let j = TestFunction::bessel_j(nu, lambda).unwrap();
        let order = BesselOrder::new(nu).unwrap();
        let want = normalized_bessel_j(order, lambda * x).unwrap() * normalized_bessel_j(order, lambda * y).unwrap();
        let v = frabessel::translation::translate(&j, x, y, w(g), TranslationMethod::Trig, 1e-11).unwrap().value;
        prop_assert!((v - want).abs() < 1e-8, "{v} vs {want}");
    }

    #[test]
    fn translation_without_weight_is_even_average(x in 0.0f64..3.0, y in 0.0f64..3.0) {
        let f = TestFunction::gaussian(1.0).unwrap();
        let v = frabessel::translation::translate(&f, x, y, w(0.0), TranslationMethod::ClosedFormAuto, 1e-12).unwrap().value;
        let want = 0.5 * ((-(x + y) * (x + y)).exp() + (-(x - y) * (x - y)).exp());
        prop_assert!((v - want).abs() < 1e-14, "{v} vs {want}");
    }

    #[test]
    fn kernel_scheme_matches_closed_form(x in 0.05f64..4.0, g in 0.2f64..3.5, af in 0.1f64..0.9) {
        let alpha = af * 0.5 * (g + 1.0);
        let order = FracOrder::potential(alpha, w(g)).unwrap();
        let f = TestFunction::gaussian(1.0).unwrap();
        let v = riesz_b_potential(&f, x, order, w(g), PotentialScheme::Kernel).unwrap().value;
        let want = oracle_gaussian_potential(x, alpha, g).unwrap();
        prop_assert!((v - want).abs() < 1e-6, "{v} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn derivative_matches_closed_form(
        alpha in prop_oneof![0.1f64..0.45, 0.55f64..0.9],
        x in 0.05f64..6.0,
    ) {
        let j = TestFunction::bessel_j(0.5, 1.0).unwrap();
        let v = frac_derivative(&j, x, FracOrder::derivative(alpha).unwrap(), w(2.0)).unwrap();
        let want = oracle_j_derivative_gamma2(x, alpha).unwrap();
        prop_assert!((v.value - want).abs() <= 1e-3 * want.abs().max(1e-2), "{} vs {want}", v.value);
    }
}
