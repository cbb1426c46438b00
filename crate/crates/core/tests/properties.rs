use hausdorff::analysis::{muckenhoupt_quotient, sign_lemma_constants, Part};
use hausdorff::holo_expr::HoloExpr;
use hausdorff::kernels::{moment, tail_moment};
use hausdorff::spaces::{bergman_norm, power_integral, HalfPlaneFn};
use hausdorff::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = HoloExpr> {
    prop_oneof![
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| HoloExpr::constant(a, b)),
        (0.2..3.0f64, -1.0..1.0f64, 0.1..4.0f64)
            .prop_map(|(s, si, c)| HoloExpr::power_shift(Complex64::new(s, si), c).unwrap()),
    ]
}

fn expr() -> impl Strategy<Value = HoloExpr> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(HoloExpr::sum),
            prop::collection::vec(inner.clone(), 1..3).prop_map(HoloExpr::product),
            (-2.0..2.0f64, -2.0..2.0f64, inner.clone()).prop_map(|(a, b, e)| HoloExpr::scale(Complex64::new(a, b), e)),
            (0.1..5.0f64, inner).prop_map(|(l, e)| e.dilate(l).unwrap()),
        ]
    })
}

fn upper_point() -> impl Strategy<Value = Complex64> {
    (-5.0..5.0f64, 0.05..5.0f64).prop_map(|(x, y)| Complex64::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grammar_round_trips(e in expr(), z in upper_point()) {
        let back: HoloExpr = e.to_string().parse().unwrap();
        let (a, b) = (e.eval(z).unwrap(), back.eval(z).unwrap());
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn log_eval_agrees_with_eval(e in expr(), z in upper_point()) {
        let v = e.eval(z).unwrap();
        let w = Complex64::new(z.norm().ln(), z.arg());
        let l = HoloExpr::log_eval(&e, w).exp();
        prop_assert!((v - l).norm() <= 1e-9 * v.norm().max(1e-12));
    }

    #[test]
    fn derivative_matches_difference_quotient(e in expr(), z in upper_point()) {
        let h = 1e-6 * z.im;
        let d = e.differentiate().eval(z).unwrap();
        let fd = (e.eval(z + h).unwrap() - e.eval(z - h).unwrap()) / (2.0 * h);
        prop_assert!((d - fd).norm() <= 1e-4 * d.norm().max(1.0));
    }

    #[test]
    fn operator_is_linear(a in -2.0..2.0f64, b in -2.0..2.0f64, z in upper_point(), nu in 1.2..4.0f64) {
        let q = QuadSpec::default();
        let k = Kernel::cesaro_like(nu).unwrap();
        let f = HoloExpr::pshift(1.0, 1.0).unwrap();
        let g = HoloExpr::pshift(2.5, 0.5).unwrap();
        let comb = HoloExpr::sum(vec![
            HoloExpr::scale(Complex64::new(a, 0.0), f.clone()),
            HoloExpr::scale(Complex64::new(b, 0.0), g.clone()),
        ]);
        let lhs = apply_complex(&k, &comb, z, &q).unwrap().value;
        let rhs = apply_complex(&k, &f, z, &q).unwrap().value * a + apply_complex(&k, &g, z, &q).unwrap().value * b;
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()));
    }

    #[test]
    fn operator_commutes_with_dilation(lambda in 0.1..10.0f64, z in upper_point()) {
        let q = QuadSpec::default();
        let k = Kernel::generalized_cesaro(1.5).unwrap();
        let f = HoloExpr::pshift(1.2, 1.0).unwrap();
        let lhs = apply_complex(&k, &f.dilate(lambda).unwrap(), z, &q).unwrap().value;
        let rhs = apply_complex(&k, &f, z * lambda, &q).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm());
    }

    #[test]
    fn moment_splits_into_core_and_tails(delta in 0.01..0.9f64, nu in 1.6..4.0f64) {
        let q = QuadSpec::with_tolerances(1e-12, 0.0);
        let sp = SpaceParams::bergman(2.0, 1.0).unwrap();
        let k = Kernel::cesaro_like(nu).unwrap();
        let whole = moment(&k, &sp, &q).value;
        let core = moment(&k.truncate(delta).unwrap(), &sp, &q).value;
        let tail = tail_moment(&k, &sp, delta, &q).value;
        prop_assert!((whole - core - tail).abs() <= 1e-10 * whole);
    }

    #[test]
    fn sign_constants_are_in_range(p in 1.0..6.0f64, alpha in -0.9..8.0f64) {
        let c = sign_lemma_constants(p, alpha).unwrap();
        prop_assert!(c.eps_pa > 0.0 && c.eps_pa < std::f64::consts::FRAC_PI_2);
        prop_assert!(c.c_pa > 0.0 && c.c_pa <= 1.0);
        if c.part == Part::Re {
            prop_assert_eq!(c.c_pa, 0.5);
        }
    }

    #[test]
    fn muckenhoupt_quotient_is_at_least_one(alpha in -0.9..0.9f64, q in 1.95..4.0f64, a in -5.0..5.0f64, len in 0.01..10.0f64) {
        let v = muckenhoupt_quotient(alpha, q, a, a + len).unwrap();
        prop_assert!(!v.diverged);
        prop_assert!(v.value >= 1.0 - 1e-12);
    }

    #[test]
    fn power_integral_is_additive(a in -4.0..-0.1f64, m in 0.1..2.0f64, b in 2.1..6.0f64, g in -0.9..3.0f64) {
        let whole = power_integral(a, b, g).unwrap();
        let parts = power_integral(a, m, g).unwrap() + power_integral(m, b, g).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-12 * whole);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bergman_norm_scales_under_dilation(lambda in 0.2..5.0f64) {
        // ‖f(λ·)‖_{A^p_α} = λ^{-(1+α)/p} ‖f‖
        let q = QuadSpec::default();
        let f = HoloExpr::pshift(2.0, 1.0).unwrap();
        let n = bergman_norm(&f, 2.0, 1.0, &q).unwrap().value;
        let nl = bergman_norm(&f.dilate(lambda).unwrap(), 2.0, 1.0, &q).unwrap().value;
        prop_assert!((nl - n / lambda).abs() <= 1e-8 * n);
    }

    #[test]
    fn image_log_form_is_consistent(z in upper_point()) {
        let q = QuadSpec::with_tolerances(1e-11, 0.0);
        let k = Kernel::stieltjes(1.5, 3.0).unwrap();
        let f = HoloExpr::pshift(0.7, 1.0).unwrap();
        let img = HausdorffImage::new(k.clone(), f.clone(), q);
        let direct = apply_complex(&k, &f, z, &q).unwrap().value;
        prop_assert!((img.eval(z) - direct).norm() <= 1e-8 * direct.norm());
    }
}
