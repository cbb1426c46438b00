mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use common::*;
use hausdorff::kernels::{log_moment, moment, moment_with_exponent, tail_moment};
use hausdorff::operators::{apply_real_complex, hilbert_transform, LatticeHilbert};
use hausdorff::quadrature::integrate;
use hausdorff::spaces::{bergman_norm, default_y_grid, dirichlet_norm, hardy_norm, norm_in};
use hausdorff::*;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn lanczos_oracle_sanity() {
    assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-13);
    assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-13);
    assert_relative_eq!(beta(2.0, 3.0), 1.0 / 12.0, max_relative = 1e-13);
}

#[test]
fn bergman_norms_match_beta_gamma_form() {
    let q = QuadSpec::with_tolerances(1e-11, 0.0);
    for (s, p, alpha) in [(2.0, 2.0, 1.0), (1.3, 3.0, 0.5), (3.5, 1.0, 2.0), (1.0 + 1.0 / 64.0, 2.0, 1.0)] {
        let f = HoloExpr::pshift(s, 1.0).unwrap();
        let n = bergman_norm(&f, p, alpha, &q).unwrap();
        assert!(rel_err(n.value, bergman_power_shift_norm(s, p, alpha)) < 1e-8, "{s} {p} {alpha}: {n:?}");
    }
}

#[test]
fn hardy_norms_match_beta_form() {
    let q = QuadSpec::with_tolerances(1e-11, 0.0);
    for (s, p, alpha) in [(1.0, 2.0, 0.0), (0.8, 3.0, 0.5), (1.2, 1.5, -0.5)] {
        let f = HoloExpr::pshift(s, 1.0).unwrap();
        let n = hardy_norm(&f, p, alpha, &default_y_grid(), &q).unwrap();
        assert!(rel_err(n.value, hardy_power_shift_norm(s, p, alpha)) < 1e-8, "{s} {p} {alpha}: {n:?}");
    }
}

#[test]
fn dirichlet_norm_of_power_shift() {
    // f = (z+i)^{-s}: f′ = -s (z+i)^{-s-1}.
    let q = QuadSpec::default();
    let s = 0.5;
    let n = dirichlet_norm(&HoloExpr::pshift(s, 1.0).unwrap(), &q);
    assert!(rel_err(n.value, s * bergman_power_shift_norm(s + 1.0, 2.0, 1.0)) < 1e-8);
    let sp = SpaceParams::dirichlet();
    assert_relative_eq!(norm_in(&HoloExpr::constant(3.0, 1.0), &sp, &q).unwrap().value, 0.0);
}

#[test]
fn catalog_moments_match_closed_forms() {
    let q = QuadSpec::with_tolerances(1e-12, 0.0);
    for (nu, e) in [(2.0, 0.0), (3.5, 0.25), (1.5, -0.5)] {
        let m = moment_with_exponent(&Kernel::cesaro_like(nu).unwrap(), e, &q);
        assert!(rel_err(m.value, 1.0 / (nu - e - 1.0)) < 1e-10);
    }
    for (b, e) in [(1.0, -0.5), (2.5, -0.25), (0.5, -1.0)] {
        let m = moment_with_exponent(&Kernel::generalized_cesaro(b).unwrap(), e, &q);
        assert!(rel_err(m.value, b * beta(-e, b)) < 1e-9, "{b} {e} {m:?}");
    }
    for (b, mu, e) in [(0.5, 2.0, 0.0), (1.0, 2.5, 0.5), (2.0, 3.0, -1.0)] {
        let m = moment_with_exponent(&Kernel::stieltjes(b, mu).unwrap(), e, &q);
        assert!(rel_err(m.value, beta(b + e, mu - b - e)) < 1e-9, "{b} {mu} {e} {m:?}");
    }
    let sp = SpaceParams::real_lp(2.0, 0.0).unwrap();
    assert!(rel_err(moment(&Kernel::Hardy, &sp, &q).value, 2.0) < 1e-10);
    // ∫_1^∞ ln t · t^{-3} dt = 1/4
    let (lm, mass) = log_moment(&Kernel::cesaro_like(2.0).unwrap(), &q);
    assert!(rel_err(lm.value, 0.25) < 1e-10 && rel_err(mass.value, 0.5) < 1e-10);
    let sp = SpaceParams::bergman(2.0, 1.0).unwrap();
    let tail = tail_moment(&Kernel::cesaro_like(2.0).unwrap(), &sp, 0.01, &q);
    assert!(rel_err(tail.value, 0.01) < 1e-9);
}

#[test]
fn constants_are_mapped_to_kernel_mass() {
    let q = QuadSpec::default();
    let one = HoloExpr::constant(1.0, 0.0);
    for k in [Kernel::cesaro_like(1.0).unwrap(), Kernel::generalized_cesaro(2.0).unwrap(), Kernel::stieltjes(1.5, 3.0).unwrap()] {
        let mass = moment_with_exponent(&k, -1.0, &q).value;
        for z in [c(0.0, 1.0), c(5.0, 0.01), c(-2.0, 7.0)] {
            let v = apply_complex(&k, &one, z, &q).unwrap().value;
            assert!((v - mass).norm() < 1e-9 * mass, "{k:?} {z}");
        }
    }
}

#[test]
fn cesaro_like_matches_direct_contour_form() {
    // C_ν f(z) = z^{-ν} ∫_0^z f(ζ) ζ^{ν-1} dζ = ∫_0^1 f(sz) s^{ν-1} ds.
    let q = QuadSpec::with_tolerances(1e-12, 0.0);
    let f = HoloExpr::parse("sum(pshift(1.5,0,1),scale(2,1,pshift(2,0,0.5)))").unwrap();
    for nu in [1.0, 2.0, 3.5] {
        let k = Kernel::cesaro_like(nu).unwrap();
        for z in [c(0.3, 0.9), c(-4.0, 0.2)] {
            let direct_re = integrate(|s: f64| (f.eval(z * s + c(0.0, 1e-300)).unwrap() * s.powf(nu - 1.0)).re, 0.0, 1.0, &[], &q);
            let direct_im = integrate(|s: f64| (f.eval(z * s + c(0.0, 1e-300)).unwrap() * s.powf(nu - 1.0)).im, 0.0, 1.0, &[], &q);
            let h = apply_complex(&k, &f, z, &q).unwrap().value;
            assert!((h - c(direct_re.value, direct_im.value)).norm() < 1e-10 * h.norm(), "{nu} {z}");
        }
    }
}

#[test]
fn generalized_cesaro_matches_beta_average() {
    // 𝓗_φ g(x) = β ∫_0^1 g(tx)(1-t)^{β-1} dt.
    let q = QuadSpec::with_tolerances(1e-12, 0.0);
    let g = |x: f64| (x * x).exp().recip() * (1.0 + x);
    for b in [0.5, 2.0, 3.0] {
        let k = Kernel::generalized_cesaro(b).unwrap();
        for x in [-1.5, 0.7, 4.0] {
            // t = 1 - v² removes the endpoint singularity.
            let direct = integrate(|v: f64| 2.0 * b * g((1.0 - v * v) * x) * v.powf(2.0 * b - 1.0), 0.0, 1.0, &[], &q).value;
            let h = apply_real(&k, g, x, &[], &q).value;
            assert!((h - direct).abs() < 1e-9 * direct.abs(), "{b} {x}: {h} {direct}");
        }
    }
    let r = apply_real(&Kernel::generalized_cesaro(2.0).unwrap(), |x| x, 1.0, &[], &q);
    assert!(rel_err(r.value, 1.0 / 3.0) < 1e-10);
}

#[test]
fn s_a_matches_direct_integral() {
    // S_a g(x) = ∫_0^∞ g(tx) a(t) dt with a(t) = t^{μ-β}/(1+t)^μ
    // has kernel t^{β-1}(1+t)^{-μ}.
    let q = QuadSpec::with_tolerances(1e-12, 0.0);
    let (b, mu) = (1.5, 3.0);
    let k = Kernel::stieltjes(b, mu).unwrap();
    let g = |x: f64| 1.0 / (1.0 + x * x);
    for x in [0.5, 2.0, -3.0] {
        let direct = integrate(|t: f64| g(t * x) * t.powf(mu - b) / (1.0 + t).powf(mu), 0.0, f64::INFINITY, &[1.0], &q).value;
        let h = apply_real(&k, g, x, &[], &q).value;
        assert!((h - direct).abs() < 1e-9 * direct, "{x}: {h} {direct}");
    }
}

#[test]
fn hardy_kernel_is_the_averaging_operator() {
    let q = QuadSpec::default();
    for x in [0.5, 1.0, 2.0] {
        assert!((apply_real(&Kernel::Hardy, |u| u, x, &[], &q).value - x / 2.0).abs() < 1e-8);
    }
    // 𝓗 [(1+x²)^{-1}] = arctan x / x
    for x in [0.3, 3.0] {
        let v = apply_real(&Kernel::Hardy, |u| 1.0 / (1.0 + u * u), x, &[], &q).value;
        assert!((v - x.atan() / x).abs() < 1e-10);
    }
}

#[test]
fn truncation_converges_within_tail_bound() {
    let q = QuadSpec::with_tolerances(1e-10, 0.0);
    let f = HoloExpr::pshift(1.0, 1.0).unwrap();
    let sup = 1.0; // |1/(z+i)| ≤ 1 on the half-plane
    for k in [Kernel::cesaro_like(2.0).unwrap(), Kernel::generalized_cesaro(1.0).unwrap()] {
        let tail_over_t = moment_with_exponent(&k, -1.0, &q).value - moment_with_exponent(&k.truncate(1e-3).unwrap(), -1.0, &q).value;
        let z = c(0.5, 0.5);
        let d = (apply_complex(&k, &f, z, &q).unwrap().value - apply_complex(&k.truncate(1e-3).unwrap(), &f, z, &q).unwrap().value).norm();
        assert!(d <= sup * tail_over_t + 10.0 * 1e-10, "{k:?}: {d} vs {tail_over_t}");
    }
}

#[test]
fn hilbert_transform_examples() {
    let q = QuadSpec::default();
    let g = |x: f64| 1.0 / (1.0 + x * x);
    for (x, r) in [0.0, 1.0, 3.0].iter().zip(hilbert_transform(g, &[0.0, 1.0, 3.0], &q)) {
        assert!((r.value - x / (1.0 + x * x)).abs() < 1e-9);
    }
    let odd = hilbert_transform(|y: f64| y * (-y * y).exp(), &[0.0], &q)[0].value;
    let even = hilbert_transform(|y: f64| (-y * y).exp(), &[0.0], &q)[0].value;
    assert!(odd.abs() > 0.1 && even.abs() < 1e-14);
    // H[H g] = -g, using the exact inner transform x/(1+x²).
    let hg = |x: f64| x / (1.0 + x * x);
    let lat = LatticeHilbert::default();
    for x in [-3.0, -1.0, 0.0, 0.5, 2.0, 3.0] {
        let v = hilbert_transform(hg, &[x], &q)[0].value;
        assert!((v + g(x)).abs() < 1e-4, "{x}: {v}");
        assert!((lat.apply(hg, x) - v).abs() < 1e-6);
    }
    // H[arctan x / x] = ln(1+x²)/(2x)
    let at = |x: f64| if x == 0.0 { 1.0 } else { x.atan() / x };
    for x in [0.5, 2.0] {
        let v = hilbert_transform(at, &[x], &q)[0].value;
        assert!((v - (1.0 + x * x).ln() / (2.0 * x)).abs() < 1e-8, "{x}: {v}");
        assert!((lat.apply(at, x) - v).abs() < 1e-6);
    }
}

#[test]
fn boundary_operator_on_power_shift() {
    // (ℋf)* computed two ways at a boundary point.
    let q = QuadSpec::with_tolerances(1e-11, 0.0);
    let f = HoloExpr::pshift(1.0, 1.0).unwrap();
    let k = Kernel::cesaro_like(2.0).unwrap();
    let star = |x: f64| f.eval_closed(c(x, 0.0));
    let img = HausdorffImage::new(k.clone(), f.clone(), q);
    use hausdorff::spaces::HalfPlaneFn;
    for x in [-2.0, 0.4, 3.0] {
        let a = apply_real_complex(&k, star, x, &[], &q).value;
        let b = img.eval(c(x, 0.0));
        assert!((a - b).norm() < 1e-9, "{x}: {a} {b}");
    }
}
