//! Norms on weighted Bergman, Hardy and Dirichlet spaces of the upper
//! half-plane and on power-weighted `L^p` of the line.
//!
//! Half-plane norms are computed in log-polar coordinates `z = e^w`,
//! `w = ρ + iθ`, from the log-modulus `Re ln f(e^w)`. Test functions close to
//! the critical decay rate carry a substantial share of their norm at radii
//! far beyond the floating-point range, which this representation reaches
//! without overflow.

mod measure;
mod trace;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holo_expr::HoloExpr;
use crate::kernels::{Space, SpaceParams};
use crate::quadrature::{
    integrate_line_weighted_with, integrate_log_axis, integrate_sin_weighted, InnerTracker, IntegralResult, LineLattice,
    QuadSpec,
};

pub use measure::{
    doubling_ratio, pointwise_bound_report, power_integral, weighted_ball_measure, write_csv, CsvRow, PointwiseReport,
    PointwiseRow, WeightedBall,
};
pub use trace::{boundary_trace, BoundaryTrace};

/// A function on the closed upper half-plane, holomorphic inside.
pub trait HalfPlaneFn {
    /// `ln f(e^w)` for `w = ρ + iθ`, `θ ∈ [0, π]`. Only the real part is
    /// required to be branch independent.
    fn log_eval(&self, w: Complex64) -> Complex64;

    /// `f(z)` for `Im z ≥ 0`.
    fn eval(&self, z: Complex64) -> Complex64 {
        self.log_eval(to_log(z)).exp()
    }

    /// Boundary value `f*(x)` when it is available by continuous extension.
    fn boundary_value(&self, _x: f64) -> Option<Complex64> {
        None
    }
}

impl HalfPlaneFn for HoloExpr {
    fn log_eval(&self, w: Complex64) -> Complex64 {
        HoloExpr::log_eval(self, w)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_closed(z)
    }

    fn boundary_value(&self, x: f64) -> Option<Complex64> {
        Some(self.eval_closed(Complex64::new(x, 0.0)))
    }
}

impl<T: HalfPlaneFn + ?Sized> HalfPlaneFn for &T {
    fn log_eval(&self, w: Complex64) -> Complex64 {
        (**self).log_eval(w)
    }
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }
    fn boundary_value(&self, x: f64) -> Option<Complex64> {
        (**self).boundary_value(x)
    }
}

/// `ln z` with the argument taken in `[0, π]`.
pub(crate) fn to_log(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), z.im.max(0.0).atan2(z.re))
}

/// Log coordinates of `±e^u + iy` for `y ≥ 0`, stable for any `u`.
pub(crate) fn line_point_log(u: f64, positive: bool, y: f64) -> Complex64 {
    let sx = if positive { 1.0 } else { -1.0 };
    if y == 0.0 {
        return Complex64::new(u, if positive { 0.0 } else { PI });
    }
    let ly = y.ln();
    if u > ly {
        let r = (ly - u).exp();
        Complex64::new(u + 0.5 * (r * r).ln_1p(), r.atan2(sx))
    } else {
        let r = (u - ly).exp();
        Complex64::new(ly + 0.5 * (r * r).ln_1p(), 1.0f64.atan2(sx * r))
    }
}

/// Converts `∫|f|^p` into the norm, propagating the error estimate.
fn to_norm(r: IntegralResult<f64>, p: f64) -> IntegralResult<f64> {
    let v = r.value.max(0.0);
    let n = v.powf(1.0 / p);
    let err = if v > 0.0 { n * r.error_estimate / (p * v) } else { r.error_estimate.powf(1.0 / p) };
    IntegralResult {
        value: n,
        error_estimate: err,
        ..r
    }
}

fn check_p(p: f64, allow_inf: bool) -> Result<()> {
    if p.is_nan() || p < 1.0 || (p.is_infinite() && !allow_inf) {
        return Err(Error::param(format!("p = {p} is outside the supported range")));
    }
    Ok(())
}

/// `∫∫ |f|^p y^{α-1} dx dy` in log-polar form:
/// `∫ dρ ∫_0^π exp(p Re ln f(e^{ρ+iθ}) + (α+1)ρ) sin^{α-1}θ dθ`.
pub fn bergman_integral<F: HalfPlaneFn + ?Sized>(f: &F, p: f64, alpha: f64, spec: &QuadSpec) -> IntegralResult<f64> {
    let inner = spec.inner();
    let tracker = InnerTracker::new();
    let outer = integrate_log_axis(
        |rho| {
            let r = integrate_sin_weighted(
                |th| (p * f.log_eval(Complex64::new(rho, th)).re + (alpha + 1.0) * rho).exp(),
                0.0,
                PI,
                alpha - 1.0,
                &inner,
            );
            tracker.record(&r)
        },
        f64::NEG_INFINITY,
        f64::INFINITY,
        &[0.0],
        spec,
    );
    tracker.finish(outer)
}

/// `‖f‖_{A^p_α}` for `p ∈ [1, ∞)`, `α > 0`.
pub fn bergman_norm<F: HalfPlaneFn + ?Sized>(f: &F, p: f64, alpha: f64, spec: &QuadSpec) -> Result<IntegralResult<f64>> {
    check_p(p, false)?;
    SpaceParams::bergman(p, alpha)?;
    Ok(to_norm(bergman_integral(f, p, alpha, spec), p))
}

/// `∫_ℝ |f(x+iy)|^p |x|^α dx` on the log axis; `y = 0` uses the boundary
/// values `f(x)` given by [`HalfPlaneFn::log_eval`] at `θ ∈ {0, π}`.
pub fn hardy_line_integral<F: HalfPlaneFn + ?Sized>(
    f: &F,
    p: f64,
    alpha: f64,
    y: f64,
    spec: &QuadSpec,
) -> IntegralResult<f64> {
    let breaks = if y > 0.0 { vec![y.ln()] } else { vec![] };
    let side = |positive: bool| {
        integrate_log_axis(
            |u| (p * f.log_eval(line_point_log(u, positive, y)).re + (alpha + 1.0) * u).exp(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            &breaks,
            spec,
        )
    };
    side(false).combine(side(true))
}

/// Weighted line norm `‖f(·+iy)‖_{L^p_{|x|^α}}` for finite `p`.
pub fn hardy_line_norm<F: HalfPlaneFn + ?Sized>(f: &F, p: f64, alpha: f64, y: f64, spec: &QuadSpec) -> IntegralResult<f64> {
    to_norm(hardy_line_integral(f, p, alpha, y, spec), p)
}

/// Heights `2^0, 2^-1, …, 2^-20`.
pub fn default_y_grid() -> Vec<f64> {
    (0..=20).map(|k| 2f64.powi(-k)).collect()
}

/// Details of a Hardy norm evaluation.
#[derive(Clone, Debug)]
pub struct HardyNormReport {
    /// `max(grid max, extrapolated y → 0 value)`.
    pub norm: IntegralResult<f64>,
    /// `(y, line norm)` pairs in grid order.
    pub grid: Vec<(f64, f64)>,
    pub grid_max: f64,
    pub extrapolated: f64,
}

/// Richardson extrapolation to `y = 0` from the three smallest heights.
fn richardson(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let n = pts.len();
    if n < 3 {
        return None;
    }
    let (y0, p0) = pts[n - 3];
    let (y1, p1) = pts[n - 2];
    let (y2, p2) = pts[n - 1];
    let ra = y0 / y1;
    let rb = y1 / y2;
    let r1a = (ra * p1 - p0) / (ra - 1.0);
    let r1b = (rb * p2 - p1) / (rb - 1.0);
    let r2 = (rb * rb * r1b - r1a) / (rb * rb - 1.0);
    Some((r2, (r2 - r1b).abs()))
}

/// `‖f‖_{H^p_{|x|^α}}`: the supremum over horizontal lines, sampled on
/// `y_grid` and extrapolated to the boundary. For `p = ∞` the supremum of
/// `|f|` over a log-polar lattice.
pub fn hardy_norm_report<F: HalfPlaneFn + ?Sized>(
    f: &F,
    p: f64,
    alpha: f64,
    y_grid: &[f64],
    spec: &QuadSpec,
) -> Result<HardyNormReport> {
    check_p(p, true)?;
    SpaceParams::hardy(p, alpha)?;
    if p.is_infinite() {
        let sup = lattice_sup(f);
        let norm = IntegralResult {
            value: sup,
            error_estimate: 0.0,
            diverged: !sup.is_finite(),
            converged: sup.is_finite(),
            evaluations: 0,
        };
        return Ok(HardyNormReport {
            norm,
            grid: vec![],
            grid_max: sup,
            extrapolated: sup,
        });
    }
    if y_grid.is_empty() || y_grid.iter().any(|y| !(*y > 0.0)) {
        return Err(Error::param("y grid must be non-empty and positive"));
    }
    let mut diverged = false;
    let mut converged = true;
    let mut evaluations = 0;
    let mut worst_err: f64 = 0.0;
    let mut powers = Vec::with_capacity(y_grid.len());
    for &y in y_grid {
        let r = hardy_line_integral(f, p, alpha, y, spec);
        diverged |= r.diverged;
        converged &= r.converged;
        evaluations += r.evaluations;
        if r.value > 0.0 {
            worst_err = worst_err.max(r.error_estimate / r.value);
        }
        powers.push((y, r.value));
    }
    let grid_max_p = powers.iter().map(|x| x.1).fold(0.0, f64::max);
    let (extrap_p, extrap_err) = richardson(&powers).unwrap_or((grid_max_p, 0.0));
    let best = grid_max_p.max(extrap_p);
    let integral = IntegralResult {
        value: best,
        error_estimate: worst_err * best + if extrap_p > grid_max_p { extrap_err } else { 0.0 },
        diverged,
        converged,
        evaluations,
    };
    Ok(HardyNormReport {
        norm: to_norm(integral, p),
        grid: powers.iter().map(|(y, v)| (*y, v.max(0.0).powf(1.0 / p))).collect(),
        grid_max: grid_max_p.powf(1.0 / p),
        extrapolated: extrap_p.max(0.0).powf(1.0 / p),
    })
}

pub fn hardy_norm<F: HalfPlaneFn + ?Sized>(
    f: &F,
    p: f64,
    alpha: f64,
    y_grid: &[f64],
    spec: &QuadSpec,
) -> Result<IntegralResult<f64>> {
    Ok(hardy_norm_report(f, p, alpha, y_grid, spec)?.norm)
}

/// Sampled `sup |f|` over `ρ ∈ [-25, 25]`, `θ ∈ [0, π]`.
fn lattice_sup<F: HalfPlaneFn + ?Sized>(f: &F) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..=400 {
        let rho = -25.0 + 50.0 * i as f64 / 400.0;
        for j in 0..=64 {
            let th = PI * j as f64 / 64.0;
            best = best.max(f.log_eval(Complex64::new(rho, th)).re);
        }
    }
    best.exp()
}

/// `‖f′‖_{A^2_1}`, the Dirichlet seminorm.
pub fn dirichlet_norm(f: &HoloExpr, spec: &QuadSpec) -> IntegralResult<f64> {
    let d = f.differentiate();
    if d == HoloExpr::constant(0.0, 0.0) {
        return IntegralResult::exact(0.0);
    }
    to_norm(bergman_integral(&d, 2.0, 1.0, spec), 2.0)
}

/// `(∫ |g|^p |x|^α dx)^{1/p}`; `p = ∞` samples the supremum on a lattice.
/// Breakpoints mark jumps or kinks of `g`.
pub fn lp_weighted_norm(
    g: impl Fn(f64) -> f64,
    p: f64,
    alpha: f64,
    breakpoints: &[f64],
    spec: &QuadSpec,
) -> Result<IntegralResult<f64>> {
    check_p(p, true)?;
    SpaceParams::real_lp(p, alpha)?;
    if p.is_infinite() {
        let lat = LineLattice::standard(alpha);
        let mut sup = lat.norm_of(&g, f64::INFINITY);
        for &b in breakpoints {
            for x in [b - 1e-12 * b.abs().max(1.0), b + 1e-12 * b.abs().max(1.0)] {
                sup = sup.max(g(x).abs());
            }
        }
        return Ok(IntegralResult::exact(sup));
    }
    let r = integrate_line_weighted_with(|x| g(x).abs().powf(p), alpha, breakpoints, spec);
    Ok(to_norm(r, p))
}

/// Complex-valued variant of [`lp_weighted_norm`].
pub fn lp_weighted_norm_complex(
    g: impl Fn(f64) -> Complex64,
    p: f64,
    alpha: f64,
    breakpoints: &[f64],
    spec: &QuadSpec,
) -> Result<IntegralResult<f64>> {
    lp_weighted_norm(|x| g(x).norm(), p, alpha, breakpoints, spec)
}

/// Norm of a half-plane function in a Bergman, Hardy or real `L^p` space;
/// `RealLp` uses the boundary values. The Dirichlet seminorm needs the
/// derivative and is served by [`norm_in`] or [`dirichlet_norm`].
pub fn half_plane_norm<F: HalfPlaneFn + ?Sized>(
    f: &F,
    sp: &SpaceParams,
    y_grid: &[f64],
    spec: &QuadSpec,
) -> Result<IntegralResult<f64>> {
    match sp.space() {
        Space::Bergman => bergman_norm(f, sp.p(), sp.alpha(), spec),
        Space::Hardy => hardy_norm(f, sp.p(), sp.alpha(), y_grid, spec),
        Space::Dirichlet => Err(Error::param("the Dirichlet seminorm needs a symbolic derivative")),
        Space::RealLp => {
            if sp.p().is_infinite() {
                lp_weighted_norm_complex(
                    |x| f.log_eval(line_point_log(x.abs().ln(), x >= 0.0, 0.0)).exp(),
                    sp.p(),
                    sp.alpha(),
                    &[],
                    spec,
                )
            } else {
                Ok(to_norm(hardy_line_integral(f, sp.p(), sp.alpha(), 0.0, spec), sp.p()))
            }
        }
    }
}

/// Norm of a holomorphic expression in the space named by `sp`; for
/// `RealLp` the boundary values are used.
pub fn norm_in(f: &HoloExpr, sp: &SpaceParams, spec: &QuadSpec) -> Result<IntegralResult<f64>> {
    match sp.space() {
        Space::Dirichlet => Ok(dirichlet_norm(f, spec)),
        _ => half_plane_norm(f, sp, &default_y_grid(), spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn line_point_log_matches_direct() {
        for (u, pos, y) in [(-3.0f64, true, 0.5), (2.0, false, 0.5), (0.1, true, 2.0), (-1.0, false, 1e-3)] {
            let x = if pos { u.exp() } else { -u.exp() };
            let w = line_point_log(u, pos, y);
            let z = Complex64::new(x, y);
            assert!((w.exp() - z).norm() < 1e-13 * z.norm());
        }
    }

    #[test]
    fn closed_form_norms() {
        let q = QuadSpec::default();
        let f = HoloExpr::pshift(2.0, 1.0).unwrap();
        let n = bergman_norm(&f, 2.0, 1.0, &q).unwrap();
        assert!(rel(n.value, PI.sqrt() / 2.0) < 1e-8, "{n:?}");
        let g = HoloExpr::pshift(1.0, 1.0).unwrap();
        let n = hardy_norm(&g, 2.0, 0.0, &default_y_grid(), &q).unwrap();
        assert!(rel(n.value, PI.sqrt()) < 1e-8, "{n:?}");
        let n = hardy_norm(&g, 2.0, 0.5, &default_y_grid(), &q).unwrap();
        assert!(rel(n.value, (PI * 2f64.sqrt()).sqrt()) < 1e-8, "{n:?}");
        let neg = HoloExpr::scale(Complex64::new(-1.0, 0.0), g.clone());
        let n = dirichlet_norm(&neg, &q);
        assert!(rel(n.value, PI.sqrt() / 2.0) < 1e-8, "{n:?}");
        assert_eq!(dirichlet_norm(&HoloExpr::constant(2.0, 1.0), &q).value, 0.0);
    }

    #[test]
    fn constants() {
        let q = QuadSpec::default();
        let one = HoloExpr::constant(1.0, 0.0);
        assert!(bergman_norm(&one, 2.0, 1.0, &q).unwrap().diverged);
        let n = hardy_norm(&one, f64::INFINITY, 0.0, &[], &q).unwrap();
        assert!((n.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn real_line_norms() {
        let q = QuadSpec::default();
        let ind = |x: f64| if x.abs() <= 1.0 { 1.0 } else { 0.0 };
        let n = lp_weighted_norm(ind, 1.0, 0.0, &[-1.0, 1.0], &q).unwrap();
        assert!(rel(n.value, 2.0) < 1e-10);
        let n = lp_weighted_norm(|x| (1.0 + x * x).powf(-0.5), 2.0, 0.0, &[], &q).unwrap();
        assert!(rel(n.value, PI.sqrt()) < 1e-9);
        let n = lp_weighted_norm(|x| if x.abs() <= 1.0 { x.abs().powf(-0.25) } else { 0.0 }, 2.0, 0.0, &[-1.0, 1.0], &q)
            .unwrap();
        assert!(rel(n.value, 2.0) < 1e-9, "{n:?}");
    }

    #[test]
    fn norm_of_slowly_decaying_function() {
        // ‖(z+i)^{-(1+ε)}‖^2 in A^2_1 = B(1, 2ε)·√π Γ(ε+1/2)/Γ(1+ε) = √π Γ(ε+1/2)/(2ε Γ(1+ε))
        let q = QuadSpec::default();
        let eps = 2f64.powi(-10);
        let f = HoloExpr::pshift(1.0 + eps, 1.0).unwrap();
        let n = bergman_norm(&f, 2.0, 1.0, &q).unwrap();
        // Γ(0.5+ε)/Γ(1+ε) ≈ √π(1 + ε(ψ(1/2) - ψ(1))) = √π(1 - 2 ln2 ε)
        let approx = PI / (2.0 * eps) * (1.0 - 2.0 * std::f64::consts::LN_2 * eps);
        assert!(rel(n.value * n.value, approx) < 1e-5, "{n:?} vs {approx}");
    }
}
