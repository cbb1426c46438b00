//! The Hausdorff operator `f ↦ ∫_0^∞ f(z/t) φ(t)/t dt`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holo_expr::HoloExpr;
use crate::kernels::Kernel;
use crate::quadrature::{
    far_guard, integrate, integrate_log_axis, integrate_ray_on, IntegralResult, QuadSpec, QuadValue, RaySubstitution,
};
use crate::spaces::HalfPlaneFn;

/// `ℋ_φ f` as a function on the closed half-plane. Each evaluation is a ray
/// integral; values are produced in log form so the image can be fed to the
/// norm evaluators.
#[derive(Clone, Debug)]
pub struct HausdorffImage<F> {
    kernel: Kernel,
    f: F,
    spec: QuadSpec,
}

impl<F: HalfPlaneFn> HausdorffImage<F> {
    pub fn new(kernel: Kernel, f: F, spec: QuadSpec) -> Self {
        HausdorffImage { kernel, f, spec }
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// `ln ℋf(e^w)` together with the quadrature outcome. In `u = ln t` the
    /// integral is `∫ f(e^{w-u}) φ(e^u) du`; it is evaluated relative to the
    /// largest sampled integrand modulus so extreme `Re w` stays in range.
    pub fn log_eval_detailed(&self, w: Complex64) -> (Complex64, IntegralResult<Complex64>) {
        let (lo, hi, mut breaks) = self.kernel.log_layout();
        let log_integrand = |u: f64| {
            let (lp, sign) = self.kernel.log_abs(u);
            if lp == f64::NEG_INFINITY {
                return (Complex64::new(f64::NEG_INFINITY, 0.0), 0.0);
            }
            (self.f.log_eval(w - u) + lp, sign)
        };

        // Reference scale: largest integrand modulus on coarse grids around
        // the kernel's bulk and around u = Re w, where f(e^{w-u}) turns over.
        let window = |c: f64, half: f64| {
            let a = lo.max(c - half);
            let b = hi.min(c + half);
            (0..=32).map(move |i| a + (b - a) * i as f64 / 32.0)
        };
        let mut probes: Vec<f64> = window(0.0, 40.0).collect();
        if w.re.is_finite() {
            probes.extend(window(w.re, 20.0));
        }
        probes.extend(breaks.iter().flat_map(|x| [x - 1e-6, x + 1e-6]));
        let mut m = probes
            .iter()
            .filter(|u| **u > lo && **u < hi)
            .map(|&u| log_integrand(u).0.re)
            .filter(|v| v.is_finite())
            .fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            let zero = IntegralResult::exact(Complex64::new(0.0, 0.0));
            return (Complex64::new(f64::NEG_INFINITY, 0.0), zero);
        }

        if w.re.is_finite() {
            breaks.push(w.re);
        }
        let run = |m: f64| {
            integrate_log_axis(
                |u| {
                    let (l, s) = log_integrand(u);
                    if s == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        (l - m).exp() * s
                    }
                },
                lo,
                hi,
                &breaks,
                &self.spec,
            )
        };
        let mut r = run(m);
        // A peak the probes missed shows up as an extreme result; rescale
        // by its size and repeat.
        for _ in 0..3 {
            let size = r.value.norm();
            if size.is_finite() && size > 0.0 && (1e-100..1e100).contains(&size) {
                break;
            }
            let shift = if size.is_finite() && size > 0.0 { size.ln() } else if size == 0.0 { -600.0 } else { 600.0 };
            m += shift;
            r = run(m);
        }
        let value = if r.diverged {
            Complex64::new(f64::NAN, f64::NAN)
        } else if r.value.norm() == 0.0 {
            Complex64::new(f64::NEG_INFINITY, 0.0)
        } else {
            r.value.ln() + m
        };
        (value, r)
    }
}

impl<F: HalfPlaneFn> HalfPlaneFn for HausdorffImage<F> {
    fn log_eval(&self, w: Complex64) -> Complex64 {
        self.log_eval_detailed(w).0
    }
}

/// `ℋ_φ f(z) = ∫_0^∞ f(z/t) φ(t)/t dt` for `Im z > 0`.
pub fn apply_complex<F: HalfPlaneFn + ?Sized>(
    k: &Kernel,
    f: &F,
    z: Complex64,
    spec: &QuadSpec,
) -> Result<IntegralResult<Complex64>> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("point {z} is not in the open upper half-plane")));
    }
    Ok(apply_closed(k, f, z, spec))
}

/// As [`apply_complex`] but accepting `Im z ≥ 0`.
pub(crate) fn apply_closed<F: HalfPlaneFn + ?Sized>(
    k: &Kernel,
    f: &F,
    z: Complex64,
    spec: &QuadSpec,
) -> IntegralResult<Complex64> {
    let r = z.norm();
    let extra = if r > 0.0 { vec![r] } else { vec![] };
    kernel_integral(k, &extra, spec, |t| f.eval(z / t))
}

/// `∫ h(t) φ(t) dt/t` over the kernel support. With the log substitution
/// the kernel is evaluated through its log-modulus, which keeps endpoint
/// singularities such as `(t-1)^{β-1}` accurate.
fn kernel_integral<V: QuadValue>(
    k: &Kernel,
    extra_breaks: &[f64],
    spec: &QuadSpec,
    h: impl Fn(f64) -> V,
) -> IntegralResult<V> {
    let (lo, hi) = k.support();
    let mut breaks = k.breakpoints();
    breaks.extend(extra_breaks.iter().copied().filter(|b| *b > 0.0 && b.is_finite()));
    match spec.ray_substitution {
        RaySubstitution::Log => {
            let (u_lo, u_hi, _) = k.log_layout();
            let u_breaks: Vec<f64> = breaks.iter().map(|b| b.ln()).collect();
            integrate_log_axis(
                |u| {
                    let (l, s) = k.log_abs(u);
                    if s == 0.0 {
                        return V::zero();
                    }
                    let t = u.exp().clamp(f64::MIN_POSITIVE, f64::MAX);
                    far_guard(h(t) * (s * l.exp()), u)
                },
                u_lo,
                u_hi,
                &u_breaks,
                spec,
            )
        }
        RaySubstitution::None => integrate_ray_on(
            |t| {
                let phi = k.eval_unchecked(t);
                if phi == 0.0 {
                    V::zero()
                } else {
                    h(t) * (phi / t)
                }
            },
            lo,
            hi,
            &breaks,
            spec,
        ),
    }
}

/// Breakpoints in `t` where `g(x/t)` jumps.
fn image_breaks(x: f64, g_breakpoints: &[f64]) -> Vec<f64> {
    let mut b: Vec<f64> = g_breakpoints.iter().filter(|b| **b != 0.0 && x / **b > 0.0).map(|b| x / b).collect();
    if x != 0.0 {
        b.push(x.abs());
    }
    b
}

/// `𝓗_φ g(x) = ∫_0^∞ g(x/t) φ(t)/t dt` for a real-line function with
/// known jump points. At `x = 0` this is `g(0)·∫φ(t)/t dt`.
pub fn apply_real(
    k: &Kernel,
    g: impl Fn(f64) -> f64,
    x: f64,
    g_breakpoints: &[f64],
    spec: &QuadSpec,
) -> IntegralResult<f64> {
    if x == 0.0 {
        let g0 = g(0.0);
        return kernel_integral(k, &[], spec, |_| 1.0).map(|v| v * g0, g0.abs());
    }
    kernel_integral(k, &image_breaks(x, g_breakpoints), spec, |t| g(x / t))
}

/// Complex-valued variant of [`apply_real`].
pub fn apply_real_complex(
    k: &Kernel,
    g: impl Fn(f64) -> Complex64,
    x: f64,
    g_breakpoints: &[f64],
    spec: &QuadSpec,
) -> IntegralResult<Complex64> {
    if x == 0.0 {
        let g0 = g(0.0);
        return kernel_integral(k, &[], spec, |_| 1.0).map(|v| g0 * v, g0.norm());
    }
    kernel_integral(k, &image_breaks(x, g_breakpoints), spec, |t| g(x / t))
}

/// Holomorphic derivative from `N` samples on a circle of radius `r`:
/// `F′(z) ≈ (1/N) Σ F(z + r e^{iθ_j}) e^{-iθ_j} / r`. The trapezoidal rule
/// on a circle converges geometrically in `r / dist(z, singularities)`.
pub fn cauchy_derivative(
    mut eval: impl FnMut(Complex64) -> Result<Complex64>,
    z: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let th = 2.0 * PI * (j as f64 + 0.5) / nodes as f64;
        let e = Complex64::from_polar(1.0, th);
        acc += eval(z + e * radius)? / e;
    }
    Ok(acc / (radius * nodes as f64))
}

/// Both sides of `(ℋ_φ f)′ = ℋ_{φ̃}(f′)` at a point.
#[derive(Clone, Copy, Debug)]
pub struct DerivativeResidual {
    /// Derivative of `ℋ_φ f` computed from values of `ℋ_φ f`.
    pub lhs: Complex64,
    /// `ℋ_{φ̃}(f′)` with the exact symbolic derivative.
    pub rhs: Complex64,
    pub residual: f64,
    /// `residual / max(|lhs|, |rhs|)`, zero when both vanish.
    pub relative: f64,
}

/// Checks the derivative identity at `z`. The left side differentiates the
/// computed operator values on a circle of radius `Im z / 4`.
pub fn derivative_identity_residual(
    k: &Kernel,
    f: &HoloExpr,
    z: Complex64,
    spec: &QuadSpec,
) -> Result<DerivativeResidual> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("point {z} is not in the open upper half-plane")));
    }
    let mut flagged = false;
    let lhs = cauchy_derivative(
        |w| {
            let r = apply_complex(k, f, w, spec)?;
            flagged |= r.diverged;
            Ok(r.value)
        },
        z,
        z.im / 4.0,
        16,
    )?;
    let rhs_r = apply_complex(&k.tilde(), &f.differentiate(), z, spec)?;
    if flagged || rhs_r.diverged {
        return Err(Error::Precondition("operator integral diverged; the kernel moment is not finite".into()));
    }
    let rhs = rhs_r.value;
    let residual = (lhs - rhs).norm();
    let scale = lhs.norm().max(rhs.norm());
    Ok(DerivativeResidual {
        lhs,
        rhs,
        residual,
        relative: if scale > 0.0 { residual / scale } else { 0.0 },
    })
}

/// `(1/π) ∫_0^∞ [g(x-y) - g(x+y)]/y dy` at each abscissa.
pub fn hilbert_transform(g: impl Fn(f64) -> f64, xs: &[f64], spec: &QuadSpec) -> Vec<IntegralResult<f64>> {
    xs.iter()
        .map(|&x| {
            let mut breaks = vec![1.0];
            if x != 0.0 {
                breaks.push(x.abs());
            }
            integrate(
                |y: f64| if y == 0.0 { 0.0 } else { (g(x - y) - g(x + y)) / y },
                0.0,
                f64::INFINITY,
                &breaks,
                spec,
            )
            .map(|v| v / PI, 1.0 / PI)
        })
        .collect()
}

/// Uniform-grid discretisation of the Hilbert transform:
/// `Hg(x) ≈ (2/π) Σ_{m odd, |m|h ≤ W} g(x - mh)/m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeHilbert {
    pub step: f64,
    pub half_width: f64,
}

impl Default for LatticeHilbert {
    fn default() -> Self {
        LatticeHilbert {
            step: 0.05,
            half_width: 4000.0,
        }
    }
}

impl LatticeHilbert {
    /// Lattice sum over `|m|h ≤ W`; the remainder beyond the last odd
    /// node's cell is added as an ordinary integral.
    pub fn apply(&self, g: impl Fn(f64) -> f64, x: f64) -> f64 {
        let n = (self.half_width / self.step).floor() as i64;
        let mut terms = Vec::with_capacity(n as usize / 2 + 2);
        let mut m = 1i64;
        while m <= n {
            let y = m as f64 * self.step;
            terms.push((g(x - y) - g(x + y)) / m as f64);
            m += 2;
        }
        let edge = (m - 1) as f64 * self.step;
        let tail = integrate(
            |y: f64| (g(x - y) - g(x + y)) / y,
            edge,
            f64::INFINITY,
            &[],
            &QuadSpec::default(),
        );
        // Sum smallest terms first.
        terms.reverse();
        (2.0 * crate::quadrature::compensated(terms.into_iter()) + tail.value) / PI
    }

    pub fn transform(&self, g: impl Fn(f64) -> f64, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.apply(&g, x)).collect()
    }
}
