//! Two-sided operator-norm estimates: the absolute moment above, Rayleigh
//! quotients of the `f_ε` family below.

use num_complex::Complex64;

use super::families::f_eps;
use crate::error::{Error, Result};
use crate::holo_expr::HoloExpr;
use crate::kernels::{is_nonnegative, log_moment, moment, signed_moment, tail_moment, Kernel, Space, SpaceParams};
use crate::operators::HausdorffImage;
use crate::quadrature::{IntegralResult, QuadSpec};
use crate::spaces::{bergman_norm, default_y_grid, dirichlet_norm, half_plane_norm, HalfPlaneFn};

/// `δ ∈ {1e-1, 1e-2, 1e-3}`.
pub fn default_delta_grid() -> Vec<f64> {
    vec![1e-1, 1e-2, 1e-3]
}

/// One Rayleigh quotient `‖ℋ f_ε‖ / ‖f_ε‖`, either for the kernel itself
/// (`delta = None`) or for its truncation `φ_δ`. `lower` is the certified
/// lower bound for `‖ℋ_φ‖` it implies: the quotient net of quadrature error
/// and, for truncations, of the tail moment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayleighRow {
    pub eps: f64,
    pub delta: Option<f64>,
    pub quotient: f64,
    pub tail: f64,
    pub lower: f64,
}

#[derive(Clone, Debug)]
pub struct NormBounds {
    pub lower: f64,
    pub upper: f64,
    pub signed: f64,
    pub eps_used: Vec<f64>,
    pub gap: f64,
    pub rows: Vec<RayleighRow>,
}

impl NormBounds {
    pub fn relative_gap(&self) -> f64 {
        self.gap / self.upper
    }
}

/// Rayleigh quotients of `ℋ_{φ_ε}` when the moment diverges.
#[derive(Clone, Debug)]
pub struct UnboundedEvidence {
    pub moment: IntegralResult<f64>,
    pub eps: Vec<f64>,
    pub quotients: Vec<f64>,
    /// Quotients increase strictly as `ε` decreases.
    pub growing: bool,
}

#[derive(Clone, Debug)]
pub enum NormEstimate {
    Bounded(NormBounds),
    Unbounded(UnboundedEvidence),
}

/// The Dirichlet seminorm of `ℋ_φ f` is the `A^2_1` norm of `ℋ_{φ̃} f′`, so
/// Dirichlet estimates run on `(φ̃, A^2_1)`.
fn reduce(k: &Kernel, sp: &SpaceParams) -> Result<(Kernel, SpaceParams)> {
    match sp.space() {
        Space::Dirichlet => Ok((k.tilde(), SpaceParams::bergman(2.0, 1.0)?)),
        _ => Ok((k.clone(), *sp)),
    }
}

struct Quotient {
    value: f64,
    lower: f64,
    diverged: bool,
}

fn rayleigh(k: &Kernel, sp: &SpaceParams, f: &HoloExpr, f_norm: &IntegralResult<f64>, spec: &QuadSpec) -> Result<Quotient> {
    let img = HausdorffImage::new(k.clone(), f.clone(), spec.inner());
    let n = half_plane_norm(&img, sp, &default_y_grid(), spec)?;
    Ok(Quotient {
        value: n.value / f_norm.value,
        lower: (n.value - n.error_estimate).max(0.0) / (f_norm.value + f_norm.error_estimate),
        diverged: n.diverged || !n.value.is_finite(),
    })
}

/// Upper bound from the absolute moment; lower bound from the best Rayleigh
/// quotient over `eps_grid`, both for `φ` directly and for the truncations
/// `φ_δ` (less the tail moment outside `(δ, 1/δ)`). With a divergent moment
/// the quotients of `ℋ_{φ_ε}` are reported instead.
pub fn estimate_operator_norm(
    k: &Kernel,
    sp: &SpaceParams,
    eps_grid: &[f64],
    delta_grid: &[f64],
    spec: &QuadSpec,
) -> Result<NormEstimate> {
    spec.validate()?;
    if eps_grid.is_empty() {
        return Err(Error::param("the epsilon grid is empty"));
    }
    let upper = moment(k, sp, spec);
    let (rk, rsp) = reduce(k, sp)?;
    let (p, alpha) = (rsp.p(), rsp.alpha());

    if upper.diverged {
        let mut quotients = Vec::with_capacity(eps_grid.len());
        for &eps in eps_grid {
            let f = f_eps(p, alpha, eps)?;
            let n0 = half_plane_norm(&f, &rsp, &default_y_grid(), spec)?;
            let q = rayleigh(&rk.truncate(eps.min(0.5))?, &rsp, &f, &n0, spec)?;
            quotients.push(if q.diverged { f64::INFINITY } else { q.value });
        }
        let growing = quotients.windows(2).all(|w| w[1] > w[0]);
        return Ok(NormEstimate::Unbounded(UnboundedEvidence {
            moment: upper,
            eps: eps_grid.to_vec(),
            quotients,
            growing,
        }));
    }

    let mut rows = Vec::new();
    for &eps in eps_grid {
        let f = f_eps(p, alpha, eps)?;
        let n0 = half_plane_norm(&f, &rsp, &default_y_grid(), spec)?;
        if n0.diverged {
            return Err(Error::Precondition(format!("test function norm diverged at eps = {eps}")));
        }
        let q = rayleigh(&rk, &rsp, &f, &n0, spec)?;
        if !q.diverged {
            rows.push(RayleighRow {
                eps,
                delta: None,
                quotient: q.value,
                tail: 0.0,
                lower: q.lower,
            });
        }
        for &delta in delta_grid {
            let tail = tail_moment(k, sp, delta, spec);
            let q = rayleigh(&rk.truncate(delta)?, &rsp, &f, &n0, spec)?;
            if q.diverged || tail.diverged {
                continue;
            }
            let t = tail.value + tail.error_estimate;
            rows.push(RayleighRow {
                eps,
                delta: Some(delta),
                quotient: q.value,
                tail: t,
                lower: q.lower - t,
            });
        }
    }
    let lower = rows.iter().map(|r| r.lower).fold(0.0, f64::max);
    let signed = signed_moment(k, sp, spec).value;
    Ok(NormEstimate::Bounded(NormBounds {
        lower,
        upper: upper.value,
        signed,
        eps_used: eps_grid.to_vec(),
        gap: upper.value - lower,
        rows,
    }))
}

/// [`estimate_operator_norm`] for kernels verified to be nonnegative, where
/// the moment is the exact norm.
pub fn sharpness_gap(
    k: &Kernel,
    sp: &SpaceParams,
    eps_grid: &[f64],
    delta_grid: &[f64],
    spec: &QuadSpec,
) -> Result<NormEstimate> {
    if !is_nonnegative(k) {
        return Err(Error::Precondition("sharpness is only asserted for nonnegative kernels".into()));
    }
    estimate_operator_norm(k, sp, eps_grid, delta_grid, spec)
}

/// `a - c·b` on the half-plane, in log form.
struct Deviation<'a, A, B> {
    a: &'a A,
    b: &'a B,
    coef: f64,
}

impl<A: HalfPlaneFn, B: HalfPlaneFn> HalfPlaneFn for Deviation<'_, A, B> {
    fn log_eval(&self, w: Complex64) -> Complex64 {
        let la = self.a.log_eval(w);
        let lb = self.b.log_eval(w) + Complex64::new(self.coef, 0.0).ln();
        if la.re == f64::NEG_INFINITY {
            return lb + Complex64::new(0.0, std::f64::consts::PI);
        }
        if lb.re == f64::NEG_INFINITY || self.coef == 0.0 {
            return la;
        }
        if la.re >= lb.re {
            la + (Complex64::new(1.0, 0.0) - (lb - la).exp()).ln()
        } else {
            lb + ((la - lb).exp() - 1.0).ln()
        }
    }
}

/// `‖ℋ_{φ_δ} f_ε - f_ε ∫ t^{(1+α)/p-1} φ_δ(t) dt‖ / ‖f_ε‖`: how far `f_ε` is
/// from an eigenfunction of the truncated operator. Decreases as `ε ↓ 0`.
pub fn mechanism_residual(k: &Kernel, sp: &SpaceParams, eps: f64, delta: f64, spec: &QuadSpec) -> Result<f64> {
    let (rk, rsp) = reduce(k, sp)?;
    let kd = rk.truncate(delta)?;
    let f = f_eps(rsp.p(), rsp.alpha(), eps)?;
    let c = signed_moment(&kd, &rsp, spec);
    let img = HausdorffImage::new(kd, f.clone(), spec.inner());
    let dev = Deviation {
        a: &img,
        b: &f,
        coef: c.value,
    };
    let ys = default_y_grid();
    let num = half_plane_norm(&dev, &rsp, &ys, spec)?;
    let den = half_plane_norm(&f, &rsp, &ys, spec)?;
    if num.diverged || den.diverged {
        return Err(Error::Precondition("norm diverged in the residual".into()));
    }
    Ok(num.value / den.value)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletBound {
    /// `‖ℋ_φ f‖_D`.
    pub image_norm: f64,
    pub f_norm: f64,
    /// `∫ |φ(t)|/t dt`.
    pub factor: f64,
    pub holds: bool,
}

/// Checks `‖ℋ_φ f‖_D ≤ (∫|φ|/t) ‖f‖_D`, which needs a finite log-moment.
pub fn dirichlet_bound(k: &Kernel, f: &HoloExpr, spec: &QuadSpec) -> Result<DirichletBound> {
    let (log_part, mass) = log_moment(k, spec);
    if log_part.diverged || mass.diverged {
        return Err(Error::Precondition("the kernel's log-moment is not finite".into()));
    }
    let f_norm = dirichlet_norm(f, spec);
    let df = f.differentiate();
    let image = if df == HoloExpr::constant(0.0, 0.0) {
        IntegralResult::exact(0.0)
    } else {
        let img = HausdorffImage::new(k.tilde(), df, spec.inner());
        bergman_norm(&img, 2.0, 1.0, spec)?
    };
    if image.diverged || f_norm.diverged {
        return Err(Error::Precondition("Dirichlet norm diverged".into()));
    }
    let slack = image.error_estimate + mass.value * f_norm.error_estimate + mass.error_estimate * f_norm.value;
    Ok(DirichletBound {
        image_norm: image.value,
        f_norm: f_norm.value,
        factor: mass.value,
        holds: image.value <= mass.value * f_norm.value * (1.0 + 1e-6) + 2.0 * slack,
    })
}
