//! Moment integrals `∫ t^e φ(t) dt`, evaluated on the log axis so that
//! power behaviour at both ends becomes exponential decay in `u = ln t`.

use super::{Kernel, SpaceParams};
use crate::quadrature::{integrate_log_axis, IntegralResult, QuadSpec};

/// `∫_{u_lo}^{u_hi} e^{(e+1)u} w(u) ψ(φ(e^u)) du` where `ψ` is `|·|` or the
/// identity.
fn log_axis_moment(
    k: &Kernel,
    exponent: f64,
    weight: impl Fn(f64) -> f64,
    window: (f64, f64),
    signed: bool,
    spec: &QuadSpec,
) -> IntegralResult<f64> {
    let (s_lo, s_hi, breaks) = k.log_layout();
    let lo = s_lo.max(window.0);
    let hi = s_hi.min(window.1);
    if !(lo < hi) {
        return IntegralResult::exact(0.0);
    }
    let mut breaks = breaks;
    breaks.push(0.0);
    integrate_log_axis(
        |u| {
            let (l, s) = k.log_abs(u);
            if l == f64::NEG_INFINITY {
                return 0.0;
            }
            let v = ((exponent + 1.0) * u + l).exp() * weight(u);
            if signed {
                s * v
            } else {
                v
            }
        },
        lo,
        hi,
        &breaks,
        spec,
    )
}

/// `∫_0^∞ t^e |φ(t)| dt` for an arbitrary exponent.
pub fn moment_with_exponent(k: &Kernel, exponent: f64, spec: &QuadSpec) -> IntegralResult<f64> {
    log_axis_moment(k, exponent, |_| 1.0, (f64::NEG_INFINITY, f64::INFINITY), false, spec)
}

/// `∫_0^∞ t^{(1+α)/p - 1} |φ(t)| dt` (exponent `-1` for `p = ∞` and the
/// Dirichlet space). Divergence is reported through the result flag.
pub fn moment(k: &Kernel, sp: &SpaceParams, spec: &QuadSpec) -> IntegralResult<f64> {
    moment_with_exponent(k, sp.moment_exponent(), spec)
}

/// As [`moment`] without the absolute value.
pub fn signed_moment(k: &Kernel, sp: &SpaceParams, spec: &QuadSpec) -> IntegralResult<f64> {
    log_axis_moment(
        k,
        sp.moment_exponent(),
        |_| 1.0,
        (f64::NEG_INFINITY, f64::INFINITY),
        true,
        spec,
    )
}

/// `(∫ |ln t| |φ(t)|/t dt, ∫ |φ(t)|/t dt)`.
pub fn log_moment(k: &Kernel, spec: &QuadSpec) -> (IntegralResult<f64>, IntegralResult<f64>) {
    let full = (f64::NEG_INFINITY, f64::INFINITY);
    (
        log_axis_moment(k, -1.0, f64::abs, full, false, spec),
        log_axis_moment(k, -1.0, |_| 1.0, full, false, spec),
    )
}

/// Moment mass outside `(δ, 1/δ)`, i.e. `moment(φ) - moment(φ_δ)` computed
/// directly rather than by cancellation.
pub fn tail_moment(k: &Kernel, sp: &SpaceParams, delta: f64, spec: &QuadSpec) -> IntegralResult<f64> {
    let edge = -delta.ln();
    let e = sp.moment_exponent();
    let lower = log_axis_moment(k, e, |_| 1.0, (f64::NEG_INFINITY, -edge), false, spec);
    let upper = log_axis_moment(k, e, |_| 1.0, (edge, f64::INFINITY), false, spec);
    lower.combine(upper)
}

/// Samples `φ` on a log grid spanning `[1e-8, 1e8]` (plus just inside each
/// breakpoint) and reports whether every sample is `≥ 0`.
pub fn is_nonnegative(k: &Kernel) -> bool {
    let grid = (0..=1600).map(|i| -18.4 + 36.8 * i as f64 / 1600.0);
    let near = k
        .breakpoints()
        .into_iter()
        .flat_map(|b| [b.ln() - 1e-9, b.ln() + 1e-9]);
    grid.chain(near).all(|u| k.log_abs(u).1 >= 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn catalog_moments() {
        let q = QuadSpec::default();
        let m = moment(&Kernel::cesaro_like(2.0).unwrap(), &SpaceParams::bergman(2.0, 1.0).unwrap(), &q);
        assert!(rel(m.value, 1.0) < 1e-10 && !m.diverged, "{m:?}");
        let m = moment(&Kernel::generalized_cesaro(1.0).unwrap(), &SpaceParams::hardy(2.0, 0.0).unwrap(), &q);
        assert!(rel(m.value, 2.0) < 1e-10, "{m:?}");
        let m = moment(&Kernel::cesaro_like(1.0).unwrap(), &SpaceParams::bergman(1.0, 1.0).unwrap(), &q);
        assert!(m.diverged, "{m:?}");
    }

    #[test]
    fn log_moments() {
        let q = QuadSpec::default();
        let (a, b) = log_moment(&Kernel::cesaro_like(2.0).unwrap(), &q);
        assert!(rel(a.value, 0.25) < 1e-10 && rel(b.value, 0.5) < 1e-10);
        let (a, b) = log_moment(&Kernel::Hardy, &q);
        assert!(rel(a.value, 1.0) < 1e-10 && rel(b.value, 1.0) < 1e-10);
    }

    #[test]
    fn signed_moment_of_sign_changing_kernel() {
        let q = QuadSpec::default();
        let k = Kernel::from_json(
            r#"{"type":"user","pieces":[{"from":1,"to":2,"terms":[{"coef":1,"pow":0}]},{"from":2,"to":3,"terms":[{"coef":-1,"pow":0}]}]}"#,
        )
        .unwrap();
        let sp = SpaceParams::hardy(f64::INFINITY, 0.0).unwrap();
        let s = signed_moment(&k, &sp, &q);
        let a = moment(&k, &sp, &q);
        assert!(rel(s.value, (2f64).ln() - (1.5f64).ln()) < 1e-10);
        assert!(rel(a.value, (3f64).ln()) < 1e-10);
        assert!(!is_nonnegative(&k));
        assert!(is_nonnegative(&Kernel::Hardy));
    }

    #[test]
    fn tail_plus_truncated_is_total() {
        let q = QuadSpec::default();
        let k = Kernel::stieltjes(1.0, 2.0).unwrap();
        let sp = SpaceParams::hardy(2.0, 0.0).unwrap();
        let total = moment(&k, &sp, &q).value;
        assert!(rel(total, std::f64::consts::FRAC_PI_2) < 1e-9);
        let inner = moment(&k.truncate(0.1).unwrap(), &sp, &q).value;
        let tail = tail_moment(&k, &sp, 0.1, &q).value;
        assert!(rel(inner + tail, total) < 1e-9);
    }
}
