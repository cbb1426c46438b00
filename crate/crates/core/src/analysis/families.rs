//! The test-function families `Φ_ε(z) = (z + εi)^{-s}` and
//! `f_ε(z) = (z + i)^{-s}` with `s = (1+α)/p + ε`, and their norm growth.

use crate::error::{Error, Result};
use crate::holo_expr::HoloExpr;
use crate::kernels::{Space, SpaceParams};
use crate::quadrature::QuadSpec;
use crate::spaces::{default_y_grid, half_plane_norm};

fn exponent(p: f64, alpha: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param(format!("epsilon must be positive, got {eps}")));
    }
    if !(p >= 1.0) || !(alpha > -1.0) {
        return Err(Error::param("test functions need p ≥ 1 and alpha > -1"));
    }
    let base = if p.is_infinite() { 0.0 } else { (1.0 + alpha) / p };
    Ok(base + eps)
}

/// `Φ_ε(z) = (z + εi)^{-((1+α)/p + ε)}`.
pub fn phi_eps(p: f64, alpha: f64, eps: f64) -> Result<HoloExpr> {
    HoloExpr::pshift(exponent(p, alpha, eps)?, eps)
}

/// `f_ε(z) = (z + i)^{-((1+α)/p + ε)}`, so that
/// `Φ_ε(z) = ε^{-((1+α)/p+ε)} f_ε(z/ε)`.
pub fn f_eps(p: f64, alpha: f64, eps: f64) -> Result<HoloExpr> {
    HoloExpr::pshift(exponent(p, alpha, eps)?, 1.0)
}

/// `ε ∈ {2^-4, …, 2^-10}`.
pub fn default_eps_grid() -> Vec<f64> {
    (4..=10).map(|k| 2f64.powi(-k)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandRow {
    pub eps: f64,
    pub f_norm: f64,
    /// `‖f_ε‖ ε^{1/p}`.
    pub f_compensated: f64,
    pub phi_norm: f64,
    /// `‖Φ_ε‖ ε^{1/p + ε}`.
    pub phi_compensated: f64,
}

#[derive(Clone, Debug)]
pub struct CompensatedBand {
    pub rows: Vec<BandRow>,
    /// max/min of `f_compensated` over the grid.
    pub f_spread: f64,
    /// max/min of `phi_compensated` over the grid.
    pub phi_spread: f64,
}

fn spread(v: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = v.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = v.fold(f64::INFINITY, f64::min);
    max / min
}

/// Norms of both families, rescaled by their predicted blow-up rates. The
/// rescaled values stay in a bounded band as `ε ↓ 0`.
pub fn compensated_norm_band(sp: &SpaceParams, eps_grid: &[f64], spec: &QuadSpec) -> Result<CompensatedBand> {
    if matches!(sp.space(), Space::Dirichlet) || sp.p().is_infinite() {
        return Err(Error::param("norm asymptotics are tracked for finite p in bergman, hardy and real_lp"));
    }
    let (p, alpha) = (sp.p(), sp.alpha());
    let ys = default_y_grid();
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let f = half_plane_norm(&f_eps(p, alpha, eps)?, sp, &ys, spec)?;
        let phi = half_plane_norm(&phi_eps(p, alpha, eps)?, sp, &ys, spec)?;
        if f.diverged || phi.diverged {
            return Err(Error::Precondition(format!("test-function norm diverged at eps = {eps}")));
        }
        rows.push(BandRow {
            eps,
            f_norm: f.value,
            f_compensated: f.value * eps.powf(1.0 / p),
            phi_norm: phi.value,
            phi_compensated: phi.value * eps.powf(1.0 / p + eps),
        });
    }
    Ok(CompensatedBand {
        f_spread: spread(rows.iter().map(|r| r.f_compensated)),
        phi_spread: spread(rows.iter().map(|r| r.phi_compensated)),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn definitions() {
        let eps = 0.125;
        let f = f_eps(2.0, 1.0, eps).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let v = f.eval(i).unwrap();
        let expect = (2.0 * i).powf(-(1.0 + eps));
        assert!((v - expect).norm() < 1e-14);
        let phi = phi_eps(2.0, 1.0, eps).unwrap();
        for z in [Complex64::new(0.3, 0.2), Complex64::new(-4.0, 1.5)] {
            let lhs = phi.eval(z).unwrap();
            let rhs = f.eval(z / eps).unwrap() * eps.powf(-(1.0 + eps));
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
        }
        assert!(f_eps(2.0, 1.0, 0.0).is_err());
    }
}
