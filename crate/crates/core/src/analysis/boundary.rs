//! Horizontal slices of `ℋ_φ f` converging to `𝓗_φ(f*)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holo_expr::HoloExpr;
use crate::kernels::Kernel;
use crate::operators::{apply_closed, apply_real_complex};
use crate::quadrature::{LineLattice, QuadSpec};
use crate::spaces::{default_y_grid, hardy_norm};

#[derive(Clone, Debug)]
pub struct BoundaryCompat {
    /// `(y, ‖(ℋ_φ f)(·+iy) - 𝓗_φ(f*)‖_{L^p_{|x|^α}})`.
    pub residuals: Vec<(f64, f64)>,
    /// `‖f‖` in the Hardy space.
    pub f_norm: f64,
    pub decreasing: bool,
    /// Last residual over `f_norm` (the raw residual when `f_norm` is not
    /// finite and positive).
    pub final_relative: f64,
}

/// Residuals on a fixed lattice; the two sides come from independent ray
/// integrals, one at height `y`, one of the boundary function.
pub fn boundary_compat_residual(
    k: &Kernel,
    f: &HoloExpr,
    p: f64,
    alpha: f64,
    y_grid: &[f64],
    spec: &QuadSpec,
) -> Result<BoundaryCompat> {
    if y_grid.is_empty() || y_grid.iter().any(|y| !(*y > 0.0)) {
        return Err(Error::param("y grid must be non-empty and positive"));
    }
    let norm = hardy_norm(f, p, alpha, &default_y_grid(), spec)?;
    let lattice = LineLattice::new(alpha, -8.0, 8.0, 2);
    let star = |x: f64| f.eval_closed(Complex64::new(x, 0.0));
    let target: Vec<Complex64> = lattice
        .nodes()
        .iter()
        .map(|&x| apply_real_complex(k, star, x, &[], spec).value)
        .collect();
    let residuals: Vec<(f64, f64)> = y_grid
        .iter()
        .map(|&y| {
            let d: Vec<f64> = lattice
                .nodes()
                .iter()
                .zip(&target)
                .map(|(&x, t)| (apply_closed(k, f, Complex64::new(x, y), spec).value - t).norm())
                .collect();
            (y, lattice.lp_norm(&d, p))
        })
        .collect();
    let decreasing = residuals.windows(2).all(|w| w[1].1 < w[0].1);
    let last = residuals.last().expect("non-empty grid").1;
    let final_relative = if norm.value.is_finite() && norm.value > 0.0 { last / norm.value } else { last };
    Ok(BoundaryCompat {
        residuals,
        f_norm: norm.value,
        decreasing,
        final_relative,
    })
}
