//! Boundary values `f*(x) = lim_{y→0} f(x+iy)` and the convergence of
//! horizontal slices towards them.

use num_complex::Complex64;

use super::measure::CsvRow;
use super::HalfPlaneFn;
use crate::error::{Error, Result};
use crate::quadrature::LineLattice;

#[derive(Clone, Debug)]
pub struct BoundaryTrace {
    pub xs: Vec<f64>,
    /// `f*(x)`: the continuous extension when available, else `extrapolated`.
    pub values: Vec<Complex64>,
    /// Richardson limit of `f(x + iy)` along the y grid.
    pub extrapolated: Vec<Complex64>,
    /// Smallest height used by the extrapolation.
    pub final_y: f64,
    pub continuous_extension: bool,
    /// `(y, ‖f(·+iy) - f*‖_{L^p_{|x|^α}})` in grid order.
    pub residuals: Vec<(f64, f64)>,
    /// Residuals shrink monotonically along the grid.
    pub contracting: bool,
}

impl BoundaryTrace {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.xs
            .iter()
            .zip(self.values.iter().zip(&self.extrapolated))
            .map(|(&x, (v, e))| CsvRow {
                x,
                y: 0.0,
                value_re: v.re,
                value_im: v.im,
                ratio: (v - e).norm(),
            })
            .collect()
    }
}

/// Extrapolates `v(y) = v₀ + c₁y + c₂y²` to `y = 0` from three heights.
pub(crate) fn richardson_complex(samples: &[(f64, Complex64)]) -> Complex64 {
    match samples.len() {
        0 => Complex64::new(f64::NAN, f64::NAN),
        1 => samples[0].1,
        2 => {
            let (y0, v0) = samples[0];
            let (y1, v1) = samples[1];
            let r = y0 / y1;
            (v1 * r - v0) / (r - 1.0)
        }
        n => {
            let (y0, v0) = samples[n - 3];
            let (y1, v1) = samples[n - 2];
            let (y2, v2) = samples[n - 1];
            let ra = y0 / y1;
            let rb = y1 / y2;
            let a = (v1 * ra - v0) / (ra - 1.0);
            let b = (v2 * rb - v1) / (rb - 1.0);
            (b * (rb * rb) - a) / (rb * rb - 1.0)
        }
    }
}

/// Boundary values of `f` at `xs`, and slice residuals measured in
/// `L^p_{|x|^α}` on the standard lattice. `y_grid` must be decreasing.
pub fn boundary_trace<F: HalfPlaneFn + ?Sized>(
    f: &F,
    xs: &[f64],
    y_grid: &[f64],
    p: f64,
    alpha: f64,
) -> Result<BoundaryTrace> {
    if y_grid.is_empty() || y_grid.iter().any(|y| !(*y > 0.0)) || y_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::param("y grid must be positive and strictly decreasing"));
    }
    if p.is_nan() || p < 1.0 || !(alpha > -1.0) {
        return Err(Error::param("boundary traces need p ≥ 1 and alpha > -1"));
    }
    let trace_at = |x: f64| -> (Complex64, Complex64) {
        let samples: Vec<(f64, Complex64)> = y_grid.iter().map(|&y| (y, f.eval(Complex64::new(x, y)))).collect();
        let extrap = richardson_complex(&samples);
        (f.boundary_value(x).unwrap_or(extrap), extrap)
    };
    let continuous_extension = f.boundary_value(0.0).is_some();
    let (values, extrapolated): (Vec<_>, Vec<_>) = xs.iter().map(|&x| trace_at(x)).unzip();

    let lattice = LineLattice::standard(alpha);
    let star: Vec<Complex64> = lattice.nodes().iter().map(|&x| trace_at(x).0).collect();
    let residuals: Vec<(f64, f64)> = y_grid
        .iter()
        .map(|&y| {
            let diffs: Vec<f64> = lattice
                .nodes()
                .iter()
                .zip(&star)
                .map(|(&x, s)| (f.eval(Complex64::new(x, y)) - s).norm())
                .collect();
            (y, lattice.lp_norm(&diffs, p))
        })
        .collect();
    let contracting = residuals.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(BoundaryTrace {
        xs: xs.to_vec(),
        values,
        extrapolated,
        final_y: *y_grid.last().expect("non-empty grid"),
        continuous_extension,
        residuals,
        contracting,
    })
}
