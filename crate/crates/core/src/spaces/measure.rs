//! Power-weight measures of intervals, pointwise growth reports and CSV rows.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::{bergman_norm, default_y_grid, hardy_norm};
use crate::error::{Error, Result};
use crate::holo_expr::HoloExpr;
use crate::kernels::Space;
use crate::quadrature::QuadSpec;

/// `∫_a^b |u|^γ du` for `a < b`, or `None` when the integral diverges
/// (`γ ≤ -1` with `0 ∈ [a, b]`).
pub fn power_integral(a: f64, b: f64, gamma: f64) -> Option<f64> {
    debug_assert!(a < b);
    // ∫_0^x u^γ du for x ≥ 0 when γ > -1
    let from_zero = |x: f64| x.powf(gamma + 1.0) / (gamma + 1.0);
    // ∫_lo^hi u^γ du for 0 < lo < hi
    let positive = |lo: f64, hi: f64| {
        if gamma == -1.0 {
            (hi / lo).ln()
        } else {
            (hi.powf(gamma + 1.0) - lo.powf(gamma + 1.0)) / (gamma + 1.0)
        }
    };
    if a > 0.0 {
        Some(positive(a, b))
    } else if b < 0.0 {
        Some(positive(-b, -a))
    } else if gamma > -1.0 {
        Some(from_zero(-a) + from_zero(b))
    } else {
        None
    }
}

/// The interval `B(x, t) = (x - t, x + t)` with power weight `|u|^α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedBall {
    pub center: f64,
    pub radius: f64,
    pub alpha: f64,
}

/// `w_α(B(x, t)) = ∫_{x-t}^{x+t} |u|^α du`, by monomial antiderivatives.
pub fn weighted_ball_measure(b: &WeightedBall) -> Result<f64> {
    if !(b.radius > 0.0) || !(b.alpha > -1.0) {
        return Err(Error::param("weighted balls need radius > 0 and alpha > -1"));
    }
    Ok(power_integral(b.center - b.radius, b.center + b.radius, b.alpha).expect("alpha > -1 is integrable"))
}

/// `w_α(B(x₀ + y₀x/2, y₀ + y₀y/2)) / w_α(B(x₀, y₀))` for `(x, y)` in the
/// unit disc: the comparison of balls attached to nearby points.
pub fn doubling_ratio(x0: f64, y0: f64, x: f64, y: f64, alpha: f64) -> Result<f64> {
    let num = weighted_ball_measure(&WeightedBall {
        center: x0 + y0 * x / 2.0,
        radius: y0 + y0 * y / 2.0,
        alpha,
    })?;
    let den = weighted_ball_measure(&WeightedBall {
        center: x0,
        radius: y0,
        alpha,
    })?;
    Ok(num / den)
}

/// One CSV record: a point, a value there, and a derived ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CsvRow {
    pub x: f64,
    pub y: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub ratio: f64,
}

/// Writes rows with the header `x,y,value_re,value_im,ratio`.
pub fn write_csv<W: Write>(out: W, rows: &[CsvRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseRow {
    pub z: Complex64,
    pub value: Complex64,
    /// `|f(z)|` times the space's growth weight, over `‖f‖`.
    pub ratio: f64,
    /// Same for `|f′(z)|` with the extra factor `y`.
    pub derivative_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct PointwiseReport {
    pub norm: f64,
    pub rows: Vec<PointwiseRow>,
    pub max_ratio: f64,
    pub max_derivative_ratio: f64,
}

impl PointwiseReport {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.rows
            .iter()
            .map(|r| CsvRow {
                x: r.z.re,
                y: r.z.im,
                value_re: r.value.re,
                value_im: r.value.im,
                ratio: r.ratio,
            })
            .collect()
    }
}

/// Empirical constants in the pointwise growth bounds
/// `|f(z)| ≤ C y^{-(1+α)/p} ‖f‖` (Bergman) and
/// `|f(z)| ≤ C w_α(B(x, y))^{-1/p} ‖f‖` (Hardy), plus their derivative forms.
pub fn pointwise_bound_report(
    f: &HoloExpr,
    p: f64,
    alpha: f64,
    space: Space,
    samples: &[Complex64],
    spec: &QuadSpec,
) -> Result<PointwiseReport> {
    let norm = match space {
        Space::Bergman => bergman_norm(f, p, alpha, spec)?,
        Space::Hardy => hardy_norm(f, p, alpha, &default_y_grid(), spec)?,
        other => return Err(Error::param(format!("pointwise bounds are reported for bergman and hardy, not {other}"))),
    };
    if norm.diverged || !(norm.value > 0.0) {
        return Err(Error::Precondition(
            "the function does not have a finite non-zero norm in this space".into(),
        ));
    }
    let df = f.differentiate();
    let mut rows = Vec::with_capacity(samples.len());
    for &z in samples {
        let value = f.eval(z)?;
        let deriv = df.eval(z)?;
        let weight = match space {
            Space::Bergman => z.im.powf((1.0 + alpha) / p),
            _ => weighted_ball_measure(&WeightedBall {
                center: z.re,
                radius: z.im,
                alpha,
            })?
            .powf(1.0 / p),
        };
        rows.push(PointwiseRow {
            z,
            value,
            ratio: value.norm() * weight / norm.value,
            derivative_ratio: deriv.norm() * z.im * weight / norm.value,
        });
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let max_derivative_ratio = rows.iter().map(|r| r.derivative_ratio).fold(0.0, f64::max);
    Ok(PointwiseReport {
        norm: norm.value,
        rows,
        max_ratio,
        max_derivative_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_measures() {
        let m = |c, r, a| weighted_ball_measure(&WeightedBall { center: c, radius: r, alpha: a }).unwrap();
        assert_eq!(m(3.0, 1.0, 0.0), 2.0);
        assert!((m(0.0, 2.0, 1.0) - 4.0).abs() < 1e-15);
        assert!((m(1.0, 1.0, 0.5) - 2.0 / 3.0 * 2f64.powf(1.5)).abs() < 1e-14);
        assert!(weighted_ball_measure(&WeightedBall { center: 0.0, radius: 1.0, alpha: -1.0 }).is_err());
    }

    #[test]
    fn power_integral_cases() {
        assert_eq!(power_integral(0.0, 1.0, -1.0), None);
        assert!((power_integral(1.0, std::f64::consts::E, -1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((power_integral(-2.0, -1.0, 1.0).unwrap() - 1.5).abs() < 1e-15);
        assert!((power_integral(-1.0, 1.0, -0.5).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn pointwise_report() {
        let q = QuadSpec::default();
        let f = HoloExpr::pshift(2.0, 1.0).unwrap();
        let mut samples = Vec::new();
        for i in 0..20 {
            for j in 0..20 {
                samples.push(Complex64::new(-10.0 + 20.0 * i as f64 / 19.0, 10f64.powf(-2.0 + 4.0 * j as f64 / 19.0)));
            }
        }
        let r = pointwise_bound_report(&f, 2.0, 1.0, Space::Bergman, &samples, &q).unwrap();
        assert!(r.max_ratio > 0.0 && r.max_ratio.is_finite());
        let f2 = HoloExpr::scale(Complex64::new(2.0, 0.0), f.clone());
        let r2 = pointwise_bound_report(&f2, 2.0, 1.0, Space::Bergman, &samples, &q).unwrap();
        for (a, b) in r.rows.iter().zip(&r2.rows) {
            assert!((a.ratio - b.ratio).abs() <= 1e-9 * a.ratio);
        }
        let one = HoloExpr::constant(1.0, 0.0);
        assert!(pointwise_bound_report(&one, 2.0, 1.0, Space::Bergman, &samples, &q).is_err());
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[CsvRow { x: 1.0, y: 0.5, value_re: 0.25, value_im: -1.0, ratio: 2.0 }]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y,value_re,value_im,ratio\n1.0,0.5,0.25,-1.0,2.0\n");
    }
}
