//! Holomorphic functions on the upper half-plane as a closed expression
//! grammar, so that dilations and derivatives stay exact.

mod parse;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Expression tree for a function holomorphic on `Im z > 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum HoloExpr {
    Const(Complex64),
    /// `z ↦ (z + c·i)^(-s)` on the principal branch, `c > 0`.
    PowerShift { s: Complex64, c: f64 },
    Sum(Vec<HoloExpr>),
    Product(Vec<HoloExpr>),
    Scale(Complex64, Box<HoloExpr>),
    /// `z ↦ inner(λ·z)`, `λ > 0`.
    Dilate(f64, Box<HoloExpr>),
}

fn check_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("point {z} is not in the open upper half-plane")))
    }
}

/// Complex log-sum-exp.
fn log_sum_exp(logs: &[Complex64]) -> Complex64 {
    let m = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    if !m.is_finite() {
        return Complex64::new(m, 0.0);
    }
    let s: Complex64 = logs
        .iter()
        .filter(|l| l.re > f64::NEG_INFINITY)
        .map(|l| (l - m).exp())
        .sum();
    Complex64::new(m, 0.0) + s.ln()
}

fn complex_ln(c: Complex64) -> Complex64 {
    if c.re == 0.0 && c.im == 0.0 {
        Complex64::new(f64::NEG_INFINITY, 0.0)
    } else {
        c.ln()
    }
}

impl HoloExpr {
    pub fn constant(re: f64, im: f64) -> Self {
        HoloExpr::Const(Complex64::new(re, im))
    }

    /// `(z + c·i)^(-s)`; requires `c > 0`.
    pub fn power_shift(s: Complex64, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("shift must be positive, got {c}")));
        }
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::param("exponent must be finite"));
        }
        Ok(HoloExpr::PowerShift { s, c })
    }

    /// Real-exponent shorthand for [`HoloExpr::power_shift`].
    pub fn pshift(s: f64, c: f64) -> Result<Self> {
        HoloExpr::power_shift(Complex64::new(s, 0.0), c)
    }

    pub fn scale(a: Complex64, inner: HoloExpr) -> Self {
        HoloExpr::Scale(a, Box::new(inner))
    }

    pub fn sum(terms: Vec<HoloExpr>) -> Self {
        HoloExpr::Sum(terms)
    }

    pub fn product(factors: Vec<HoloExpr>) -> Self {
        HoloExpr::Product(factors)
    }

    /// `z ↦ self(λ·z)`; nested dilations are merged.
    pub fn dilate(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("dilation factor must be positive, got {lambda}")));
        }
        Ok(match self {
            HoloExpr::Dilate(mu, inner) => HoloExpr::Dilate(lambda * mu, inner.clone()),
            other => HoloExpr::Dilate(lambda, Box::new(other.clone())),
        })
    }

    /// Value at `z`, which must lie in the open upper half-plane.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_upper(z)?;
        Ok(self.eval_closed(z))
    }

    /// Value at `z` with `Im z ≥ 0`. Every expression of the grammar extends
    /// continuously to the real axis because all shifts are strictly positive.
    pub fn eval_closed(&self, z: Complex64) -> Complex64 {
        match self {
            HoloExpr::Const(c) => *c,
            HoloExpr::PowerShift { s, c } => (-s * (z + I * *c).ln()).exp(),
            HoloExpr::Sum(terms) => terms.iter().map(|t| t.eval_closed(z)).sum(),
            HoloExpr::Product(factors) => factors.iter().map(|t| t.eval_closed(z)).product(),
            HoloExpr::Scale(a, inner) => a * inner.eval_closed(z),
            HoloExpr::Dilate(l, inner) => inner.eval_closed(z * *l),
        }
    }

    /// `ln f(e^w)` for `w = ρ + iθ` with `θ ∈ [0, π]`.
    ///
    /// Only the real part (log-modulus) is branch independent. The
    /// representation never forms `e^ρ`, so it stays finite for `|ρ|` far
    /// beyond the floating-point range of `|z|`.
    pub fn log_eval(&self, w: Complex64) -> Complex64 {
        match self {
            HoloExpr::Const(c) => complex_ln(*c),
            HoloExpr::PowerShift { s, c } => {
                let l = if w.re >= 0.0 {
                    // z + ci = z(1 + ci/z); 1 + ci/z has positive real part here.
                    w + (Complex64::new(1.0, 0.0) + I * *c * (-w).exp()).ln()
                } else {
                    (w.exp() + I * *c).ln()
                };
                -s * l
            }
            HoloExpr::Sum(terms) => {
                let logs: Vec<Complex64> = terms.iter().map(|t| t.log_eval(w)).collect();
                log_sum_exp(&logs)
            }
            HoloExpr::Product(factors) => factors.iter().map(|t| t.log_eval(w)).sum(),
            HoloExpr::Scale(a, inner) => complex_ln(*a) + inner.log_eval(w),
            HoloExpr::Dilate(l, inner) => inner.log_eval(w + l.ln()),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            HoloExpr::Const(c) => c.re == 0.0 && c.im == 0.0,
            HoloExpr::Sum(t) => t.iter().all(HoloExpr::is_zero),
            HoloExpr::Product(f) => f.iter().any(HoloExpr::is_zero),
            HoloExpr::Scale(a, inner) => (a.re == 0.0 && a.im == 0.0) || inner.is_zero(),
            HoloExpr::Dilate(_, inner) => inner.is_zero(),
            HoloExpr::PowerShift { .. } => false,
        }
    }

    /// Exact complex derivative.
    pub fn differentiate(&self) -> HoloExpr {
        let zero = HoloExpr::Const(Complex64::new(0.0, 0.0));
        let d = match self {
            HoloExpr::Const(_) => zero.clone(),
            HoloExpr::PowerShift { s, c } => HoloExpr::Scale(
                -s,
                Box::new(HoloExpr::PowerShift {
                    s: s + 1.0,
                    c: *c,
                }),
            ),
            HoloExpr::Sum(terms) => {
                let ds: Vec<HoloExpr> = terms
                    .iter()
                    .map(HoloExpr::differentiate)
                    .filter(|d| !d.is_zero())
                    .collect();
                HoloExpr::Sum(ds)
            }
            HoloExpr::Product(factors) => {
                let mut terms = Vec::new();
                for k in 0..factors.len() {
                    let dk = factors[k].differentiate();
                    if dk.is_zero() {
                        continue;
                    }
                    let mut fs = factors.clone();
                    fs[k] = dk;
                    terms.push(HoloExpr::Product(fs));
                }
                HoloExpr::Sum(terms)
            }
            HoloExpr::Scale(a, inner) => HoloExpr::Scale(*a, Box::new(inner.differentiate())),
            HoloExpr::Dilate(l, inner) => HoloExpr::Scale(
                Complex64::new(*l, 0.0),
                Box::new(HoloExpr::Dilate(*l, Box::new(inner.differentiate()))),
            ),
        };
        if d.is_zero() {
            zero
        } else {
            d
        }
    }

    /// Parses the textual form, e.g. `sum(pshift(1,0,1),const(2,0))`.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse(text)
    }
}

impl std::str::FromStr for HoloExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HoloExpr::parse(s)
    }
}

impl fmt::Display for HoloExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, items: &[HoloExpr]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{it}")?;
            }
            write!(f, ")")
        }
        match self {
            HoloExpr::Const(c) => write!(f, "const({},{})", c.re, c.im),
            HoloExpr::PowerShift { s, c } => write!(f, "pshift({},{},{})", s.re, s.im, c),
            HoloExpr::Sum(t) => list(f, "sum", t),
            HoloExpr::Product(t) => list(f, "prod", t),
            HoloExpr::Scale(a, inner) => write!(f, "scale({},{},{inner})", a.re, a.im),
            HoloExpr::Dilate(l, inner) => write!(f, "dilate({l},{inner})"),
        }
    }
}

/// Open angular region `a < arg z < b`, optionally restricted to `|z| ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sector {
    pub a: f64,
    pub b: f64,
    pub truncated: bool,
}

impl Sector {
    pub fn new(a: f64, b: f64, truncated: bool) -> Result<Self> {
        if !(-PI <= a && a < b && b <= PI) {
            return Err(Error::param(format!("sector needs -π ≤ a < b ≤ π, got ({a}, {b})")));
        }
        Ok(Sector { a, b, truncated })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        in_sector(self, z)
    }
}

pub fn in_sector(sec: &Sector, z: Complex64) -> bool {
    let arg = z.im.atan2(z.re);
    sec.a < arg && arg < sec.b && (!sec.truncated || z.norm() >= 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(HoloExpr::constant(1.0, 0.0).eval(c(1.0, 1.0)).unwrap(), c(1.0, 0.0));
        let v = HoloExpr::pshift(1.0, 1.0).unwrap().eval(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, -0.5)).norm() < 1e-15);
        let v = HoloExpr::pshift(2.0, 1.0).unwrap().eval(c(1.0, 1.0)).unwrap();
        assert!((v - c(-3.0, -4.0) / 25.0).norm() < 1e-15);
        assert!(HoloExpr::constant(1.0, 0.0).eval(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn dilate_examples() {
        let e = HoloExpr::pshift(1.0, 1.0).unwrap();
        let v = e.dilate(2.0).unwrap().eval(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, -1.0 / 3.0)).norm() < 1e-15);
        assert!(e.dilate(0.0).is_err());
        let nested = e.dilate(2.0).unwrap().dilate(3.0).unwrap();
        let merged = e.dilate(6.0).unwrap();
        for k in 0..100 {
            let z = c(-5.0 + 0.1 * k as f64, 0.05 + 0.03 * k as f64);
            assert!((nested.eval(z).unwrap() - merged.eval(z).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn derivative_of_power_shift() {
        let d = HoloExpr::pshift(1.0, 1.0).unwrap().differentiate();
        let v = d.eval(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-15);
        assert_eq!(HoloExpr::constant(3.0, 1.0).differentiate(), HoloExpr::constant(0.0, 0.0));
    }

    #[test]
    fn log_eval_matches_eval() {
        let e = HoloExpr::sum(vec![
            HoloExpr::scale(c(2.0, -1.0), HoloExpr::pshift(1.3, 0.7).unwrap()),
            HoloExpr::product(vec![
                HoloExpr::power_shift(c(0.5, 0.2), 2.0).unwrap(),
                HoloExpr::pshift(1.0, 1.0).unwrap().dilate(3.0).unwrap(),
            ]),
            HoloExpr::constant(0.1, 0.0),
        ]);
        for (rho, th) in [(-3.0, 0.2), (0.0, 1.5), (2.5, 3.0), (0.7, 0.0), (-0.5, PI)] {
            let w = c(rho, th);
            let z = w.exp();
            let direct = e.eval_closed(z);
            let via_log = e.log_eval(w).exp();
            assert!((direct - via_log).norm() <= 1e-12 * direct.norm(), "{w}");
        }
    }

    #[test]
    fn log_eval_far_out() {
        let e = HoloExpr::pshift(1.5, 1.0).unwrap();
        let l = e.log_eval(c(1e4, 1.0));
        assert!((l.re + 1.5e4).abs() < 1e-9);
    }

    #[test]
    fn sector_membership() {
        let full = Sector::new(0.0, PI, false).unwrap();
        assert!(in_sector(&full, c(1.0, 1.0)));
        let narrow = Sector::new(PI / 2.0 - 0.1, PI / 2.0, true).unwrap();
        assert!(!in_sector(&narrow, c(0.0, 0.5)));
        assert!(in_sector(&narrow, Complex64::from_polar(2.0, PI / 2.0 - 0.05)));
        assert!(Sector::new(1.0, 0.5, false).is_err());
    }
}
