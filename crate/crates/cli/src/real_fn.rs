//! Real-line test functions for `commute`.

use hausdorff::HoloExpr;
use num_complex::Complex64;

use crate::commands::CliError;

pub enum RealFn {
    Lorentzian,
    Gaussian,
    OddGaussian,
    Re(HoloExpr),
    Im(HoloExpr),
}

impl RealFn {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "lorentzian" => Ok(RealFn::Lorentzian),
            "gaussian" => Ok(RealFn::Gaussian),
            "odd_gaussian" => Ok(RealFn::OddGaussian),
            _ => {
                if let Some(e) = text.strip_prefix("re:") {
                    Ok(RealFn::Re(e.parse()?))
                } else if let Some(e) = text.strip_prefix("im:") {
                    Ok(RealFn::Im(e.parse()?))
                } else {
                    Err(CliError::Usage(format!("unknown real function '{text}'")))
                }
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            RealFn::Lorentzian => 1.0 / (1.0 + x * x),
            RealFn::Gaussian => (-x * x).exp(),
            RealFn::OddGaussian => x * (-x * x).exp(),
            RealFn::Re(e) => e.eval_closed(Complex64::new(x, 0.0)).re,
            RealFn::Im(e) => e.eval_closed(Complex64::new(x, 0.0)).im,
        }
    }
}
