//! Sign-definite parts of `Φ_ε` on the sector `π/2 - ε₀ < arg z < π/2`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;

use super::families::phi_eps;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Position of `q = (1+α)/p` relative to the even integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignCase {
    /// `q ∈ (4k, 4k+2)`.
    Lower { k: u32 },
    /// `q ∈ (4k+2, 4k+4)`.
    Upper { k: u32 },
    /// `q = 4k`, `k ≥ 1`.
    MultipleOfFour { k: u32 },
    /// `q = 4k+2`.
    TwoModFour { k: u32 },
}

impl fmt::Display for SignCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignCase::Lower { k } => write!(f, "({}, {})", 4 * k, 4 * k + 2),
            SignCase::Upper { k } => write!(f, "({}, {})", 4 * k + 2, 4 * k + 4),
            SignCase::MultipleOfFour { k } => write!(f, "={}", 4 * k),
            SignCase::TwoModFour { k } => write!(f, "={}", 4 * k + 2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignLemmaConstants {
    pub part: Part,
    pub sign: Sign,
    /// Half-opening `ε₀` of the sector below `π/2`.
    pub eps_pa: f64,
    /// Lower bound for `|part Φ_ε| / |Φ_ε|` on the sector.
    pub c_pa: f64,
    pub case: SignCase,
}

/// Margin kept below the supremum of admissible sector openings.
const RETREAT: f64 = 0.99;

pub fn sign_lemma_constants(p: f64, alpha: f64) -> Result<SignLemmaConstants> {
    if !(p >= 1.0 && p.is_finite()) || !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::param("sign constants need finite p ≥ 1 and alpha > -1"));
    }
    let q = (1.0 + alpha) / p;
    let n = (q / 2.0).round();
    if n >= 1.0 && (q - 2.0 * n).abs() <= 1e-12 * q {
        let eps_pa = p * PI / (3.0 * (1.0 + alpha));
        let half = n as u32;
        let (sign, case) = if half % 2 == 0 {
            (Sign::Plus, SignCase::MultipleOfFour { k: half / 2 })
        } else {
            (Sign::Minus, SignCase::TwoModFour { k: half / 2 })
        };
        return Ok(SignLemmaConstants {
            part: Part::Re,
            sign,
            eps_pa,
            c_pa: 0.5,
            case,
        });
    }
    let k = (q / 4.0).floor();
    let lower_half = q - 4.0 * k < 2.0;
    // The argument (q+ε)ψ of Φ_ε must stay strictly between consecutive
    // multiples of π for ψ ∈ (π/2 - ε₀, π/2], ε < ε₀.
    let (j, top) = if lower_half { (2.0 * k, 4.0 * k + 2.0) } else { (2.0 * k + 1.0, 4.0 * k + 4.0) };
    let sup = FRAC_PI_2.min(FRAC_PI_2 - j * PI / q).min(top - q);
    let eps_pa = RETREAT * sup;
    let c_pa = (q * (FRAC_PI_2 - eps_pa)).sin().abs().min(((q + eps_pa) * FRAC_PI_2).sin().abs());
    let k = k as u32;
    Ok(if lower_half {
        SignLemmaConstants {
            part: Part::Im,
            sign: Sign::Minus,
            eps_pa,
            c_pa,
            case: SignCase::Lower { k },
        }
    } else {
        SignLemmaConstants {
            part: Part::Im,
            sign: Sign::Plus,
            eps_pa,
            c_pa,
            case: SignCase::Upper { k },
        }
    })
}

#[derive(Clone, Debug)]
pub struct SignCheck {
    pub eps: f64,
    /// `ε < ε₀`; checks outside the hypotheses are reported, not asserted.
    pub within_hypotheses: bool,
    pub samples: usize,
    pub min_ratio: f64,
    pub violations: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct SignLemmaReport {
    pub constants: SignLemmaConstants,
    pub checks: Vec<SignCheck>,
}

impl SignLemmaReport {
    /// Violations among checks that lie within the hypotheses.
    pub fn violation_count(&self) -> usize {
        self.checks.iter().filter(|c| c.within_hypotheses).map(|c| c.violations.len()).sum()
    }
}

/// Samples the sector on a log-radial grid `|z| ∈ [1e-2, 1e2]` with
/// `grid_size` points per `ε`, recording sign failures and ratios below
/// `c_pa (1 - 1e-9)`.
pub fn verify_sign_lemma(p: f64, alpha: f64, eps_list: &[f64], grid_size: usize) -> Result<SignLemmaReport> {
    let constants = sign_lemma_constants(p, alpha)?;
    let n_r = ((grid_size as f64).sqrt().ceil() as usize).max(2);
    let n_th = grid_size.div_ceil(n_r).max(1);
    let floor = constants.c_pa * (1.0 - 1e-9);
    let mut checks = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let f = phi_eps(p, alpha, eps)?;
        let mut min_ratio = f64::INFINITY;
        let mut violations = Vec::new();
        let mut samples = 0;
        'outer: for i in 0..n_r {
            let r = 10f64.powf(-2.0 + 4.0 * i as f64 / (n_r - 1) as f64);
            for j in 0..n_th {
                if samples == grid_size {
                    break 'outer;
                }
                let th = FRAC_PI_2 - constants.eps_pa * (j as f64 + 0.5) / n_th as f64;
                let z = Complex64::from_polar(r, th);
                let v = f.eval(z)?;
                let part = match constants.part {
                    Part::Re => v.re,
                    Part::Im => v.im,
                };
                let ratio = part.abs() / v.norm();
                min_ratio = min_ratio.min(ratio);
                if part * constants.sign.as_f64() <= 0.0 || ratio < floor {
                    violations.push(z);
                }
                samples += 1;
            }
        }
        checks.push(SignCheck {
            eps,
            within_hypotheses: eps > 0.0 && eps < constants.eps_pa,
            samples,
            min_ratio,
            violations,
        });
    }
    Ok(SignLemmaReport { constants, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_cases() {
        let c = sign_lemma_constants(1.0, 1.0).unwrap();
        assert_eq!((c.part, c.sign, c.c_pa), (Part::Re, Sign::Minus, 0.5));
        assert!((c.eps_pa - PI / 6.0).abs() < 1e-15);
        let c = sign_lemma_constants(1.0, 3.0).unwrap();
        assert_eq!((c.part, c.sign, c.case), (Part::Re, Sign::Plus, SignCase::MultipleOfFour { k: 1 }));
        assert!((c.eps_pa - PI / 12.0).abs() < 1e-15);
    }

    #[test]
    fn odd_cases() {
        let c = sign_lemma_constants(2.0, 1.0).unwrap();
        assert_eq!((c.part, c.sign, c.case), (Part::Im, Sign::Minus, SignCase::Lower { k: 0 }));
        assert!(c.eps_pa < FRAC_PI_2 && c.c_pa > 0.0);
        let c = sign_lemma_constants(1.0, 2.0).unwrap();
        assert_eq!((c.part, c.sign), (Part::Im, Sign::Plus));
    }

    #[test]
    fn no_violations() {
        let r = verify_sign_lemma(2.0, 1.0, &[0.1, 0.01], 2500).unwrap();
        assert_eq!(r.violation_count(), 0);
        assert!(r.checks.iter().all(|c| c.samples == 2500 && c.min_ratio >= r.constants.c_pa * (1.0 - 1e-9)));
        let r = verify_sign_lemma(1.0, 1.0, &[1.0], 100).unwrap();
        assert!(!r.checks[0].within_hypotheses);
    }
}
