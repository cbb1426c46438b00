//! Piecewise power/log expressions on `(0, ∞)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term `coef · t^pow · (ln t)^log_pow`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coef: f64,
    pub pow: f64,
    #[serde(default)]
    pub log_pow: u32,
}

/// A sum of terms active on `[from, to)`; `to = None` means `∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub from: f64,
    #[serde(default)]
    pub to: Option<f64>,
    pub terms: Vec<PowerTerm>,
}

impl Piece {
    fn upper(&self) -> f64 {
        self.to.unwrap_or(f64::INFINITY)
    }

    fn contains(&self, t: f64) -> bool {
        self.from <= t && t < self.upper()
    }
}

/// Real function on `(0, ∞)` given by disjoint pieces; zero off the pieces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePower {
    pub pieces: Vec<Piece>,
}

impl PiecewisePower {
    pub fn validate(&self) -> Result<()> {
        if self.pieces.is_empty() {
            return Err(Error::Descriptor("piecewise expression needs at least one piece".into()));
        }
        let mut spans: Vec<(f64, f64)> = Vec::new();
        for p in &self.pieces {
            let (a, b) = (p.from, p.upper());
            if !(a >= 0.0 && a.is_finite() && b > a) {
                return Err(Error::Descriptor(format!("piece [{a}, {b}) is not a valid subinterval of (0, ∞)")));
            }
            if p.terms.iter().any(|t| !t.coef.is_finite() || !t.pow.is_finite()) {
                return Err(Error::Descriptor("piece terms must be finite".into()));
            }
            spans.push((a, b));
        }
        spans.sort_by(|x, y| x.0.total_cmp(&y.0));
        if spans.windows(2).any(|w| w[1].0 < w[0].1) {
            return Err(Error::Descriptor("pieces overlap".into()));
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.pieces
            .iter()
            .find(|p| p.contains(t))
            .map(|p| {
                let l = t.ln();
                p.terms
                    .iter()
                    .map(|term| term.coef * t.powf(term.pow) * l.powi(term.log_pow as i32))
                    .sum()
            })
            .unwrap_or(0.0)
    }

    /// `(ln|f(e^u)|, sign)`; the log-modulus is `-∞` where `f` vanishes.
    pub fn log_abs(&self, u: f64) -> (f64, f64) {
        let t = u.exp();
        let Some(piece) = self.pieces.iter().find(|p| p.contains(t)) else {
            return (f64::NEG_INFINITY, 0.0);
        };
        let logs: Vec<(f64, f64)> = piece
            .terms
            .iter()
            .filter(|term| term.coef != 0.0 && !(term.log_pow > 0 && u == 0.0))
            .map(|term| {
                let lu = if term.log_pow > 0 {
                    term.log_pow as f64 * u.abs().ln()
                } else {
                    0.0
                };
                let sign = term.coef.signum()
                    * if u < 0.0 && term.log_pow % 2 == 1 { -1.0 } else { 1.0 };
                (term.coef.abs().ln() + term.pow * u + lu, sign)
            })
            .collect();
        signed_log_sum(&logs)
    }

    /// Piece endpoints, where the function may jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| [p.from, p.upper()])
            .filter(|x| *x > 0.0 && x.is_finite())
            .collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// Smallest interval containing all pieces.
    pub fn support(&self) -> (f64, f64) {
        let lo = self.pieces.iter().map(|p| p.from).fold(f64::INFINITY, f64::min);
        let hi = self.pieces.iter().map(Piece::upper).fold(0.0, f64::max);
        (lo, hi)
    }
}

/// `ln|Σ s_k e^{l_k}|` and its sign.
pub(crate) fn signed_log_sum(terms: &[(f64, f64)]) -> (f64, f64) {
    let m = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, 0.0);
    }
    let s: f64 = terms.iter().map(|(l, sg)| sg * (l - m).exp()).sum();
    if s == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (m + s.abs().ln(), s.signum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PiecewisePower {
        serde_json::from_str(
            r#"{"pieces":[{"from":0,"to":1,"terms":[{"coef":2,"pow":0.5}]},
                          {"from":1,"terms":[{"coef":1,"pow":-2},{"coef":-3,"pow":-3,"log_pow":1}]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn eval_and_log_abs_agree() {
        let f = sample();
        f.validate().unwrap();
        for t in [0.01, 0.5, 1.0, 1.7, 30.0, 1e5] {
            let v = f.eval(t);
            let (l, s) = f.log_abs(t.ln());
            assert!((s * l.exp() - v).abs() <= 1e-12 * v.abs().max(1e-300), "{t}: {v} vs {}", s * l.exp());
        }
        assert_eq!(f.breakpoints(), vec![1.0]);
        assert_eq!(f.support(), (0.0, f64::INFINITY));
    }

    #[test]
    fn overlapping_pieces_rejected() {
        let f: PiecewisePower = serde_json::from_str(
            r#"{"pieces":[{"from":0,"to":2,"terms":[]},{"from":1,"terms":[]}]}"#,
        )
        .unwrap();
        assert!(f.validate().is_err());
    }
}
