//! Kernels `φ` on `(0, ∞)`, the classical catalog, and their moments.

mod moments;
mod piecewise;
mod space;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use moments::{is_nonnegative, log_moment, moment, moment_with_exponent, signed_moment, tail_moment};
pub use piecewise::{Piece, PiecewisePower, PowerTerm};
pub use space::{Space, SpaceParams};

/// A kernel descriptor. JSON uses an internal `"type"` tag, e.g.
/// `{"type":"cesaro_like","nu":2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Kernel {
    /// `t^{-ν}` on `(1, ∞)`.
    CesaroLike { nu: f64 },
    /// `β(t-1)^{β-1} t^{-β}` on `(1, ∞)`.
    GeneralizedCesaro { beta: f64 },
    /// `a(1/t)/t` for a piecewise expression `a`.
    #[serde(rename = "s_a")]
    SA { a: PiecewisePower },
    /// `t^{β-1}(1+t)^{-μ}`, the kernel of `S_a` with `a(t) = t^{μ-β}/(t+1)^μ`.
    #[serde(rename = "stieltjes")]
    GeneralizedStieltjes { beta: f64, mu: f64 },
    /// `1/t` on `(1, ∞)`: the averaging operator `(1/x)∫_0^x f`.
    Hardy,
    #[serde(rename = "user")]
    UserExpr(PiecewisePower),
    /// `inner` restricted to `(δ, 1/δ)`.
    #[serde(rename = "truncate")]
    Truncated { delta: f64, inner: Box<Kernel> },
    /// `inner(t)/t`.
    Tilde { inner: Box<Kernel> },
}

/// `ln(e^u - 1)` for `u > 0`.
fn ln_expm1(u: f64) -> f64 {
    if u > 30.0 {
        u + (-(-u).exp()).ln_1p()
    } else {
        u.exp_m1().ln()
    }
}

/// `ln(1 + e^u)`.
fn softplus(u: f64) -> f64 {
    if u > 0.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

impl Kernel {
    pub fn cesaro_like(nu: f64) -> Result<Self> {
        let k = Kernel::CesaroLike { nu };
        k.validate()?;
        Ok(k)
    }

    pub fn generalized_cesaro(beta: f64) -> Result<Self> {
        let k = Kernel::GeneralizedCesaro { beta };
        k.validate()?;
        Ok(k)
    }

    pub fn stieltjes(beta: f64, mu: f64) -> Result<Self> {
        let k = Kernel::GeneralizedStieltjes { beta, mu };
        k.validate()?;
        Ok(k)
    }

    pub fn s_a(a: PiecewisePower) -> Result<Self> {
        let k = Kernel::SA { a };
        k.validate()?;
        Ok(k)
    }

    pub fn user(expr: PiecewisePower) -> Result<Self> {
        let k = Kernel::UserExpr(expr);
        k.validate()?;
        Ok(k)
    }

    /// `φ χ_(δ, 1/δ)`.
    pub fn truncate(&self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain(format!("truncation parameter must lie in (0, 1), got {delta}")));
        }
        Ok(Kernel::Truncated {
            delta,
            inner: Box::new(self.clone()),
        })
    }

    /// `φ(t)/t`.
    pub fn tilde(&self) -> Self {
        Kernel::Tilde {
            inner: Box::new(self.clone()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let k: Kernel = serde_json::from_str(text)?;
        k.validate()?;
        Ok(k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("kernel descriptors always serialise")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Descriptor(m));
        match self {
            Kernel::CesaroLike { nu } if !(*nu > 0.0 && nu.is_finite()) => bad(format!("nu must be positive, got {nu}")),
            Kernel::GeneralizedCesaro { beta } if !(*beta > 0.0 && beta.is_finite()) => {
                bad(format!("beta must be positive, got {beta}"))
            }
            Kernel::GeneralizedStieltjes { beta, mu } if !(beta.is_finite() && mu.is_finite()) => {
                bad("stieltjes parameters must be finite".into())
            }
            Kernel::SA { a } => a.validate(),
            Kernel::UserExpr(e) => e.validate(),
            Kernel::Truncated { delta, inner } => {
                if !(*delta > 0.0 && *delta < 1.0) {
                    return bad(format!("delta must lie in (0, 1), got {delta}"));
                }
                inner.validate()
            }
            Kernel::Tilde { inner } => inner.validate(),
            _ => Ok(()),
        }
    }

    /// `φ(t)` for `t > 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::domain(format!("kernels are defined on t > 0, got {t}")));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            Kernel::CesaroLike { nu } => {
                if t > 1.0 {
                    t.powf(-nu)
                } else {
                    0.0
                }
            }
            Kernel::GeneralizedCesaro { beta } => {
                if t > 1.0 {
                    beta * (t - 1.0).powf(beta - 1.0) * t.powf(-beta)
                } else {
                    0.0
                }
            }
            Kernel::SA { a } => a.eval(1.0 / t) / t,
            Kernel::GeneralizedStieltjes { beta, mu } => t.powf(beta - 1.0) * (1.0 + t).powf(-mu),
            Kernel::Hardy => {
                if t > 1.0 {
                    1.0 / t
                } else {
                    0.0
                }
            }
            Kernel::UserExpr(e) => e.eval(t),
            Kernel::Truncated { delta, inner } => {
                if *delta < t && t < 1.0 / delta {
                    inner.eval_unchecked(t)
                } else {
                    0.0
                }
            }
            Kernel::Tilde { inner } => inner.eval_unchecked(t) / t,
        }
    }

    /// `(ln|φ(e^u)|, sign φ(e^u))`, with log-modulus `-∞` off the support.
    /// Stays finite where `φ` itself would overflow or underflow.
    pub fn log_abs(&self, u: f64) -> (f64, f64) {
        const ZERO: (f64, f64) = (f64::NEG_INFINITY, 0.0);
        match self {
            Kernel::CesaroLike { nu } => {
                if u > 0.0 {
                    (-nu * u, 1.0)
                } else {
                    ZERO
                }
            }
            Kernel::GeneralizedCesaro { beta } => {
                if u > 0.0 {
                    let mid = if *beta == 1.0 { 0.0 } else { (beta - 1.0) * ln_expm1(u) };
                    (beta.ln() + mid - beta * u, 1.0)
                } else {
                    ZERO
                }
            }
            Kernel::SA { a } => {
                let (l, s) = a.log_abs(-u);
                (l - u, s)
            }
            Kernel::GeneralizedStieltjes { beta, mu } => ((beta - 1.0) * u - mu * softplus(u), 1.0),
            Kernel::Hardy => {
                if u > 0.0 {
                    (-u, 1.0)
                } else {
                    ZERO
                }
            }
            Kernel::UserExpr(e) => e.log_abs(u),
            Kernel::Truncated { delta, inner } => {
                let edge = -delta.ln();
                if -edge < u && u < edge {
                    inner.log_abs(u)
                } else {
                    ZERO
                }
            }
            Kernel::Tilde { inner } => {
                let (l, s) = inner.log_abs(u);
                (l - u, s)
            }
        }
    }

    /// Smallest interval `(lo, hi)` outside which `φ` vanishes.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Kernel::CesaroLike { .. } | Kernel::GeneralizedCesaro { .. } | Kernel::Hardy => (1.0, f64::INFINITY),
            Kernel::SA { a } => {
                let (lo, hi) = a.support();
                let inv = |x: f64| if x == 0.0 { f64::INFINITY } else { 1.0 / x };
                (if hi.is_infinite() { 0.0 } else { 1.0 / hi }, inv(lo))
            }
            Kernel::GeneralizedStieltjes { .. } => (0.0, f64::INFINITY),
            Kernel::UserExpr(e) => e.support(),
            Kernel::Truncated { delta, inner } => {
                let (lo, hi) = inner.support();
                (lo.max(*delta), hi.min(1.0 / delta))
            }
            Kernel::Tilde { inner } => inner.support(),
        }
    }

    /// Points in `(0, ∞)` where `φ` may jump or lose smoothness.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = match self {
            Kernel::CesaroLike { .. } | Kernel::GeneralizedCesaro { .. } | Kernel::Hardy => vec![1.0],
            Kernel::SA { a } => a.breakpoints().into_iter().map(|x| 1.0 / x).collect(),
            Kernel::GeneralizedStieltjes { .. } => vec![],
            Kernel::UserExpr(e) => e.breakpoints(),
            Kernel::Truncated { delta, inner } => {
                let mut v = inner.breakpoints();
                v.extend([*delta, 1.0 / delta]);
                v
            }
            Kernel::Tilde { inner } => inner.breakpoints(),
        };
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// Support and breakpoints on the log axis `u = ln t`.
    pub(crate) fn log_layout(&self) -> (f64, f64, Vec<f64>) {
        let (lo, hi) = self.support();
        let u_lo = if lo > 0.0 { lo.ln() } else { f64::NEG_INFINITY };
        let u_hi = if hi.is_finite() { hi.ln() } else { f64::INFINITY };
        let breaks = self.breakpoints().into_iter().map(f64::ln).collect();
        (u_lo, u_hi, breaks)
    }
}

/// One line of the kernel catalog.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    #[serde(rename = "type")]
    pub type_tag: &'static str,
    pub parameters: &'static str,
    pub formula: &'static str,
}

/// Kernel types accepted in JSON descriptors.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            type_tag: "cesaro_like",
            parameters: "nu: real > 0",
            formula: "t^(-nu) on (1, inf)",
        },
        CatalogEntry {
            type_tag: "generalized_cesaro",
            parameters: "beta: real > 0",
            formula: "beta (t-1)^(beta-1) t^(-beta) on (1, inf)",
        },
        CatalogEntry {
            type_tag: "stieltjes",
            parameters: "beta: real, mu: real",
            formula: "t^(beta-1) (1+t)^(-mu)",
        },
        CatalogEntry {
            type_tag: "s_a",
            parameters: "a: {pieces: [...]}",
            formula: "a(1/t)/t",
        },
        CatalogEntry {
            type_tag: "hardy",
            parameters: "",
            formula: "1/t on (1, inf)",
        },
        CatalogEntry {
            type_tag: "user",
            parameters: "pieces: [{from, to?, terms: [{coef, pow, log_pow?}]}]",
            formula: "sum of coef t^pow (ln t)^log_pow on each [from, to)",
        },
        CatalogEntry {
            type_tag: "truncate",
            parameters: "delta: real in (0, 1), inner: kernel",
            formula: "inner(t) on (delta, 1/delta), 0 elsewhere",
        },
        CatalogEntry {
            type_tag: "tilde",
            parameters: "inner: kernel",
            formula: "inner(t)/t",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let k = Kernel::cesaro_like(2.0).unwrap();
        assert_eq!(k.eval(2.0).unwrap(), 0.25);
        assert_eq!(k.eval(0.5).unwrap(), 0.0);
        assert_eq!(k.tilde().eval(2.0).unwrap(), 0.125);
        assert!(k.eval(0.0).is_err());
        let tr = k.truncate(0.5).unwrap();
        assert_eq!(tr.eval(3.0).unwrap(), 0.0);
        let g = Kernel::generalized_cesaro(2.0).unwrap();
        assert_eq!(g.truncate(0.5).unwrap().eval(1.5).unwrap(), g.eval(1.5).unwrap());
        assert_eq!(k.tilde().tilde().eval(3.0).unwrap(), k.eval(3.0).unwrap() / 9.0);
        assert!(k.truncate(1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        for text in [
            r#"{"type":"cesaro_like","nu":2.0}"#,
            r#"{"type":"generalized_cesaro","beta":1.0}"#,
            r#"{"type":"stieltjes","beta":0.5,"mu":1.5}"#,
            r#"{"type":"hardy"}"#,
            r#"{"type":"truncate","delta":0.1,"inner":{"type":"hardy"}}"#,
            r#"{"type":"tilde","inner":{"type":"cesaro_like","nu":3.0}}"#,
            r#"{"type":"user","pieces":[{"from":1.0,"to":null,"terms":[{"coef":1.0,"pow":-2.0,"log_pow":0}]}]}"#,
            r#"{"type":"s_a","a":{"pieces":[{"from":0.0,"to":1.0,"terms":[{"coef":1.0,"pow":0.0,"log_pow":0}]}]}}"#,
        ] {
            let k = Kernel::from_json(text).unwrap();
            assert_eq!(Kernel::from_json(&k.to_json()).unwrap(), k);
        }
        assert!(Kernel::from_json(r#"{"type":"cesaro_like","nu":-1}"#).is_err());
        assert!(Kernel::from_json(r#"{"type":"nope"}"#).is_err());
    }

    #[test]
    fn log_abs_matches_eval() {
        let kernels = [
            Kernel::cesaro_like(1.5).unwrap(),
            Kernel::generalized_cesaro(0.5).unwrap(),
            Kernel::generalized_cesaro(3.0).unwrap(),
            Kernel::stieltjes(0.5, 1.5).unwrap(),
            Kernel::Hardy,
            Kernel::Hardy.truncate(0.1).unwrap().tilde(),
            Kernel::from_json(r#"{"type":"s_a","a":{"pieces":[{"from":0,"to":1,"terms":[{"coef":1,"pow":0}]}]}}"#).unwrap(),
        ];
        for k in &kernels {
            for t in [0.05, 0.5, 1.3, 4.0, 90.0] {
                let v = k.eval(t).unwrap();
                let (l, s) = k.log_abs(t.ln());
                let w = s * l.exp();
                assert!((v - w).abs() <= 1e-12 * v.abs().max(1e-300), "{k:?} at {t}: {v} vs {w}");
            }
        }
    }

    #[test]
    fn s_a_with_indicator() {
        // a = χ_(0,1) gives φ = χ_(1,∞)/t, the Hardy kernel
        let k = Kernel::from_json(r#"{"type":"s_a","a":{"pieces":[{"from":0,"to":1,"terms":[{"coef":1,"pow":0}]}]}}"#).unwrap();
        assert_eq!(k.support(), (1.0, f64::INFINITY));
        for t in [0.3, 2.0, 7.0] {
            assert_eq!(k.eval(t).unwrap(), Kernel::Hardy.eval(t).unwrap());
        }
    }

    #[test]
    fn far_log_values_stay_finite() {
        let k = Kernel::generalized_cesaro(0.5).unwrap();
        let (l, _) = k.log_abs(5000.0);
        assert!((l - (0.5f64.ln() - 5000.0)).abs() < 1e-9);
        let s = Kernel::stieltjes(0.5, 1.5).unwrap();
        assert!((s.log_abs(-3000.0).0 - 1500.0).abs() < 1e-9);
    }
}
