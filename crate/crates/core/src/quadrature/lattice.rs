//! A fixed quadrature rule for `∫_ℝ h(x)|x|^α dx`.
//!
//! Residual norms compare two independently computed functions whose
//! difference may be tiny; an adaptive rule would chase round-off there, so
//! those norms use this fixed composite rule instead.

use super::gauss_kronrod::{WGK, XGK};

#[derive(Clone, Debug)]
pub struct LineLattice {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Composite 21-point Kronrod nodes and weights on `[a, b]`.
fn composite(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(panels * 21);
    let h = (b - a) / panels as f64;
    for k in 0..panels {
        let lo = a + h * k as f64;
        let c = lo + 0.5 * h;
        let half = 0.5 * h;
        for j in 0..10 {
            out.push((c - half * XGK[j], half * WGK[j]));
            out.push((c + half * XGK[j], half * WGK[j]));
        }
        out.push((c, half * WGK[10]));
    }
    out
}

impl LineLattice {
    /// Covers `|x| ∈ [0, e^{u_max}]`: a power-substituted rule on
    /// `|x| < e^{u_min}` and a log-uniform composite rule above it.
    pub fn new(alpha: f64, u_min: f64, u_max: f64, panels_per_unit: usize) -> Self {
        let a1 = 1.0 + alpha;
        let x0 = u_min.exp();
        let core_panels = (((u_max - u_min) * panels_per_unit as f64).ceil() as usize).max(1);
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for sign in [-1.0, 1.0] {
            for (s, w) in composite(0.0, 1.0, 4) {
                let x = x0 * s.powf(1.0 / a1);
                pts.push((sign * x, w * x0.powf(a1) / a1));
            }
            for (u, w) in composite(u_min, u_max, core_panels) {
                pts.push((sign * u.exp(), w * (a1 * u).exp()));
            }
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pts.into_iter().unzip();
        LineLattice { nodes, weights }
    }

    /// Default rule used for residual norms: `|x|` from `e^{-10}` to `e^{12}`.
    pub fn standard(alpha: f64) -> Self {
        LineLattice::new(alpha, -10.0, 12.0, 4)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `(Σ w |v|^p)^{1/p}` for sampled values; `p = ∞` gives the max.
    pub fn lp_norm(&self, values: &[f64], p: f64) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        if p.is_infinite() {
            return values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        }
        let s = super::compensated(self.weights.iter().zip(values).map(|(w, v)| w * v.abs().powf(p)));
        s.powf(1.0 / p)
    }

    /// Norm of a function of `x` sampled on this lattice.
    pub fn norm_of(&self, f: impl Fn(f64) -> f64, p: f64) -> f64 {
        let vals: Vec<f64> = self.nodes.iter().map(|&x| f(x)).collect();
        self.lp_norm(&vals, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_lorentzian() {
        let lat = LineLattice::standard(0.0);
        let n = lat.norm_of(|x| 1.0 / (1.0 + x * x).sqrt(), 2.0);
        // tail beyond e^12 contributes about 2e^{-12}
        assert!((n * n - std::f64::consts::PI).abs() < 2e-5);
    }

    #[test]
    fn weighted_monomial() {
        let lat = LineLattice::standard(0.5);
        let n = lat.norm_of(|x| if x.abs() <= 1.0 { 1.0 } else { 0.0 }, 1.0);
        // node placement straddles |x| = 1 so only rough agreement
        assert!((n - 2.0 / 1.5).abs() < 0.05);
    }
}
