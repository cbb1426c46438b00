//! `𝓗_φ H = H 𝓗_φ` on `L^p_{|x|^α}` inside the Muckenhoupt window.

use crate::error::{Error, Result};
use crate::kernels::{moment, Kernel, SpaceParams};
use crate::operators::{apply_real, hilbert_transform};
use crate::quadrature::{LineLattice, QuadSpec};
use crate::spaces::lp_weighted_norm;

#[derive(Clone, Debug)]
pub struct CommutationReport {
    /// `‖H(𝓗_φ g) - 𝓗_φ(Hg)‖ / ‖g‖`.
    pub relative: f64,
    pub difference_norm: f64,
    pub g_norm: f64,
    pub nodes: usize,
}

/// Both compositions are evaluated per lattice node by nested quadrature:
/// the principal value of the ray integral on one side, the ray integral
/// of the principal value on the other.
pub fn commutation_residual(
    k: &Kernel,
    g: impl Fn(f64) -> f64,
    p: f64,
    alpha: f64,
    spec: &QuadSpec,
) -> Result<CommutationReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::param("commutation is checked for 1 < p < ∞"));
    }
    if !(alpha > -1.0 && alpha < p - 1.0) {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} lies outside the window (-1, {}) where H is bounded",
            p - 1.0
        )));
    }
    let sp = SpaceParams::real_lp(p, alpha)?;
    if moment(k, &sp, spec).diverged {
        return Err(Error::Precondition("the kernel moment diverges for this space".into()));
    }
    let inner = QuadSpec { abs_tol: 0.0, ..*spec };
    let hardy_of_g = |x: f64| apply_real(k, &g, x, &[], &inner).value;
    let hilbert_of_g = |x: f64| hilbert_transform(&g, &[x], &inner)[0].value;

    let lattice = LineLattice::new(alpha, -6.0, 8.0, 1);
    let diffs: Vec<f64> = lattice
        .nodes()
        .iter()
        .map(|&x| {
            let lhs = hilbert_transform(hardy_of_g, &[x], spec)[0].value;
            let rhs = apply_real(k, hilbert_of_g, x, &[], spec).value;
            lhs - rhs
        })
        .collect();
    let difference_norm = lattice.lp_norm(&diffs, p);
    let g_norm = lp_weighted_norm(&g, p, alpha, &[], spec)?.value;
    Ok(CommutationReport {
        relative: difference_norm / g_norm,
        difference_norm,
        g_norm,
        nodes: diffs.len(),
    })
}
