//! The operators `ℋ_φ` on the half-plane and `𝓗_φ` on the real line, and the
//! Hilbert transform.

mod hausdorff;

pub use hausdorff::{
    apply_complex, apply_real, apply_real_complex, cauchy_derivative, derivative_identity_residual, hilbert_transform,
    DerivativeResidual, HausdorffImage, LatticeHilbert,
};
pub(crate) use hausdorff::apply_closed;
