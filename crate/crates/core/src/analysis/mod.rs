//! Numerical certification of the operator-norm identities: test-function
//! families, sign constants, two-sided norm estimates, commutation with the
//! Hilbert transform, boundary compatibility and weight diagnostics.

mod boundary;
mod commutation;
mod families;
mod muckenhoupt;
mod norm_bounds;
mod sign_lemma;

pub use boundary::{boundary_compat_residual, BoundaryCompat};
pub use commutation::{commutation_residual, CommutationReport};
pub use families::{compensated_norm_band, default_eps_grid, f_eps, phi_eps, BandRow, CompensatedBand};
pub use muckenhoupt::{muckenhoupt_quotient, reverse_holder_quotient, WeightQuotient};
pub use norm_bounds::{
    default_delta_grid, dirichlet_bound, estimate_operator_norm, mechanism_residual, sharpness_gap, DirichletBound,
    NormBounds, NormEstimate, RayleighRow, UnboundedEvidence,
};
pub use sign_lemma::{sign_lemma_constants, verify_sign_lemma, Part, Sign, SignCase, SignCheck, SignLemmaConstants, SignLemmaReport};
