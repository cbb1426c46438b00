//! Hausdorff operators on the upper half-plane and the real line.

pub mod analysis;
pub mod error;
pub mod holo_expr;
pub mod kernels;
pub mod quadrature;
pub mod operators;
pub mod spaces;

pub use error::{Error, Result};
pub use holo_expr::{in_sector, HoloExpr, Sector};
pub use kernels::{Kernel, Space, SpaceParams};
pub use operators::{apply_complex, apply_real, HausdorffImage};
pub use quadrature::{IntegralResult, QuadSpec, RaySubstitution};
