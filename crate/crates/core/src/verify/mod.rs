//! Numerical verification of identities, q-difference equations and
//! `q → 1⁻` limits.

pub mod checks;
pub mod limits;
mod manifest;
pub mod registry;
mod report;

pub use checks::*;
pub use limits::*;
pub use manifest::{
    default_tolerance, expand_grid, sort_points, Manifest, ManifestEntry, ManifestError, DEFAULT_MANIFEST,
};
pub use report::{point, ParamPoint, VerificationReport, RESIDUAL_FLOOR};
