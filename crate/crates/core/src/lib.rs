//! q-series special functions, first- and second-kind q-Borel/q-Laplace
//! resummation, and an identity-verification engine for the divergent
//! bilateral series `₁ψ₀(a;−;q,x)`.
//!
//! All kernels are pure functions of their arguments and a [`QContext`].

pub mod cli;
pub mod context;
pub mod error;
pub mod literal;
pub mod qcore;
pub mod resummation;
pub mod scaled;
pub mod series;
pub mod summation;
pub mod value;
pub mod verify;

pub use context::QContext;
pub use error::{QError, Result};
pub use scaled::{ScaledComplex, ScaledValue};
pub use value::SeriesValue;

pub use num_complex::Complex64;
