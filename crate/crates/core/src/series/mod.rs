//! Basic and bilateral hypergeometric series, their convergence domains,
//! closed-form evaluations, and formal coefficient generators for divergent
//! series.

mod basic;
mod bilateral;
mod closed;
mod formal;
mod params;

pub use basic::{phi_radius, phi_rs, phi_rs_window};
pub use bilateral::{psi_annulus, psi_rs};
pub use closed::{
    horn_rhs, psi11_neg_lambda, psi_of_xi, psi_of_xi_scaled, qbb_lhs_rhs, qbb_rhs, ramanujan_rhs,
};
pub use formal::{formal_psi10, FormalBilateralSeries};
pub use params::HypergeometricParams;
