//! Foundational q-series kernels.

mod functions;
mod pochhammer;
mod theta;

pub use functions::{
    gamma_classical, pochhammer_classical, qexp, qexp_scaled, qgamma, qgamma_scaled,
};
pub use pochhammer::{
    infinite_zero_index,
    qpochhammer_finite, qpochhammer_infinite, qpochhammer_infinite_scaled, qpochhammer_multi,
    qpochhammer_multi_scaled, qpochhammer_ratio, qpochhammer_ratio_scaled,
};
pub(crate) use pochhammer::qpochhammer_finite_scaled;
pub use theta::{
    is_theta_zero, on_q_spiral, theta, theta_ratio, theta_ratio_scaled, theta_scaled, theta_series,
};
