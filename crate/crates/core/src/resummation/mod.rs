//! q-Borel and q-Laplace transforms of both kinds, their compositions, and
//! the resummation of the divergent series `₁ψ₀(a;−;q,x)`.

mod borel;
mod inverse;
mod laplace;
mod point;

pub use borel::{qborel_minus, qborel_plus};
pub use inverse::{laplace_borel_minus, laplace_borel_plus};
pub use laplace::{lambda_on_q_powers, qlaplace_minus, qlaplace_plus};
pub use point::{connection_c, psi_hat_10, theorem1_rhs, u_infinity, ResummationPoint};
