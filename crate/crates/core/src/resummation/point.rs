//! The two sides of the resummation formula for `₁ψ₀(a;−;q,x)` and the
//! associated connection data.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::{is_theta_zero, on_q_spiral, qexp_scaled, qpochhammer_infinite_scaled, qpochhammer_ratio_scaled, theta_ratio_scaled};
use crate::resummation::laplace::{lambda_on_q_powers, qlaplace_plus};
use crate::scaled::ScaledValue;
use crate::series::psi_of_xi_scaled;
use crate::value::SeriesValue;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Series parameter `a`, Laplace direction `λ`, evaluation point `x` and base `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResummationPoint {
    pub a: Complex64,
    pub lambda: Complex64,
    pub x: Complex64,
    pub q: Complex64,
}

impl ResummationPoint {
    pub fn new(
        a: impl Into<Complex64>,
        lambda: impl Into<Complex64>,
        x: impl Into<Complex64>,
        q: impl Into<Complex64>,
    ) -> Self {
        Self { a: a.into(), lambda: lambda.into(), x: x.into(), q: q.into() }
    }

    /// `ctx` with this point's base.
    pub fn context(&self, ctx: &QContext) -> Result<QContext> {
        ctx.with_q(self.q)
    }

    /// Checks `λ ∉ q^ℤ`, `x ∉ [−λ; q]` and `|ax| > 1`.
    pub fn validate(&self, ctx: &QContext) -> Result<()> {
        let ctx = self.context(ctx)?;
        if self.a.norm() == 0.0 || self.x.norm() == 0.0 || self.lambda.norm() == 0.0 {
            return Err(QError::ZeroArgument);
        }
        if lambda_on_q_powers(self.lambda, &ctx) {
            return Err(QError::DomainError(format!("λ = {} lies on q^ℤ", self.lambda)));
        }
        if on_q_spiral(self.x, self.lambda, &ctx) {
            return Err(QError::SpiralSingularity(format!(
                "x = {} lies on [−λ; q] with λ = {}",
                self.x, self.lambda
            )));
        }
        check_ax(self.a, self.x)
    }
}

fn check_ax(a: Complex64, x: Complex64) -> Result<()> {
    let m = (a * x).norm();
    if m <= 1.0 {
        return Err(QError::DomainError(format!("|ax| = {m} must exceed 1")));
    }
    Ok(())
}

fn theta_quotient(num: Complex64, den: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    if is_theta_zero(den, ctx) {
        return Err(QError::ThetaZeroDivision(format!("θ({den}) = 0")));
    }
    theta_ratio_scaled(num, den, ctx)
}

/// `(q;q)_∞ / (q/a;q)_∞ · θ(aqλ)/θ(qλ)`, the part shared by the resummed
/// value and the connection coefficient.
fn lambda_factor(a: Complex64, lambda: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    let q = ctx.q();
    let pre = qpochhammer_ratio_scaled(q, q / a, ctx)?;
    Ok(pre * theta_quotient(a * q * lambda, q * lambda, ctx)?)
}

/// The resummed value `(L⁺_{q,λ} ∘ B⁺ ₁ψ₀)(x) = Σ_{n∈ℤ} ψ(λqⁿ)/θ(λqⁿ/x)`,
/// with `ψ` in closed product form.
pub fn psi_hat_10(p: &ResummationPoint, ctx: &QContext) -> Result<SeriesValue> {
    p.validate(ctx)?;
    let ctx = p.context(ctx)?;
    qlaplace_plus(|xi| psi_of_xi_scaled(p.a, xi, &ctx), p.lambda, p.x, &ctx)
}

/// `(q;q)_∞/(q/a;q)_∞ · θ(aqλ)/θ(qλ) · θ(ax/λ)/θ(x/λ) · 1/(1/ax;q)_∞`.
pub fn theorem1_rhs(p: &ResummationPoint, ctx: &QContext) -> Result<SeriesValue> {
    check_ax(p.a, p.x)?;
    let ctx = p.context(ctx)?;
    let head = lambda_factor(p.a, p.lambda, &ctx)?;
    let mid = theta_quotient(p.a * p.x / p.lambda, p.x / p.lambda, &ctx)?;
    let tail = qpochhammer_infinite_scaled(ONE / (p.a * p.x), &ctx)?;
    let v = (head * mid)
        .checked_div(&tail)
        .ok_or_else(|| QError::PoleInDenominator("(1/ax;q)_∞ = 0".into()))?;
    Ok(v.to_series())
}

/// `ũ_∞(x) = θ(ax)/θ(x) · e_q(1/(ax))`, the solution at infinity.
pub fn u_infinity(a: Complex64, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(u_infinity_scaled(a, x, ctx)?.to_series())
}

pub(crate) fn u_infinity_scaled(a: Complex64, x: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    if a.norm() == 0.0 || x.norm() == 0.0 {
        return Err(QError::ZeroArgument);
    }
    let ratio = theta_quotient(a * x, x, ctx)?;
    Ok(ratio * qexp_scaled(ONE / (a * x), ctx)?)
}

/// The q-elliptic connection coefficient
/// `C(x;q) = (q;q)_∞/(q/a;q)_∞ · θ(aqλ)/θ(qλ) · θ(ax/λ)/θ(x/λ) · θ(x)/θ(ax)`.
pub fn connection_c(a: Complex64, lambda: Complex64, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    if a.norm() == 0.0 || x.norm() == 0.0 || lambda.norm() == 0.0 {
        return Err(QError::ZeroArgument);
    }
    let head = lambda_factor(a, lambda, ctx)?;
    let mid = theta_quotient(a * x / lambda, x / lambda, ctx)?;
    let last = theta_quotient(x, a * x, ctx)?;
    Ok((head * mid * last).to_series())
}
