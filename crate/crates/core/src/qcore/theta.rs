//! Jacobi theta `θ(x) = Σ_{n∈ℤ} q^{n(n-1)/2} x^n = (q, -x, -q/x; q)_∞`.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::pochhammer::{qpochhammer_infinite_scaled, qpochhammer_ratio_scaled};
use crate::scaled::{ScaledComplex, ScaledValue};
use crate::summation::{sum_outward, Term};
use crate::value::SeriesValue;

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// θ(x) by the triple product, in scaled form.
pub fn theta_scaled(x: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    if is_zero(x) {
        return Err(QError::ZeroArgument);
    }
    let q = ctx.q();
    let qq = qpochhammer_infinite_scaled(q, ctx)?;
    let left = qpochhammer_infinite_scaled(-x, ctx)?;
    let right = qpochhammer_infinite_scaled(-q / x, ctx)?;
    Ok(qq * left * right)
}

/// θ(x) by Jacobi's triple product `(q, -x, -q/x; q)_∞`.
pub fn theta(x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(theta_scaled(x, ctx)?.to_series())
}

/// θ(x) by direct adaptive summation of the bilateral series. Independent of
/// [`theta`]; used to cross-check it.
pub fn theta_series(x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    if is_zero(x) {
        return Err(QError::ZeroArgument);
    }
    let q = ctx.q();
    let sum = sum_outward(
        0,
        None,
        None,
        |n| Ok(Term::exact(ScaledComplex::q_triangular(q, n) * ScaledComplex::powi(x, n))),
        ctx,
    )?;
    Ok(sum.to_series())
}

/// θ(x) / θ(y) without forming either theta; the `(q;q)_∞` factors cancel.
pub fn theta_ratio_scaled(x: Complex64, y: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    if is_zero(x) || is_zero(y) {
        return Err(QError::ZeroArgument);
    }
    let q = ctx.q();
    let wrap = |e: QError| match e {
        QError::PoleInDenominator(_) => QError::ThetaZeroDivision(format!("θ({y}) = 0")),
        other => other,
    };
    let a = qpochhammer_ratio_scaled(-x, -y, ctx).map_err(wrap)?;
    let b = qpochhammer_ratio_scaled(-q / x, -q / y, ctx).map_err(wrap)?;
    Ok(a * b)
}

pub fn theta_ratio(x: Complex64, y: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(theta_ratio_scaled(x, y, ctx)?.to_series())
}

/// Membership of `x` in the spiral `[-λ; q] = { -λ q^k : k ∈ ℤ }`, up to the
/// relative distance `spiral_eps`. Only the turns `k0 ± 2` with
/// `k0 = log_{|q|}(|x|/|λ|)` are inspected.
pub fn on_q_spiral(x: Complex64, lambda: Complex64, ctx: &QContext) -> bool {
    if is_zero(x) || is_zero(lambda) {
        return false;
    }
    let q = ctx.q();
    let base = -lambda;
    let near = |k: i64| (x - base * ScaledComplex::powi(q, k).to_complex()).norm() / x.norm() < ctx.spiral_eps();
    let qa = q.norm();
    if qa == 0.0 {
        return near(0);
    }
    let k0 = (x.norm() / lambda.norm()).ln() / qa.ln();
    let lo = k0.floor() as i64 - 2;
    let hi = k0.ceil() as i64 + 2;
    (lo..=hi).any(near)
}

/// Whether θ vanishes at `x`, i.e. `x ∈ -q^ℤ`.
pub fn is_theta_zero(x: Complex64, ctx: &QContext) -> bool {
    on_q_spiral(x, Complex64::new(1.0, 0.0), ctx)
}
