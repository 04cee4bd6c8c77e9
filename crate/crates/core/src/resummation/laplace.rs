//! q-Laplace transforms of the first kind (discrete sum along a q-spiral)
//! and second kind (contour integral against θ).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::{is_theta_zero, on_q_spiral, theta_scaled};
use crate::scaled::{ScaledComplex, ScaledValue};
use crate::summation::{sum_outward, Term, SAFETY};
use crate::value::SeriesValue;

/// Whether `λ` lies on `q^ℤ`, where the first-kind transform is undefined.
pub fn lambda_on_q_powers(lambda: Complex64, ctx: &QContext) -> bool {
    on_q_spiral(lambda, Complex64::new(-1.0, 0.0), ctx)
}

/// `(L⁺_{q,λ} φ)(x) = Σ_{n∈ℤ} φ(λqⁿ) / θ(λqⁿ/x)`.
///
/// The window starts at `n₀ = round(log_{|q|}(|x|/|λ|))`, where the theta
/// argument has unit modulus, and grows outward under the shared
/// truncation rule. `φ` returns scaled values so that the huge and tiny
/// magnitudes along the spiral survive.
pub fn qlaplace_plus<F>(phi: F, lambda: Complex64, x: Complex64, ctx: &QContext) -> Result<SeriesValue>
where
    F: Fn(Complex64) -> Result<ScaledValue>,
{
    Ok(qlaplace_plus_scaled(phi, lambda, x, ctx)?.to_series())
}

pub(crate) fn qlaplace_plus_scaled<F>(
    phi: F,
    lambda: Complex64,
    x: Complex64,
    ctx: &QContext,
) -> Result<crate::summation::ScaledSum>
where
    F: Fn(Complex64) -> Result<ScaledValue>,
{
    if x.re == 0.0 && x.im == 0.0 || lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(QError::ZeroArgument);
    }
    if lambda_on_q_powers(lambda, ctx) {
        return Err(QError::DomainError(format!("λ = {lambda} lies on q^ℤ")));
    }
    if on_q_spiral(x, lambda, ctx) {
        return Err(QError::SpiralSingularity(format!("x = {x} lies on [−λ; q] with λ = {lambda}")));
    }
    let q = ctx.q();
    let qa = q.norm();
    let center = if qa > 0.0 { ((x.norm() / lambda.norm()).ln() / qa.ln()).round() as i64 } else { 0 };
    sum_outward(
        center,
        None,
        None,
        |n| {
            let xi = (ScaledComplex::from_complex(lambda) * ScaledComplex::powi(q, n)).to_complex();
            if !xi.is_finite() || xi.norm() == 0.0 {
                return Err(QError::DomainError(format!("spiral point λq^{n} leaves the f64 range")));
            }
            let arg = xi / x;
            if is_theta_zero(arg, ctx) {
                return Err(QError::SpiralSingularity(format!("θ(λq^{n}/x) = 0")));
            }
            let th = theta_scaled(arg, ctx)?;
            let f = phi(xi)?;
            let value = f
                .value
                .checked_div(th.value)
                .ok_or_else(|| QError::SpiralSingularity(format!("θ(λq^{n}/x) = 0")))?;
            Ok(Term { value, rel_err: f.rel_err + th.rel_err })
        },
        ctx,
    )
}

/// `(L⁻ g)(x) = (1/2πi) ∮_{|ξ|=r} g(ξ) θ(x/ξ) dξ/ξ` by the trapezoid rule
/// on `quad_points` equally spaced nodes, checked against `2·quad_points`.
///
/// The doubled rule is returned. Its error estimate is the change under
/// doubling plus the rounding level `SAFETY·ε·max|g θ|` of the nodes; the
/// transform fails when the change exceeds `tol_rel·|result|` plus that
/// rounding level.
pub fn qlaplace_minus<G>(g: G, r: f64, x: Complex64, ctx: &QContext) -> Result<SeriesValue>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    if !(r > 0.0 && r.is_finite()) {
        return Err(QError::DomainError(format!("contour radius r = {r} must be positive")));
    }
    if x.re == 0.0 && x.im == 0.0 {
        return Err(QError::ZeroArgument);
    }
    let n = ctx.quad_points();
    let coarse = trapezoid(&g, r, x, n, ctx)?;
    let fine = trapezoid(&g, r, x, 2 * n, ctx)?;
    let change = (fine.0 - coarse.0).norm();
    let rounding = SAFETY * f64::EPSILON * fine.1.max(coarse.1);
    let allowed = ctx.tol_rel() * fine.0.norm() + rounding;
    if change > allowed {
        return Err(QError::QuadratureNotConverged { change, allowed });
    }
    Ok(SeriesValue { value: fine.0, err_estimate: change + rounding, terms_used: 3 * n })
}

/// Trapezoid value and the largest integrand magnitude on the nodes.
fn trapezoid<G>(g: &G, r: f64, x: Complex64, n: usize, ctx: &QContext) -> Result<(Complex64, f64)>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = ScaledComplex::ZERO;
    let mut peak = 0.0f64;
    for j in 0..n {
        let xi = Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
        let gx = g(xi)?;
        let t = ScaledComplex::from_complex(gx) * theta_scaled(x / xi, ctx)?.value;
        peak = peak.max(t.abs());
        acc += t;
    }
    Ok((acc.scale(1.0 / n as f64).to_complex(), peak))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn minus_of_constant_is_one() {
        let ctx = QContext::new(0.5).unwrap();
        let v = qlaplace_minus(|_| Ok(c(1.0)), 1.0, c(0.3), &ctx).unwrap();
        assert!((v.value - c(1.0)).norm() < 1e-13);
    }

    #[test]
    fn minus_of_monomials() {
        // L⁻ ξⁿ = q^{n(n−1)/2} xⁿ
        let ctx = QContext::new(0.5).unwrap();
        let x = Complex64::new(0.3, 0.2);
        for n in 0..4i32 {
            let v = qlaplace_minus(|xi| Ok(xi.powi(n)), 1.0, x, &ctx).unwrap();
            let want = x.powi(n) * 0.5f64.powi(n * (n - 1) / 2);
            assert!((v.value - want).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn minus_rejects_bad_radius_and_unresolved_integrand() {
        let ctx = QContext::new(0.5).unwrap();
        assert!(qlaplace_minus(|_| Ok(c(1.0)), 0.0, c(0.3), &ctx).is_err());
        // a pole just outside the contour is not resolved by 16 or 32 nodes
        let ctx = ctx.with_quad_points(16).unwrap().with_tol_rel(1e-12).unwrap();
        let r = qlaplace_minus(|xi| Ok(c(1.0) / (c(1.02) - xi)), 1.0, c(0.3), &ctx);
        assert!(matches!(r, Err(QError::QuadratureNotConverged { .. })));
    }

    #[test]
    fn plus_of_constant_is_finite() {
        let ctx = QContext::new(0.3).unwrap();
        let v = qlaplace_plus(|_| Ok(ScaledValue::exact(ScaledComplex::ONE)), c(0.7), c(0.4), &ctx).unwrap();
        assert!(v.value.is_finite() && v.value.norm() > 0.0);
    }

    #[test]
    fn plus_singular_cases() {
        let ctx = QContext::new(0.3).unwrap();
        let one = |_| Ok(ScaledValue::exact(ScaledComplex::ONE));
        assert!(matches!(qlaplace_plus(one, c(0.7), c(-0.7), &ctx), Err(QError::SpiralSingularity(_))));
        assert!(matches!(qlaplace_plus(one, c(0.7), c(-0.21), &ctx), Err(QError::SpiralSingularity(_))));
        assert!(matches!(qlaplace_plus(one, c(0.09), c(0.4), &ctx), Err(QError::DomainError(_))));
    }
}
