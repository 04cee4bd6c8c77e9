//! Closed-form product evaluations of bilateral series.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::{
    gamma_classical, infinite_zero_index, is_theta_zero, qgamma_scaled, qpochhammer_infinite_scaled,
    qpochhammer_ratio_scaled, theta_ratio_scaled, theta_scaled,
};
use crate::scaled::ScaledValue;
use crate::series::bilateral::psi_rs;
use crate::series::params::HypergeometricParams;
use crate::value::SeriesValue;
use crate::verify::{default_tolerance, point, VerificationReport};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Ramanujan's sum
/// `₁ψ₁(a;b;q,z) = (q, b/a, az, q/az; q)_∞ / (b, q/a, z, b/az; q)_∞`,
/// computed as four factor-by-factor ratios.
pub fn ramanujan_rhs(
    a: Complex64,
    b: Complex64,
    q: Complex64,
    z: Complex64,
    ctx: &QContext,
) -> Result<SeriesValue> {
    if is_zero(a) || is_zero(z) {
        return Err(QError::ZeroArgument);
    }
    let ctx = ctx.with_q(q)?;
    let az = a * z;
    let v = qpochhammer_ratio_scaled(q, b, &ctx)?
        * qpochhammer_ratio_scaled(b / a, q / a, &ctx)?
        * qpochhammer_ratio_scaled(az, z, &ctx)?
        * qpochhammer_ratio_scaled(q / az, b / az, &ctx)?;
    Ok(v.to_series())
}

/// `ψ(ξ) = (q;q)_∞/(q/a;q)_∞ · θ(aξ)/θ(ξ) · (−q/ξ;q)_∞`, the q-Borel image of
/// `₁ψ₀(a;−;q,·)`, in scaled form.
///
/// The theta quotient and `(−q/ξ;q)_∞` are combined into
/// `(−aξ;q)_∞ (−q/(aξ);q)_∞ / (−ξ;q)_∞`, which is how the product is
/// evaluated. Arguments on the zero set `−q^ℤ` of `θ(ξ)` are rejected.
pub fn psi_of_xi_scaled(a: Complex64, xi: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    if is_zero(a) || is_zero(xi) {
        return Err(QError::ZeroArgument);
    }
    if is_theta_zero(xi, ctx) {
        return Err(QError::ThetaZeroDivision(format!("ψ(ξ): θ(ξ) = 0 at ξ = {xi}")));
    }
    let q = ctx.q();
    let prefactor = qpochhammer_ratio_scaled(q, q / a, ctx)?;
    let theta_part = qpochhammer_ratio_scaled(-a * xi, -xi, ctx).map_err(|e| match e {
        QError::PoleInDenominator(_) => QError::ThetaZeroDivision(format!("θ({xi}) = 0")),
        other => other,
    })?;
    let tail = qpochhammer_infinite_scaled(-q / (a * xi), ctx)?;
    Ok(prefactor * theta_part * tail)
}

pub fn psi_of_xi(a: Complex64, xi: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(psi_of_xi_scaled(a, xi, ctx)?.to_series())
}

/// `₁ψ₁(−λ;0;q,1/ax) = θ(λ/ax) / ((−q/λ;q)_∞ (1/ax;q)_∞)`.
pub fn psi11_neg_lambda(
    lambda: Complex64,
    a: Complex64,
    x: Complex64,
    ctx: &QContext,
) -> Result<SeriesValue> {
    if is_zero(lambda) || is_zero(a) || is_zero(x) {
        return Err(QError::ZeroArgument);
    }
    let q = ctx.q();
    let w = ONE / (a * x);
    let d1 = -q / lambda;
    if let Some(k) = infinite_zero_index(d1, ctx) {
        return Err(QError::PoleInDenominator(format!("(−q/λ;q)_∞ = 0 (λ = −q^{})", k + 1)));
    }
    if let Some(k) = infinite_zero_index(w, ctx) {
        return Err(QError::PoleInDenominator(format!("(1/ax;q)_∞ = 0 (1/ax = q^-{k})")));
    }
    let num = theta_scaled(lambda * w, ctx)?;
    let den = qpochhammer_infinite_scaled(d1, ctx)? * qpochhammer_infinite_scaled(w, ctx)?;
    let v = num
        .checked_div(&den)
        .ok_or_else(|| QError::PoleInDenominator("₁ψ₁(−λ;0;q,1/ax) denominator".into()))?;
    Ok(v.to_series())
}

/// Horn's bilateral binomial sum
/// `Γ(β)Γ(1−α)/Γ(β−α) · (1−z)^{β−α−1} / (−z)^{β−1}` on `|z| = 1`,
/// principal branches.
pub fn horn_rhs(alpha: Complex64, beta: Complex64, z: Complex64) -> Result<Complex64> {
    let d = beta - alpha;
    if d.re <= 1.0 {
        return Err(QError::DomainError(format!("Re(β − α) = {} must exceed 1", d.re)));
    }
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(QError::DomainError(format!("|z| = {} must equal 1", z.norm())));
    }
    let g = gamma_classical(beta)? * gamma_classical(ONE - alpha)? / gamma_classical(d)?;
    let one_minus_z = ONE - z;
    let power = if is_zero(one_minus_z) { Complex64::new(0.0, 0.0) } else { one_minus_z.powc(d - 1.0) };
    Ok(g * power / (-z).powc(beta - 1.0))
}

/// `q^s` on the principal branch for real `q ∈ (0, 1)`.
fn qpow(q: f64, s: Complex64) -> Complex64 {
    (s * q.ln()).exp()
}

/// Right side of the q-analogue of Horn's sum:
/// `Γ_q(β)Γ_q(1−α)/Γ_q(β−α) · θ(−q^α z)/θ(−q^{α+1−β} z) · (q^{α+1−β}z;q)_∞/(z;q)_∞`.
///
/// Uses the context's `q`, which must be real in (0, 1).
pub fn qbb_rhs(alpha: Complex64, beta: Complex64, z: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    let q = ctx.real_q()?;
    if is_zero(z) {
        return Err(QError::ZeroArgument);
    }
    let gammas = (qgamma_scaled(beta, ctx)? * qgamma_scaled(ONE - alpha, ctx)?)
        .checked_div(&qgamma_scaled(beta - alpha, ctx)?)
        .ok_or_else(|| QError::PoleInDenominator("Γ_q(β − α) = 0".into()))?;
    let shift = qpow(q, alpha + 1.0 - beta);
    let thetas = theta_ratio_scaled(-qpow(q, alpha) * z, -shift * z, ctx)?;
    let binom = qpochhammer_ratio_scaled(shift * z, z, ctx)?;
    Ok((gammas * thetas * binom).to_series())
}

/// Compares `₁ψ₁(q^α;q^β;q,z)`, summed directly, with [`qbb_rhs`] inside
/// the annulus `|q^{β−α}| < |z| < 1`.
pub fn qbb_lhs_rhs(
    alpha: Complex64,
    beta: Complex64,
    z: Complex64,
    q: f64,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    ctx.real_q()?;
    let inner = q.powf((beta - alpha).re);
    let m = z.norm();
    if !(inner < m && m < 1.0) {
        return Err(QError::OutsideAnnulus { modulus: m, inner, outer: 1.0 });
    }
    let params = HypergeometricParams::new(vec![qpow(q, alpha)], vec![qpow(q, beta)], q)?;
    let lhs = psi_rs(&params, z, &ctx)?;
    let rhs = qbb_rhs(alpha, beta, z, &ctx)?;
    let p = point([("alpha", alpha), ("beta", beta), ("q", Complex64::new(q, 0.0)), ("z", z)]);
    Ok(VerificationReport::compare("qbb", p, lhs, rhs, default_tolerance("qbb")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpochhammer_infinite;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ramanujan_matches_series() {
        let ctx = QContext::new(0.3).unwrap();
        let p = HypergeometricParams::new(vec![c(0.5)], vec![c(0.1)], 0.3).unwrap();
        let s = psi_rs(&p, c(0.5), &ctx).unwrap();
        let r = ramanujan_rhs(c(0.5), c(0.1), c(0.3), c(0.5), &ctx).unwrap();
        assert!((s.value - r.value).norm() < 1e-9 * r.value.norm());
    }

    #[test]
    fn ramanujan_with_b_equal_q_is_q_binomial() {
        // b = q truncates the sum to n >= 0: Σ (a;q)_n/(q;q)_n z^n = (az;q)/(z;q)
        let ctx = QContext::new(0.4).unwrap();
        let (a, z) = (c(0.3), Complex64::new(0.2, 0.5));
        let r = ramanujan_rhs(a, c(0.4), c(0.4), z, &ctx).unwrap();
        let b = qpochhammer_infinite(a * z, &ctx).unwrap().value / qpochhammer_infinite(z, &ctx).unwrap().value;
        assert!((r.value - b).norm() < 1e-12 * b.norm());
    }

    #[test]
    fn ramanujan_poles() {
        let ctx = QContext::new(0.3).unwrap();
        let q = c(0.3);
        assert!(matches!(ramanujan_rhs(c(0.5), c(0.1), q, c(1.0), &ctx), Err(QError::PoleInDenominator(_))));
        assert!(matches!(ramanujan_rhs(c(0.5), c(0.1), q, c(0.2), &ctx), Err(QError::PoleInDenominator(_))));
    }

    #[test]
    fn psi_of_xi_matches_borel_series() {
        let ctx = QContext::new(0.4).unwrap();
        let a = c(0.2);
        for xi in [c(0.7), Complex64::new(0.3, 0.4), c(0.15), Complex64::new(-0.5, 0.1)] {
            let p = HypergeometricParams::new(vec![a], vec![c(0.0)], 0.4).unwrap();
            let s = psi_rs(&p, -xi, &ctx).unwrap();
            let v = psi_of_xi(a, xi, &ctx).unwrap();
            assert!((s.value - v.value).norm() < 1e-9 * v.value.norm(), "ξ = {xi}");
        }
    }

    #[test]
    fn psi_of_xi_special_cases() {
        let ctx = QContext::new(0.4).unwrap();
        assert!(matches!(psi_of_xi(c(0.2), c(-1.0), &ctx), Err(QError::ThetaZeroDivision(_))));
        let xi = Complex64::new(1.3, 0.2);
        let v = psi_of_xi(c(1.0), xi, &ctx).unwrap().value;
        let w = qpochhammer_infinite(-c(0.4) / xi, &ctx).unwrap().value;
        assert!((v - w).norm() < 1e-14 * w.norm());
    }

    #[test]
    fn psi11_closed_form_matches_series() {
        let ctx = QContext::new(0.3).unwrap();
        let (lambda, a, x) = (c(0.7), c(0.4), c(5.0));
        let p = HypergeometricParams::new(vec![-lambda], vec![c(0.0)], 0.3).unwrap();
        let s = psi_rs(&p, ONE / (a * x), &ctx).unwrap();
        let v = psi11_neg_lambda(lambda, a, x, &ctx).unwrap();
        assert!((s.value - v.value).norm() < 1e-9 * v.value.norm());
        // λ = −q: (−q/λ;q)_∞ = (1;q)_∞ = 0
        assert!(matches!(psi11_neg_lambda(c(-0.3), a, x, &ctx), Err(QError::PoleInDenominator(_))));
        // 1/ax = q^{-1}
        let x = ONE / (a * c(1.0 / 0.3));
        assert!(matches!(psi11_neg_lambda(lambda, a, x, &ctx), Err(QError::PoleInDenominator(_))));
    }

    #[test]
    fn horn_examples() {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let v = horn_rhs(c(0.0), c(2.0), z).unwrap();
        let want = (ONE - z) / (-z);
        assert!((v - want).norm() < 1e-13);
        assert!(matches!(horn_rhs(c(0.0), c(1.0), z), Err(QError::DomainError(_))));
        assert!(horn_rhs(c(0.3), c(2.0), Complex64::new(0.0, 1.0)).unwrap().is_finite());
        assert!(matches!(horn_rhs(c(0.0), c(2.5), c(0.5)), Err(QError::DomainError(_))));
    }

    #[test]
    fn qbb_identity_and_annulus() {
        let ctx = QContext::new(0.3).unwrap();
        let r = qbb_lhs_rhs(c(0.2), c(1.8), c(0.6), 0.3, &ctx).unwrap();
        assert!(r.residual <= 1e-8, "residual {}", r.residual);
        assert!(r.pass);
        let edge = 0.3f64.powf(1.6);
        assert!(matches!(qbb_lhs_rhs(c(0.2), c(1.8), c(edge), 0.3, &ctx), Err(QError::OutsideAnnulus { .. })));
    }

    #[test]
    fn qbb_rhs_tends_to_horn() {
        let (alpha, beta, z) = (c(0.3), c(2.0), Complex64::new(0.0, 1.0));
        let target = horn_rhs(alpha, beta, z).unwrap();
        let mut errs = Vec::new();
        for k in [4, 6, 8, 10] {
            let q = 1.0 - 2f64.powi(-k);
            let ctx = QContext::new(q).unwrap();
            let v = qbb_rhs(alpha, beta, z, &ctx).unwrap().value;
            errs.push((v - target).norm() / target.norm());
        }
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!(errs[3] < 5e-2, "{errs:?}");
    }
}
