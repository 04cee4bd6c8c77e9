//! Identity checks: each evaluates both sides of an identity, or the two
//! halves of a q-difference equation, and reports the residual.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::{is_theta_zero, on_q_spiral, qpochhammer_ratio_scaled, theta, theta_ratio_scaled, theta_series};
use crate::resummation::{
    connection_c, laplace_borel_minus, laplace_borel_plus, psi_hat_10, theorem1_rhs, u_infinity,
    ResummationPoint,
};
use crate::scaled::ScaledComplex;
use crate::series::{
    formal_psi10, phi_rs, psi_annulus, psi_rs, ramanujan_rhs, FormalBilateralSeries,
    HypergeometricParams,
};
use crate::value::SeriesValue;
use crate::verify::manifest::default_tolerance;
use crate::verify::report::{point, VerificationReport};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `x·y` on values, adding relative errors.
fn mul(x: SeriesValue, k: Complex64) -> SeriesValue {
    SeriesValue { value: x.value * k, err_estimate: x.err_estimate * k.norm(), terms_used: x.terms_used }
}

fn add(x: SeriesValue, y: SeriesValue) -> SeriesValue {
    SeriesValue {
        value: x.value + y.value,
        err_estimate: x.err_estimate + y.err_estimate,
        terms_used: x.terms_used + y.terms_used,
    }
}

/// Ramanujan's `₁ψ₁` sum: direct bilateral sum against the product formula,
/// inside `|b/a| < |z| < 1`.
pub fn check_ramanujan(
    a: Complex64,
    b: Complex64,
    q: Complex64,
    z: Complex64,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let params = HypergeometricParams::new(vec![a], vec![b], q)?;
    let (inner, outer) = psi_annulus(&params)?;
    if !(inner < z.norm() && z.norm() < outer) {
        return Err(QError::OutsideAnnulus { modulus: z.norm(), inner, outer });
    }
    let lhs = psi_rs(&params, z, &ctx)?;
    let rhs = ramanujan_rhs(a, b, q, z, &ctx)?;
    let p = point([("a", a), ("b", b), ("q", q), ("z", z)]);
    Ok(VerificationReport::compare("ramanujan", p, lhs, rhs, default_tolerance("ramanujan")))
}

fn two_phi_one(a: Complex64, b: Complex64, c: Complex64, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    phi_rs(&HypergeometricParams::new(vec![a, b], vec![c], ctx.q())?, x, ctx)
}

/// Watson's connection formula for `₂φ₁(a,b;c;q,x)`, restricted to points
/// where both `|x| < 1` and `|cq/(abx)| < 1`, so that all three series
/// converge.
pub fn check_watson(
    a: Complex64,
    b: Complex64,
    cc: Complex64,
    q: Complex64,
    x: Complex64,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    if a.norm() == 0.0 || b.norm() == 0.0 || x.norm() == 0.0 {
        return Err(QError::ZeroArgument);
    }
    if on_q_spiral(a / b, c(-1.0), &ctx) {
        return Err(QError::ParameterDegeneracy(format!("a/b = {} lies on q^ℤ", a / b)));
    }
    let w = cc * q / (a * b * x);
    if x.norm() >= 1.0 || w.norm() >= 1.0 {
        return Err(QError::DomainError(format!(
            "needs |x| < 1 and |cq/(abx)| < 1, got {} and {}",
            x.norm(),
            w.norm()
        )));
    }
    let lhs = two_phi_one(a, b, cc, x, &ctx)?;
    let branch = |a: Complex64, b: Complex64| -> Result<SeriesValue> {
        let coeff = qpochhammer_ratio_scaled(b, cc, &ctx)?
            * qpochhammer_ratio_scaled(cc / a, b / a, &ctx)?
            * qpochhammer_ratio_scaled(a * x, x, &ctx)?
            * qpochhammer_ratio_scaled(q / (a * x), q / x, &ctx)?;
        let series = two_phi_one(a, a * q / cc, a * q / b, w, &ctx)?;
        let k = coeff.to_series();
        Ok(SeriesValue {
            value: k.value * series.value,
            err_estimate: k.err_estimate * series.value.norm() + k.value.norm() * series.err_estimate,
            terms_used: k.terms_used + series.terms_used,
        })
    };
    let rhs = add(branch(a, b)?, branch(b, a)?);
    let p = point([("a", a), ("b", b), ("c", cc), ("q", q), ("x", x)]);
    Ok(VerificationReport::compare("watson", p, lhs, rhs, default_tolerance("watson")))
}

/// Which solution of Heine's equation is substituted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeineSolution {
    /// `₂φ₁(a,b;c;q,x)` at the origin.
    Phi,
    /// `θ(−ax)/θ(−x) · ₂φ₁(a, aq/c; aq/b; q, cq/(abx))` at infinity.
    V1,
    /// `θ(−bx)/θ(−x) · ₂φ₁(b, bq/c; bq/a; q, cq/(abx))` at infinity.
    V2,
}

impl HeineSolution {
    pub fn label(self) -> &'static str {
        match self {
            HeineSolution::Phi => "heine",
            HeineSolution::V1 => "heine_v1",
            HeineSolution::V2 => "heine_v2",
        }
    }
}

fn heine_solution(
    which: HeineSolution,
    a: Complex64,
    b: Complex64,
    cc: Complex64,
    x: Complex64,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let q = ctx.q();
    let at_infinity = |a: Complex64, b: Complex64| -> Result<SeriesValue> {
        if is_theta_zero(-x, ctx) {
            return Err(QError::ThetaZeroDivision(format!("θ(−x) = 0 at x = {x}")));
        }
        let ratio = theta_ratio_scaled(-a * x, -x, ctx)?.to_series();
        let s = two_phi_one(a, a * q / cc, a * q / b, cc * q / (a * b * x), ctx)?;
        Ok(SeriesValue {
            value: ratio.value * s.value,
            err_estimate: ratio.err_estimate * s.value.norm() + ratio.value.norm() * s.err_estimate,
            terms_used: ratio.terms_used + s.terms_used,
        })
    };
    match which {
        HeineSolution::Phi => two_phi_one(a, b, cc, x, ctx),
        HeineSolution::V1 => at_infinity(a, b),
        HeineSolution::V2 => at_infinity(b, a),
    }
}

/// Residual of Heine's equation
/// `(c − abqx)u(q²x) − {c + q − (a+b)qx}u(qx) + q(1 − x)u(x) = 0`,
/// normalised by the largest of the three terms.
pub fn check_heine_residual(
    a: Complex64,
    b: Complex64,
    cc: Complex64,
    q: Complex64,
    x: Complex64,
    which: HeineSolution,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let u0 = heine_solution(which, a, b, cc, x, &ctx)?;
    let u1 = heine_solution(which, a, b, cc, q * x, &ctx)?;
    let u2 = heine_solution(which, a, b, cc, q * q * x, &ctx)?;
    let t2 = mul(u2, cc - a * b * q * x);
    let t1 = mul(u1, cc + q - (a + b) * q * x);
    let t0 = mul(u0, q * (ONE - x));
    let scale = t2.value.norm().max(t1.value.norm()).max(t0.value.norm());
    let p = point([("a", a), ("b", b), ("c", cc), ("q", q), ("x", x)]);
    let label = which.label();
    Ok(VerificationReport::with_scale(label, p, add(t2, t0), t1, scale, default_tolerance(label)))
}

/// Representation of `₁ψ₁(a;b;q,·)` used in the first-order equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BquaVariant {
    /// Direct bilateral summation; needs `z` and `qz` inside the annulus.
    Series,
    /// Ramanujan's product formula.
    ClosedForm,
}

/// Residual of `(b/q − az)u(qz) + (z − 1)u(z) = 0` for `u = ₁ψ₁(a;b;q,·)`.
/// `z = 1` is rejected as a degenerate coefficient.
pub fn check_qdiff_bqua(
    a: Complex64,
    b: Complex64,
    q: Complex64,
    z: Complex64,
    variant: BquaVariant,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    if (z - ONE).norm() < ctx.spiral_eps() {
        return Err(QError::DomainError("z = 1 makes the coefficient z − 1 vanish".into()));
    }
    let params = HypergeometricParams::new(vec![a], vec![b], q)?;
    let u = |z: Complex64| -> Result<SeriesValue> {
        match variant {
            BquaVariant::Series => {
                let (inner, outer) = psi_annulus(&params)?;
                if !(inner < z.norm() && z.norm() < outer) {
                    return Err(QError::OutsideAnnulus { modulus: z.norm(), inner, outer });
                }
                psi_rs(&params, z, &ctx)
            }
            BquaVariant::ClosedForm => ramanujan_rhs(a, b, q, z, &ctx),
        }
    };
    let lhs = mul(u(q * z)?, b / q - a * z);
    let rhs = mul(u(z)?, ONE - z);
    let label = match variant {
        BquaVariant::Series => "bqua",
        BquaVariant::ClosedForm => "bqua_closed",
    };
    let p = point([("a", a), ("b", b), ("q", q), ("z", z)]);
    Ok(VerificationReport::compare(label, p, lhs, rhs, default_tolerance(label)))
}

/// Representation of the solution substituted into the degenerate equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bqua2Repr {
    Theorem1Rhs,
    UInfinity,
    PsiHat10,
}

impl Bqua2Repr {
    pub const ALL: [Bqua2Repr; 3] = [Bqua2Repr::Theorem1Rhs, Bqua2Repr::UInfinity, Bqua2Repr::PsiHat10];

    pub fn name(self) -> &'static str {
        match self {
            Bqua2Repr::Theorem1Rhs => "theorem1_rhs",
            Bqua2Repr::UInfinity => "u_infinity",
            Bqua2Repr::PsiHat10 => "psi_hat_10",
        }
    }
}

/// Residual of `(1/q − ax)ũ(qx) + xũ(x) = 0`. Both `x` and `qx` must satisfy
/// `|ax| > 1` and lie off `[−λ; q]`.
pub fn check_qdiff_bqua2(
    a: Complex64,
    lambda: Complex64,
    x: Complex64,
    q: Complex64,
    repr: Bqua2Repr,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let p0 = ResummationPoint::new(a, lambda, x, q);
    let p1 = ResummationPoint::new(a, lambda, q * x, q);
    p0.validate(ctx)?;
    p1.validate(ctx)?;
    let qctx = p0.context(ctx)?;
    let u = |p: &ResummationPoint| match repr {
        Bqua2Repr::Theorem1Rhs => theorem1_rhs(p, ctx),
        Bqua2Repr::UInfinity => u_infinity(p.a, p.x, &qctx),
        Bqua2Repr::PsiHat10 => psi_hat_10(p, ctx),
    };
    let lhs = mul(u(&p1)?, ONE / q - a * x);
    let rhs = mul(u(&p0)?, -x);
    let pt = point([("a", a), ("lambda", lambda), ("q", q), ("x", x)]);
    let identity = format!("bqua2[{}]", repr.name());
    Ok(VerificationReport::compare(&identity, pt, lhs, rhs, default_tolerance("bqua2")))
}

/// The resummed value against the closed product.
pub fn check_theorem1(p: &ResummationPoint, ctx: &QContext) -> Result<VerificationReport> {
    let lhs = psi_hat_10(p, ctx)?;
    let rhs = theorem1_rhs(p, ctx)?;
    let pt = point([("a", p.a), ("lambda", p.lambda), ("q", p.q), ("x", p.x)]);
    Ok(VerificationReport::compare("theorem1", pt, lhs, rhs, default_tolerance("theorem1")))
}

/// `C(qx; q)` against `C(x; q)`.
///
/// Single-valuedness of `C` in `x` holds by construction, since `C` is built
/// from theta functions of `x` alone, and is not tested numerically.
pub fn check_elliptic(
    a: Complex64,
    lambda: Complex64,
    x: Complex64,
    q: Complex64,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let lhs = connection_c(a, lambda, q * x, &ctx)?;
    let rhs = connection_c(a, lambda, x, &ctx)?;
    let pt = point([("a", a), ("lambda", lambda), ("q", q), ("x", x)]);
    Ok(VerificationReport::compare("elliptic", pt, lhs, rhs, default_tolerance("elliptic")))
}

/// `C(x; q) = 1` when `a = 1`.
pub fn check_elliptic_unit(lambda: Complex64, x: Complex64, q: Complex64, ctx: &QContext) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let lhs = connection_c(ONE, lambda, x, &ctx)?;
    let pt = point([("a", ONE), ("lambda", lambda), ("q", q), ("x", x)]);
    Ok(VerificationReport::compare(
        "elliptic_unit",
        pt,
        lhs,
        SeriesValue::exact(ONE),
        default_tolerance("elliptic_unit"),
    ))
}

/// Coefficient recurrence `q^{n−1} c_n + (1 − a q^{n−1}) c_{n−1} = 0` of
/// `₁ψ₀(a;−;q,x)`, obtained by matching powers of `x` in the degenerate
/// equation. Reports the largest normalised residual over `n ∈ −6..=6`.
pub fn check_psi10_recurrence(a: Complex64, q: Complex64, ctx: &QContext) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let f = formal_psi10(a, &ctx)?;
    let mut worst = (0.0f64, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for n in -6..=6i64 {
        let qn1 = ScaledComplex::powi(q, n - 1);
        let cn = f.coeff_scaled(n)?;
        let cm = f.coeff_scaled(n - 1)?;
        let left = qn1 * cn;
        let right = -(ScaledComplex::ONE - ScaledComplex::from_complex(a) * qn1) * cm;
        let scale = left.abs().max(right.abs());
        let res = if scale == 0.0 { 0.0 } else { (left - right).abs() / scale };
        if res >= worst.0 {
            worst = (res, left.to_complex(), right.to_complex());
        }
    }
    let pt = point([("a", a), ("q", q)]);
    let tol = default_tolerance("psi10_recurrence");
    let scale = worst.2.norm().max(worst.1.norm());
    Ok(VerificationReport::with_scale(
        "psi10_recurrence",
        pt,
        SeriesValue::exact(worst.1),
        SeriesValue::exact(worst.2),
        scale,
        tol,
    ))
}

/// Triple product against the bilateral theta series.
pub fn check_theta(x: Complex64, q: Complex64, ctx: &QContext) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let lhs = theta(x, &ctx)?;
    let rhs = theta_series(x, &ctx)?;
    let pt = point([("q", q), ("x", x)]);
    Ok(VerificationReport::compare("theta", pt, lhs, rhs, default_tolerance("theta")))
}

/// Test series for the transform-inverse laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSeries {
    /// `Σ_{n≥0} xⁿ = 1/(1−x)`.
    Geometric,
    /// `1 + x`.
    Linear,
}

impl TestSeries {
    pub fn series(self) -> FormalBilateralSeries {
        match self {
            TestSeries::Geometric => FormalBilateralSeries::one_sided("1/(1-x)", |_| ONE),
            TestSeries::Linear => FormalBilateralSeries::polynomial("1+x", vec![ONE, ONE]),
        }
    }

    pub fn closed_form(self, x: Complex64) -> Complex64 {
        match self {
            TestSeries::Geometric => ONE / (ONE - x),
            TestSeries::Linear => ONE + x,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            TestSeries::Geometric => "geometric",
            TestSeries::Linear => "linear",
        }
    }
}

/// `L⁺_{q,λ} ∘ B⁺ f = f`.
pub fn check_inverse_plus(
    f: TestSeries,
    lambda: Complex64,
    x: Complex64,
    q: Complex64,
    ctx: &QContext,
) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let lhs = laplace_borel_plus(&f.series(), lambda, x, &ctx)?;
    let label = format!("inverse_plus_{}", f.suffix());
    let pt = point([("lambda", lambda), ("q", q), ("x", x)]);
    let tol = default_tolerance(&label);
    Ok(VerificationReport::compare(&label, pt, lhs, SeriesValue::exact(f.closed_form(x)), tol))
}

/// `L⁻ ∘ B⁻ f = f`.
pub fn check_inverse_minus(f: TestSeries, x: Complex64, q: Complex64, ctx: &QContext) -> Result<VerificationReport> {
    let ctx = ctx.with_q(q)?;
    let lhs = laplace_borel_minus(&f.series(), x, &ctx)?;
    let label = format!("inverse_minus_{}", f.suffix());
    let pt = point([("q", q), ("x", x)]);
    let tol = default_tolerance(&label);
    Ok(VerificationReport::compare(&label, pt, lhs, SeriesValue::exact(f.closed_form(x)), tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    #[test]
    fn ramanujan_reference_point() {
        let r = check_ramanujan(c(0.5), c(0.1), c(0.3), c(0.5), &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(matches!(
            check_ramanujan(c(0.5), c(0.1), c(0.3), c(0.1), &ctx()),
            Err(QError::OutsideAnnulus { .. })
        ));
        assert!(matches!(
            check_ramanujan(c(0.5), c(0.5), c(0.3), c(0.7), &ctx()),
            Err(QError::OutsideAnnulus { .. })
        ));
    }

    #[test]
    fn watson_point_and_degeneracy() {
        let r = check_watson(c(0.3), c(0.5), c(0.05), c(0.2), c(0.6), &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(matches!(
            check_watson(c(0.5), c(0.5), c(0.05), c(0.2), c(0.6), &ctx()),
            Err(QError::ParameterDegeneracy(_))
        ));
        // a/b = q
        assert!(matches!(
            check_watson(c(0.1), c(0.5), c(0.05), c(0.2), c(0.6), &ctx()),
            Err(QError::ParameterDegeneracy(_))
        ));
        // |cq/(abx)| > 1
        assert!(matches!(
            check_watson(c(0.3), c(0.5), c(0.7), c(0.2), c(0.01), &ctx()),
            Err(QError::DomainError(_))
        ));
    }

    #[test]
    fn heine_residuals() {
        let (a, b, cc, q) = (c(0.3), c(0.5), c(0.7), c(0.2));
        let r = check_heine_residual(a, b, cc, q, c(0.4), HeineSolution::Phi, &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_heine_residual(a, b, cc, q, c(0.0), HeineSolution::Phi, &ctx()).unwrap();
        assert_eq!(r.residual, 0.0);
        for which in [HeineSolution::V1, HeineSolution::V2] {
            let r = check_heine_residual(a, b, cc, q, c(40.0), which, &ctx()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn bqua_variants() {
        let r = check_qdiff_bqua(c(0.5), c(0.05), c(0.3), c(0.5), BquaVariant::Series, &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_qdiff_bqua(c(0.5), c(0.1), c(0.3), c(0.5), BquaVariant::ClosedForm, &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        // qz = 0.15 falls inside |b/a| = 0.2
        assert!(matches!(
            check_qdiff_bqua(c(0.5), c(0.1), c(0.3), c(0.5), BquaVariant::Series, &ctx()),
            Err(QError::OutsideAnnulus { .. })
        ));
        assert!(check_qdiff_bqua(c(0.5), c(0.1), c(0.3), c(1.0), BquaVariant::ClosedForm, &ctx()).is_err());
    }

    #[test]
    fn bqua2_all_representations() {
        for repr in Bqua2Repr::ALL {
            let r = check_qdiff_bqua2(c(0.4), c(0.7), c(10.0), c(0.3), repr, &ctx()).unwrap();
            assert!(r.pass, "{r:?}");
        }
        // |aqx| = 0.6 at the reference point
        assert!(check_qdiff_bqua2(c(0.4), c(0.7), c(5.0), c(0.3), Bqua2Repr::UInfinity, &ctx()).is_err());
    }

    #[test]
    fn theorem_and_elliptic() {
        let p = ResummationPoint::new(0.4, 0.7, 5.0, 0.3);
        assert!(check_theorem1(&p, &ctx()).unwrap().pass);
        let p = ResummationPoint::new(2.0, 0.7, 1.2, 0.3);
        assert!(check_theorem1(&p, &ctx()).unwrap().pass);
        let p = ResummationPoint::new(0.4, 0.7, -0.7, 0.3);
        assert!(matches!(check_theorem1(&p, &ctx()), Err(QError::SpiralSingularity(_))));

        let r = check_elliptic(c(0.4), c(0.7), c(5.0), c(0.3), &ctx()).unwrap();
        assert!(r.residual <= 1e-10, "{r:?}");
        let r = check_elliptic_unit(c(0.7), c(5.0), c(0.3), &ctx()).unwrap();
        assert!(r.pass && r.residual < 1e-12);
    }

    #[test]
    fn recurrence_and_theta() {
        let r = check_psi10_recurrence(Complex64::new(0.4, 0.3), c(0.5), &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_theta(Complex64::new(0.5, 1.5), c(0.3), &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn inverse_laws() {
        for f in [TestSeries::Geometric, TestSeries::Linear] {
            let r = check_inverse_plus(f, c(0.7), c(0.4), c(0.3), &ctx()).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = check_inverse_minus(TestSeries::Linear, c(0.3), c(0.5), &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_inverse_minus(TestSeries::Geometric, c(0.4), c(0.9), &ctx()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
