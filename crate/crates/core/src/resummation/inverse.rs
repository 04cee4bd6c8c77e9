//! Borel–Laplace compositions applied to formal power series.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::theta_scaled;
use crate::resummation::borel::{qborel_minus, qborel_plus};
use crate::resummation::laplace::{qlaplace_minus, qlaplace_plus};
use crate::scaled::ScaledComplex;
use crate::series::FormalBilateralSeries;
use crate::summation::{sum_outward, Term};
use crate::value::SeriesValue;

/// `(L⁺_{q,λ} ∘ B⁺ f)(x)`, with the Borel image summed as a power series at
/// every spiral point.
pub fn laplace_borel_plus(
    f: &FormalBilateralSeries,
    lambda: Complex64,
    x: Complex64,
    ctx: &QContext,
) -> Result<SeriesValue> {
    let image = qborel_plus(f, ctx);
    qlaplace_plus(|xi| image.evaluate_scaled(xi, ctx), lambda, x, ctx)
}

/// `(L⁻ ∘ B⁻ f)(x)` for a one-sided series `f`.
///
/// `B⁻ f` generally has zero radius of convergence, so it is truncated at
/// the degree `M` where the terms `f_n xⁿ` have died out under the shared
/// truncation rule; `L⁻` maps the truncated image back to the partial sum
/// of `f` exactly. The contour radius is the `r = |x|·|q|^{t/2}` that
/// minimises the bound `Σ|g_n| rⁿ · θ_{|q|}(|x|/r)` on the integrand, which
/// keeps cancellation in the trapezoid sum small.
pub fn laplace_borel_minus(f: &FormalBilateralSeries, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    let (lo, hi) = f.support();
    let lo = match lo {
        Some(l) if l >= 0 => l,
        _ => return Err(QError::DomainError("second-kind resummation needs a one-sided series".into())),
    };
    if x.re == 0.0 && x.im == 0.0 {
        return Err(QError::ZeroArgument);
    }
    let partial = sum_outward(
        lo,
        Some(lo),
        hi,
        |n| Ok(Term::exact(f.coeff_scaled(n)? * ScaledComplex::powi(x, n))),
        ctx,
    )?;
    let degree = partial.window.1;
    let image = qborel_minus(f, ctx);
    let coeffs: Vec<Complex64> =
        (0..=degree).map(|n| image.coeff(n)).collect::<Result<_>>()?;
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(QError::DomainError(format!("B⁻ coefficients overflow at degree {degree}")));
    }

    let r = contour_radius(&coeffs, x, ctx)?;
    let g = |xi: Complex64| Ok(coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * xi + c));
    let mut v = qlaplace_minus(g, r, x, ctx)?;
    v.err_estimate += partial.err.to_real();
    v.terms_used += partial.terms_used;
    Ok(v)
}

fn contour_radius(coeffs: &[Complex64], x: Complex64, ctx: &QContext) -> Result<f64> {
    let qa = ctx.q().norm();
    let abs_ctx = ctx.with_q(qa)?;
    let degree = coeffs.len() as i64 - 1;
    let mut best: Option<(f64, f64)> = None;
    for t in (-2 * degree - 4)..=(2 * degree + 4) {
        let r = x.norm() * qa.powf(t as f64 / 2.0);
        let g: f64 = coeffs.iter().enumerate().map(|(n, c)| c.norm() * r.powi(n as i32)).sum();
        let th = theta_scaled(Complex64::new(x.norm() / r, 0.0), &abs_ctx)?.value;
        let bound = g.ln() + th.ln_abs();
        if best.is_none_or(|(b, _)| bound < b) {
            best = Some((bound, r));
        }
    }
    Ok(best.map(|(_, r)| r).unwrap_or(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn first_kind_inverts_on_geometric_series() {
        let ctx = QContext::new(0.3).unwrap();
        let f = FormalBilateralSeries::one_sided("1/(1-x)", |_| c(1.0));
        for x in [c(0.4), Complex64::new(0.0, 0.3), c(-0.25)] {
            let v = laplace_borel_plus(&f, c(0.7), x, &ctx).unwrap();
            let want = c(1.0) / (c(1.0) - x);
            assert!((v.value - want).norm() < 1e-9 * want.norm(), "x = {x}: {}", v.value);
        }
    }

    #[test]
    fn second_kind_inverts_on_polynomial() {
        let ctx = QContext::new(0.5).unwrap();
        let f = FormalBilateralSeries::polynomial("1+x", vec![c(1.0), c(1.0)]);
        let v = laplace_borel_minus(&f, c(0.3), &ctx).unwrap();
        assert!((v.value - c(1.3)).norm() < 1e-10);
    }

    #[test]
    fn second_kind_inverts_on_geometric_series() {
        let ctx = QContext::new(0.9).unwrap();
        let f = FormalBilateralSeries::one_sided("1/(1-x)", |_| c(1.0));
        let x = c(0.4);
        let v = laplace_borel_minus(&f, x, &ctx).unwrap();
        assert!((v.value - c(1.0 / 0.6)).norm() < 1e-8 / 0.6, "{}", v.value);
    }
}
