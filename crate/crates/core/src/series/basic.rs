//! One-sided basic hypergeometric series `r phi s`.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::scaled::ScaledComplex;
use crate::series::params::{HypergeometricParams, TermGenerator};
use crate::summation::{sum_outward, SAFETY};
use crate::value::SeriesValue;

/// Radius of convergence of `r phi s`: infinite for `r < s + 1`, 1 for
/// `r = s + 1`, zero otherwise.
pub fn phi_radius(params: &HypergeometricParams) -> f64 {
    let (r, s) = (params.r(), params.s());
    if r < s + 1 {
        f64::INFINITY
    } else if r == s + 1 {
        1.0
    } else {
        0.0
    }
}

fn gauss_exponent(params: &HypergeometricParams) -> i64 {
    1 + params.s() as i64 - params.r() as i64
}

fn check_domain(params: &HypergeometricParams, x: Complex64, ctx: &QContext) -> Result<()> {
    if ctx.unsafe_eval() || (x.re == 0.0 && x.im == 0.0) {
        return Ok(());
    }
    let radius = phi_radius(params);
    if radius == 0.0 {
        return Err(QError::DivergentSeriesRequested);
    }
    if x.norm() >= radius {
        return Err(QError::OutsideRadius { modulus: x.norm(), radius });
    }
    Ok(())
}

/// `r phi s (a; b; q, x) = Σ_{n>=0} (a;q)_n / ((b;q)_n (q;q)_n)
/// ((-1)^n q^{n(n-1)/2})^{1+s-r} x^n`, summed adaptively.
///
/// Domain enforcement is skipped when the context has `unsafe_eval` set.
pub fn phi_rs(params: &HypergeometricParams, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    check_domain(params, x, ctx)?;
    if x.re == 0.0 && x.im == 0.0 {
        return Ok(SeriesValue { value: Complex64::new(1.0, 0.0), err_estimate: 0.0, terms_used: 1 });
    }
    let mut gen = TermGenerator::new(params, x, gauss_exponent(params), true);
    let sum = sum_outward(0, Some(0), None, |n| gen.term(n), ctx)?;
    Ok(sum.to_series())
}

/// Partial sum over `n = 0..n_terms` with no domain checks. The error
/// estimate is `SAFETY` times the last included term plus rounding.
pub fn phi_rs_window(
    params: &HypergeometricParams,
    x: Complex64,
    n_terms: usize,
) -> Result<SeriesValue> {
    if n_terms == 0 {
        return Ok(SeriesValue { value: Complex64::new(0.0, 0.0), err_estimate: 0.0, terms_used: 0 });
    }
    let mut gen = TermGenerator::new(params, x, gauss_exponent(params), true);
    let mut sum = ScaledComplex::ZERO;
    let mut abs_sum = ScaledComplex::ZERO;
    let mut rounding = ScaledComplex::ZERO;
    let mut last = ScaledComplex::ZERO;
    for n in 0..n_terms as i64 {
        let t = gen.term(n)?;
        sum += t.value;
        abs_sum += t.value.norm_scaled();
        rounding += t.value.norm_scaled().scale(t.rel_err);
        last = t.value;
    }
    let err = last.norm_scaled().scale(SAFETY) + rounding + abs_sum.scale(4.0 * f64::EPSILON);
    Ok(SeriesValue { value: sum.to_complex(), err_estimate: err.to_real(), terms_used: n_terms })
}
