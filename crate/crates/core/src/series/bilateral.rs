//! Bilateral basic hypergeometric series `r psi s`.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::series::params::{HypergeometricParams, TermGenerator};
use crate::summation::sum_outward;
use crate::value::SeriesValue;

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Convergence annulus `(inner, outer)` of `r psi s` for `r <= s`.
///
/// For `n -> -∞` the term ratio tends to `prod b' / prod a'` (nonzero
/// parameters only) times `q^{-(n-1)(za - zb)}`, where `za`, `zb` count the
/// zero upper and lower parameters; for `n -> +∞` it tends to `x` when
/// `r = s` and to zero when `r < s`.
pub fn psi_annulus(params: &HypergeometricParams) -> Result<(f64, f64)> {
    let (r, s) = (params.r(), params.s());
    if r > s {
        return Err(QError::DivergentSeriesRequested);
    }
    let za = params.upper.iter().filter(|a| is_zero(**a)).count();
    let zb = params.lower.iter().filter(|b| is_zero(**b)).count();
    let outer = if r == s { 1.0 } else { f64::INFINITY };
    let inner = if za > zb {
        f64::INFINITY
    } else if za < zb {
        0.0
    } else {
        let num: f64 = params.lower.iter().filter(|b| !is_zero(**b)).map(|b| b.norm()).product();
        let den: f64 = params.upper.iter().filter(|a| !is_zero(**a)).map(|a| a.norm()).product();
        num / den
    };
    Ok((inner, outer))
}

/// `r psi s (a; b; q, x) = Σ_{n∈ℤ} (a;q)_n / (b;q)_n ((-1)^n q^{n(n-1)/2})^{s-r} x^n`.
///
/// Requires `r <= s` and `x` strictly inside the annulus of
/// [`psi_annulus`]; `unsafe_eval` lifts the annulus check but not the
/// divergence of `r > s`.
pub fn psi_rs(params: &HypergeometricParams, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    let (inner, outer) = psi_annulus(params)?;
    if is_zero(x) {
        return Err(QError::ZeroArgument);
    }
    let m = x.norm();
    if !ctx.unsafe_eval() && !(inner < m && m < outer) {
        return Err(QError::OutsideAnnulus { modulus: m, inner, outer });
    }
    let gauss = params.s() as i64 - params.r() as i64;
    let mut gen = TermGenerator::new(params, x, gauss, false);
    let sum = sum_outward(0, None, None, |n| gen.term(n), ctx)?;
    Ok(sum.to_series())
}
