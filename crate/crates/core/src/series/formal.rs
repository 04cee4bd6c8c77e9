//! Formal (possibly divergent) bilateral power series.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::qpochhammer_finite_scaled;
use crate::scaled::{ScaledComplex, ScaledValue};
use crate::summation::sum_outward;
use crate::value::SeriesValue;

type CoeffFn = dyn Fn(i64) -> Result<ScaledComplex> + Send + Sync;

/// A coefficient map `n ↦ c_n` on ℤ together with its support and growth.
///
/// Growth is recorded as the Gaussian order `g` of each tail: the
/// coefficients behave like `|q|^{g n²/2}` times a geometric factor as
/// `n → ±∞`. A tail with `g < 0` makes the series divergent for every
/// `x != 0`; the q-Borel transforms shift `g` by `±1`.
#[derive(Clone)]
pub struct FormalBilateralSeries {
    label: String,
    lo: Option<i64>,
    hi: Option<i64>,
    left_order: i64,
    right_order: i64,
    coeff: Arc<CoeffFn>,
}

impl fmt::Debug for FormalBilateralSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormalBilateralSeries")
            .field("label", &self.label)
            .field("support", &(self.lo, self.hi))
            .field("divergent", &self.divergent())
            .finish()
    }
}

impl FormalBilateralSeries {
    /// Series with coefficients `f(n)` on `lo..=hi` (unbounded ends allowed)
    /// and the given Gaussian orders of its left and right tails.
    pub fn from_fn<F>(
        label: impl Into<String>,
        lo: Option<i64>,
        hi: Option<i64>,
        left_order: i64,
        right_order: i64,
        f: F,
    ) -> Self
    where
        F: Fn(i64) -> Result<ScaledComplex> + Send + Sync + 'static,
    {
        Self { label: label.into(), lo, hi, left_order, right_order, coeff: Arc::new(f) }
    }

    /// Finite power series `Σ_{k} coeffs[k] x^k`.
    pub fn polynomial(label: impl Into<String>, coeffs: Vec<Complex64>) -> Self {
        let hi = coeffs.len() as i64 - 1;
        Self::from_fn(label, Some(0), Some(hi.max(0)), 0, 0, move |n| {
            Ok(coeffs.get(n as usize).map_or(ScaledComplex::ZERO, |&c| c.into()))
        })
    }

    /// One-sided series `Σ_{n>=0} f(n) x^n` with at most geometric growth.
    pub fn one_sided<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        Self::from_fn(label, Some(0), None, 0, 0, move |n| Ok(f(n).into()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Index range carrying the coefficients; `None` marks an unbounded end.
    pub fn support(&self) -> (Option<i64>, Option<i64>) {
        (self.lo, self.hi)
    }

    /// True when some unbounded tail grows like `|q|^{-c n²}`, so that the
    /// series has zero radius of convergence.
    pub fn divergent(&self) -> bool {
        (self.hi.is_none() && self.right_order < 0) || (self.lo.is_none() && self.left_order < 0)
    }

    fn in_support(&self, n: i64) -> bool {
        self.lo.is_none_or(|l| n >= l) && self.hi.is_none_or(|h| n <= h)
    }

    pub fn coeff_scaled(&self, n: i64) -> Result<ScaledComplex> {
        if !self.in_support(n) {
            return Ok(ScaledComplex::ZERO);
        }
        (self.coeff)(n)
    }

    pub fn coeff(&self, n: i64) -> Result<Complex64> {
        Ok(self.coeff_scaled(n)?.to_complex())
    }

    /// Multiplies every coefficient by `w(n)` and shifts both Gaussian
    /// orders by `order_shift`.
    pub(crate) fn reweight<W>(&self, label: String, order_shift: i64, w: W) -> Self
    where
        W: Fn(i64) -> ScaledComplex + Send + Sync + 'static,
    {
        let inner = Arc::clone(&self.coeff);
        Self {
            label,
            lo: self.lo,
            hi: self.hi,
            left_order: self.left_order + order_shift,
            right_order: self.right_order + order_shift,
            coeff: Arc::new(move |n| Ok(inner(n)? * w(n))),
        }
    }

    /// Sums the series at `x` in scaled form; refuses divergent series
    /// unless the context has `unsafe_eval` set.
    pub fn evaluate_scaled(&self, x: Complex64, ctx: &QContext) -> Result<ScaledValue> {
        if self.divergent() && !ctx.unsafe_eval() {
            return Err(QError::DivergentSeriesRequested);
        }
        let x_is_zero = x.re == 0.0 && x.im == 0.0;
        if x_is_zero {
            if self.lo.is_none_or(|l| l < 0) {
                return Err(QError::ZeroArgument);
            }
            let c0 = self.coeff_scaled(0)?;
            return Ok(ScaledValue { value: c0, rel_err: 0.0, terms_used: 1 });
        }
        let sum = sum_outward(
            0,
            self.lo,
            self.hi,
            |n| {
                Ok(crate::summation::Term {
                    value: self.coeff_scaled(n)? * ScaledComplex::powi(x, n),
                    rel_err: 4.0 * f64::EPSILON * (1.0 + n.unsigned_abs() as f64),
                })
            },
            ctx,
        )?;
        let rel_err = if sum.value.is_zero() { 0.0 } else { sum.err.ratio_abs(&sum.value) };
        Ok(ScaledValue { value: sum.value, rel_err, terms_used: sum.terms_used })
    }

    pub fn evaluate(&self, x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
        Ok(self.evaluate_scaled(x, ctx)?.to_series())
    }
}

/// The formal series `₁ψ₀(a;−;q,x) = Σ_{n∈ℤ} (a;q)_n {(−1)^n q^{n(n−1)/2}}^{-1} x^n`,
/// with base taken from the context.
///
/// Coefficients are produced on demand; a singular `(a;q)_n` at negative
/// `n` is reported when that coefficient is requested.
pub fn formal_psi10(a: Complex64, ctx: &QContext) -> Result<FormalBilateralSeries> {
    let q = ctx.q();
    if q.re == 0.0 && q.im == 0.0 {
        return Err(QError::DomainError("₁ψ₀ needs q != 0".into()));
    }
    Ok(FormalBilateralSeries::from_fn(
        format!("1psi0(a={a})"),
        None,
        None,
        0,
        -1,
        move |n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let p = qpochhammer_finite_scaled(a, q, n)?;
            Ok(p * ScaledComplex::q_triangular(q, n).recip().scale(sign))
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpochhammer_finite;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn psi10_coefficients() {
        let ctx = QContext::new(0.5).unwrap();
        let f = formal_psi10(c(0.25), &ctx).unwrap();
        assert!(f.divergent());
        assert_eq!(f.coeff(0).unwrap(), c(1.0));
        assert!((f.coeff(1).unwrap() - c(-0.75)).norm() < 1e-15);
        assert!((f.coeff(-1).unwrap() - c(-4.0)).norm() < 1e-14);
        // cross-check against the finite q-Pochhammer symbol
        for n in -6..=6i64 {
            let p = qpochhammer_finite(c(0.25), c(0.5), n);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            match p {
                Ok(p) => {
                    let want = p * sign / 0.5f64.powi((n * (n - 1) / 2) as i32);
                    assert!((f.coeff(n).unwrap() - want).norm() <= 1e-13 * want.norm(), "n = {n}");
                }
                Err(e) => assert_eq!(f.coeff(n).unwrap_err(), e),
            }
        }
    }

    #[test]
    fn divergent_series_refuses_evaluation() {
        let ctx = QContext::new(0.5).unwrap();
        let f = formal_psi10(c(0.3), &ctx).unwrap();
        assert_eq!(f.evaluate(c(0.1), &ctx).unwrap_err(), QError::DivergentSeriesRequested);
    }

    #[test]
    fn polynomial_and_geometric() {
        let ctx = QContext::new(0.5).unwrap();
        let p = FormalBilateralSeries::polynomial("1+x", vec![c(1.0), c(1.0)]);
        assert!(!p.divergent());
        assert_eq!(p.coeff(5).unwrap(), c(0.0));
        assert_eq!(p.coeff(-1).unwrap(), c(0.0));
        assert!((p.evaluate(c(0.3), &ctx).unwrap().value - c(1.3)).norm() < 1e-15);
        let g = FormalBilateralSeries::one_sided("1/(1-x)", |_| c(1.0));
        let v = g.evaluate(c(0.4), &ctx).unwrap();
        assert!((v.value - c(1.0 / 0.6)).norm() < 1e-13);
    }
}
