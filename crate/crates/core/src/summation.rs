//! Adaptive two-sided summation of bilateral series.
//!
//! The window grows outward from a center index, one term per side in
//! alternation. A side is closed once five consecutive terms fall below
//! `tol_rel * |running sum|` (or below the rounding floor `eps * sum|t|`),
//! or when it reaches the support bound of the series.

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::scaled::ScaledComplex;

/// Consecutive small terms required before a side is closed.
pub(crate) const SMALL_RUN: usize = 5;

/// Multiplier applied to the last included terms when estimating the tail.
pub const SAFETY: f64 = 10.0;

/// One summand together with its own relative error.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Term {
    pub value: ScaledComplex,
    pub rel_err: f64,
}

impl Term {
    pub fn exact(value: ScaledComplex) -> Self {
        Self { value, rel_err: 0.0 }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledSum {
    pub value: ScaledComplex,
    /// Absolute error, carried as a scaled non-negative real.
    pub err: ScaledComplex,
    pub terms_used: usize,
    /// Lowest and highest index included.
    pub window: (i64, i64),
}

impl ScaledSum {
    pub fn to_series(self) -> crate::value::SeriesValue {
        crate::value::SeriesValue {
            value: self.value.to_complex(),
            err_estimate: self.err.to_real(),
            terms_used: self.terms_used,
        }
    }
}

struct Side {
    next: i64,
    step: i64,
    bound: Option<i64>,
    small_run: usize,
    last: ScaledComplex,
    open: bool,
}

impl Side {
    fn exhausted(&self) -> bool {
        match self.bound {
            Some(b) => (self.step > 0 && self.next > b) || (self.step < 0 && self.next < b),
            None => false,
        }
    }
}

/// Sums `term(n)` over `lo..=hi` (either end may be unbounded), expanding
/// outward from `center`.
pub(crate) fn sum_outward<F>(
    center: i64,
    lo: Option<i64>,
    hi: Option<i64>,
    mut term: F,
    ctx: &QContext,
) -> Result<ScaledSum>
where
    F: FnMut(i64) -> Result<Term>,
{
    let center = match (lo, hi) {
        (Some(l), _) if center < l => l,
        (_, Some(h)) if center > h => h,
        _ => center,
    };
    let eps = f64::EPSILON;
    let tol = ctx.tol_rel();

    let mut sum = ScaledComplex::ZERO;
    let mut abs_sum = ScaledComplex::ZERO;
    let mut term_err = ScaledComplex::ZERO;
    let mut used = 0usize;

    let first = term(center)?;
    sum += first.value;
    abs_sum += first.value.norm_scaled();
    term_err += first.value.norm_scaled().scale(first.rel_err);
    used += 1;

    let mut right = Side { next: center + 1, step: 1, bound: hi, small_run: 0, last: first.value, open: true };
    let mut left = Side { next: center - 1, step: -1, bound: lo, small_run: 0, last: first.value, open: true };
    right.open = !right.exhausted();
    left.open = !left.exhausted();
    let mut window = (center, center);

    while right.open || left.open {
        for side in [&mut right, &mut left] {
            if !side.open {
                continue;
            }
            if used >= ctx.max_terms() {
                return Err(QError::TruncationBudgetExceeded { max_terms: ctx.max_terms() });
            }
            let n = side.next;
            let t = term(n)?;
            if !t.value.is_finite() {
                return Err(QError::DomainError(format!("non-finite term at index {n}")));
            }
            sum += t.value;
            let mag = t.value.norm_scaled();
            abs_sum += mag;
            term_err += mag.scale(t.rel_err);
            used += 1;
            side.last = t.value;
            if side.step > 0 {
                window.1 = n;
            } else {
                window.0 = n;
            }

            // |t| <= tol |sum| + eps sum|t|
            let threshold = sum.norm_scaled().scale(tol) + abs_sum.scale(eps);
            let small = t.value.is_zero() || t.value.ln_abs() <= threshold.ln_abs();
            side.small_run = if small { side.small_run + 1 } else { 0 };
            side.next += side.step;
            if side.small_run >= SMALL_RUN || side.exhausted() {
                side.open = false;
            }
        }
    }

    let boundary_terms = |side: &Side| {
        if side.exhausted() {
            // reached the end of the support: nothing was truncated
            ScaledComplex::ZERO
        } else {
            side.last.norm_scaled()
        }
    };
    let tail = (boundary_terms(&right) + boundary_terms(&left)).scale(SAFETY);
    let err = tail + term_err + abs_sum.scale(4.0 * eps);
    Ok(ScaledSum { value: sum, err, terms_used: used, window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn geometric_two_sided() {
        // sum_{n in Z} r^{|n|} = (1 + r) / (1 - r)
        let ctx = QContext::new(0.5).unwrap();
        let r = 0.3f64;
        let s = sum_outward(
            0,
            None,
            None,
            |n| Ok(Term::exact(ScaledComplex::from_real(r.powi(n.abs() as i32)))),
            &ctx,
        )
        .unwrap();
        let exact = (1.0 + r) / (1.0 - r);
        assert!((s.value.to_real() - exact).abs() < 1e-14);
        assert!(s.err.to_real() >= 0.0 && s.err.to_real() < 1e-12);
    }

    #[test]
    fn finite_support_has_no_tail() {
        let ctx = QContext::new(0.5).unwrap();
        let s = sum_outward(
            0,
            Some(0),
            Some(3),
            |n| Ok(Term::exact(ScaledComplex::from_real((n + 1) as f64))),
            &ctx,
        )
        .unwrap();
        assert_eq!(s.value.to_real(), 10.0);
        assert_eq!(s.window, (0, 3));
        assert!(s.err.to_real() < 1e-13);
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = QContext::new(0.5).unwrap().with_max_terms(50).unwrap();
        let r = sum_outward(0, None, None, |_| Ok(Term::exact(ScaledComplex::ONE)), &ctx);
        assert!(matches!(r, Err(QError::TruncationBudgetExceeded { .. })));
    }

    #[test]
    fn exact_cancellation_terminates() {
        // terms +1, -1 pairs around zero, then vanishing terms
        let ctx = QContext::new(0.5).unwrap();
        let s = sum_outward(
            0,
            None,
            None,
            |n| {
                let v = match n {
                    0 => 1.0,
                    1 => -1.0,
                    _ => 0.0,
                };
                Ok(Term::exact(ScaledComplex::from_complex(Complex64::new(v, 0.0))))
            },
            &ctx,
        )
        .unwrap();
        assert!(s.value.is_zero());
    }
}
