//! q-shifted factorials: finite (both signs of `n`), infinite, and ratios of
//! infinite products.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::scaled::{ScaledComplex, ScaledValue};
use crate::value::SeriesValue;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Relative size below which a factor `1 - a q^k` is treated as vanishing.
const ZERO_FACTOR_TOL: f64 = 1e-14;

fn vanishes(factor: Complex64, t: Complex64) -> bool {
    factor.norm() <= ZERO_FACTOR_TOL * t.norm().max(1.0)
}

/// `(a;q)_n` for any integer `n`:
/// `n = 0` gives 1, `n >= 1` the product `(1-a)(1-aq)...(1-aq^{n-1})`, and
/// `n <= -1` the reciprocal `[(1-aq^{-1})...(1-aq^{n})]^{-1}`.
pub fn qpochhammer_finite(a: Complex64, q: Complex64, n: i64) -> Result<Complex64> {
    Ok(qpochhammer_finite_scaled(a, q, n)?.to_complex())
}

pub(crate) fn qpochhammer_finite_scaled(a: Complex64, q: Complex64, n: i64) -> Result<ScaledComplex> {
    if n >= 0 {
        let mut acc = ScaledComplex::ONE;
        let mut t = a;
        for _ in 0..n {
            acc *= ScaledComplex::from_complex(ONE - t);
            t *= q;
        }
        Ok(acc)
    } else {
        if q.re == 0.0 && q.im == 0.0 {
            return Err(QError::DomainError("(a;q)_n with n < 0 needs q != 0".into()));
        }
        let qinv = ONE / q;
        let mut acc = ScaledComplex::ONE;
        let mut t = a;
        for k in 1..=(-n) {
            t *= qinv;
            let f = ONE - t;
            if vanishes(f, t) {
                return Err(QError::DivisionByZeroFactor { n, k });
            }
            acc *= ScaledComplex::from_complex(f);
        }
        Ok(acc.recip())
    }
}

/// The `k >= 0` with `a = q^{-k}` (within `spiral_eps`), where `(a;q)_inf`
/// vanishes.
pub fn infinite_zero_index(a: Complex64, ctx: &QContext) -> Option<i64> {
    let q = ctx.q();
    let qa = q.norm();
    if a.norm() < 1.0 - ctx.spiral_eps() || qa == 0.0 {
        return None;
    }
    let k0 = (-(a.norm().ln() / qa.ln())).round().max(0.0) as i64;
    ((k0 - 1).max(0)..=k0 + 1).find(|&k| {
        let zero = ScaledComplex::powi(q, -k).to_complex();
        (a - zero).norm() / a.norm() < ctx.spiral_eps()
    })
}

/// Running product of factors `1 - t_k` with periodic renormalisation.
struct Product {
    acc: Complex64,
    exp2: i64,
    rounding: f64,
}

impl Product {
    fn new() -> Self {
        Self { acc: ONE, exp2: 0, rounding: 0.0 }
    }

    fn push(&mut self, f: Complex64) {
        self.acc *= f;
        let m = self.acc.re.abs().max(self.acc.im.abs());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            let e = m.log2().floor() as i32;
            self.acc *= 2f64.powi(-e);
            self.exp2 += e as i64;
        }
    }

    fn finish(self) -> ScaledComplex {
        ScaledComplex::from_parts(self.acc, self.exp2)
    }
}

/// `(a;q)_inf` in scaled form with a relative error bound.
///
/// Truncates at the first `N` with `|a||q|^N / (1 - |q|) < tol_rel`; that
/// quantity bounds the relative size of the dropped tail.
pub fn qpochhammer_infinite_scaled(a: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    let q = ctx.q();
    let qa = q.norm();
    let tol = ctx.tol_rel();
    let eps = f64::EPSILON;

    let mut prod = Product::new();
    let mut t = a;
    let mut k = 0usize;
    let tail = loop {
        let tail = t.norm() / (1.0 - qa);
        if tail < tol {
            break tail;
        }
        if !tail.is_finite() {
            return Err(QError::DomainError(format!("(a;q)_inf with non-finite a = {a}")));
        }
        if k >= ctx.max_terms() {
            return Err(QError::TruncationBudgetExceeded { max_terms: ctx.max_terms() });
        }
        let f = ONE - t;
        if f.re == 0.0 && f.im == 0.0 {
            return Ok(ScaledValue { value: ScaledComplex::ZERO, rel_err: 0.0, terms_used: k + 1 });
        }
        prod.rounding += eps * (1.0 + t.norm()) / f.norm();
        prod.push(f);
        t *= q;
        k += 1;
    };
    let rel_err = tail + prod.rounding;
    Ok(ScaledValue { value: prod.finish(), rel_err, terms_used: k })
}

/// `(a;q)_inf`.
pub fn qpochhammer_infinite(a: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(qpochhammer_infinite_scaled(a, ctx)?.to_series())
}

/// `(a_1, ..., a_m; q)_inf`; relative errors add to first order.
pub fn qpochhammer_multi(params: &[Complex64], ctx: &QContext) -> Result<SeriesValue> {
    Ok(qpochhammer_multi_scaled(params, ctx)?.to_series())
}

pub fn qpochhammer_multi_scaled(params: &[Complex64], ctx: &QContext) -> Result<ScaledValue> {
    if params.is_empty() {
        return Err(QError::DomainError("qpochhammer_multi needs at least one parameter".into()));
    }
    params.iter().try_fold(ScaledValue::exact(ScaledComplex::ONE), |acc, &a| {
        Ok(acc * qpochhammer_infinite_scaled(a, ctx)?)
    })
}

/// `(a;q)_inf / (b;q)_inf`, multiplied factor by factor.
///
/// Both infinite products may separately leave the `f64` range (for `q`
/// near 1) while their ratio stays moderate.
pub fn qpochhammer_ratio_scaled(a: Complex64, b: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    let q = ctx.q();
    let qa = q.norm();
    let tol = ctx.tol_rel();
    let eps = f64::EPSILON;

    let mut prod = Product::new();
    let mut ta = a;
    let mut tb = b;
    let mut k = 0usize;
    let tail = loop {
        let big = ta.norm().max(tb.norm());
        let tail = 2.0 * (ta - tb).norm() / (1.0 - qa);
        if big < 0.5 && tail < tol {
            break tail;
        }
        if !big.is_finite() {
            return Err(QError::DomainError("non-finite q-Pochhammer argument".into()));
        }
        if k >= ctx.max_terms() {
            return Err(QError::TruncationBudgetExceeded { max_terms: ctx.max_terms() });
        }
        let num = ONE - ta;
        let den = ONE - tb;
        if vanishes(den, tb) {
            return Err(QError::PoleInDenominator(format!(
                "(b;q)_inf = 0 with b = {b} (factor {k})"
            )));
        }
        if num.re == 0.0 && num.im == 0.0 {
            return Ok(ScaledValue { value: ScaledComplex::ZERO, rel_err: 0.0, terms_used: k + 1 });
        }
        prod.rounding += eps * ((1.0 + ta.norm()) / num.norm() + (1.0 + tb.norm()) / den.norm());
        prod.push(num / den);
        ta *= q;
        tb *= q;
        k += 1;
    };
    let rel_err = tail + prod.rounding;
    Ok(ScaledValue { value: prod.finish(), rel_err, terms_used: k })
}

/// `(a;q)_inf / (b;q)_inf` as a plain value.
pub fn qpochhammer_ratio(a: Complex64, b: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(qpochhammer_ratio_scaled(a, b, ctx)?.to_series())
}
