use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::qcore::qpochhammer_finite;
use crate::scaled::ScaledComplex;
use crate::summation::Term;

/// Parameters `a_1..a_r; b_1..b_s` and base `q` of a basic or bilateral
/// hypergeometric series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricParams {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
    pub q: Complex64,
}

impl HypergeometricParams {
    /// Fails unless `|q| < 1`.
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>, q: impl Into<Complex64>) -> Result<Self> {
        let q = q.into();
        if !q.is_finite() || q.norm() >= 1.0 {
            return Err(QError::InvalidContext(format!("|q| = {} must be < 1", q.norm())));
        }
        Ok(Self { upper, lower, q })
    }

    pub fn r(&self) -> usize {
        self.upper.len()
    }

    pub fn s(&self) -> usize {
        self.lower.len()
    }

    /// The `n`-th coefficient `prod (a_i;q)_n / prod (b_j;q)_n`, without the
    /// Gaussian factor or `x^n`. Direct evaluation, used as an oracle.
    pub fn pochhammer_ratio(&self, n: i64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for &a in &self.upper {
            acc *= qpochhammer_finite(a, self.q, n)?;
        }
        for &b in &self.lower {
            let d = qpochhammer_finite(b, self.q, n)?;
            if d.norm() == 0.0 {
                return Err(QError::PoleInDenominator(format!("(b;q)_{n} = 0 for b = {b}")));
            }
            acc /= d;
        }
        Ok(acc)
    }
}

/// Relative size below which `1 - c q^n` counts as a vanishing factor.
const ZERO_FACTOR_TOL: f64 = 1e-14;

/// `1 - c * qn` in scaled form, with its rounding-error bound.
fn factor(c: Complex64, qn: ScaledComplex) -> (ScaledComplex, f64, bool) {
    let t = ScaledComplex::from_complex(c) * qn;
    let f = ScaledComplex::ONE - t;
    let tmag = t.abs();
    let vanishing = f.is_zero() || f.ratio_abs(&ScaledComplex::ONE) <= ZERO_FACTOR_TOL * tmag.max(1.0);
    let rel = if f.is_zero() {
        f64::INFINITY
    } else {
        f64::EPSILON * (1.0 + t.ratio_abs(&f) + 1.0 / f.ratio_abs(&ScaledComplex::ONE).max(1e-300))
    };
    (f, rel.min(1.0), vanishing)
}

/// Generates the terms
/// `prod (a;q)_n / prod (b;q)_n / (q;q)_n^[with_qq] * ((-1)^n q^{n(n-1)/2})^gauss * x^n`
/// by stepping outward from `n = 0`, one index at a time in either direction.
pub(crate) struct TermGenerator<'a> {
    params: &'a HypergeometricParams,
    x: ScaledComplex,
    x_inv: ScaledComplex,
    gauss: i64,
    with_qq: bool,
    right: (i64, ScaledComplex, f64),
    left: (i64, ScaledComplex, f64),
}

impl<'a> TermGenerator<'a> {
    pub fn new(params: &'a HypergeometricParams, x: Complex64, gauss: i64, with_qq: bool) -> Self {
        let x = ScaledComplex::from_complex(x);
        let start = (0, ScaledComplex::ONE, 0.0);
        Self { params, x, x_inv: x.recip(), gauss, with_qq, right: start, left: start }
    }

    /// `((-1) q^n)^gauss`.
    fn gauss_factor(&self, n: i64) -> ScaledComplex {
        if self.gauss == 0 {
            return ScaledComplex::ONE;
        }
        let sign = if self.gauss % 2 == 0 { 1.0 } else { -1.0 };
        ScaledComplex::powi(self.params.q, n * self.gauss).scale(sign)
    }

    /// Ratio `t_{n+1} / t_n`.
    fn up(&self, n: i64) -> Result<(ScaledComplex, f64)> {
        let q = self.params.q;
        let qn = ScaledComplex::powi(q, n);
        let mut ratio = self.gauss_factor(n) * self.x;
        let mut rel = 2.0 * f64::EPSILON;
        for &a in &self.params.upper {
            let (f, e, _) = factor(a, qn);
            ratio *= f;
            rel += e;
        }
        let mut den = ScaledComplex::ONE;
        for &b in &self.params.lower {
            let (f, e, vanishing) = factor(b, qn);
            if vanishing {
                return Err(QError::PoleInDenominator(format!(
                    "(b;q)_{} = 0 for b = {b}",
                    n + 1
                )));
            }
            den *= f;
            rel += e;
        }
        if self.with_qq {
            let (f, e, _) = factor(q, qn);
            den *= f;
            rel += e;
        }
        let ratio = ratio.checked_div(den).expect("denominator checked nonzero");
        Ok((ratio, rel))
    }

    /// Ratio `t_{n-1} / t_n` for the bilateral direction.
    fn down(&self, n: i64) -> Result<(ScaledComplex, f64)> {
        let q = self.params.q;
        let m = n - 1;
        let qm = ScaledComplex::powi(q, m);
        let mut ratio = self.x_inv;
        let mut rel = 2.0 * f64::EPSILON;
        for &b in &self.params.lower {
            let (f, e, _) = factor(b, qm);
            ratio *= f;
            rel += e;
        }
        let mut den = self.gauss_factor(m);
        for &a in &self.params.upper {
            let (f, e, vanishing) = factor(a, qm);
            if vanishing && m < 0 {
                return Err(QError::DivisionByZeroFactor { n: m, k: -m });
            }
            den *= f;
            rel += e;
        }
        let ratio = ratio.checked_div(den).ok_or(QError::DivisionByZeroFactor { n: m, k: -m })?;
        Ok((ratio, rel))
    }

    /// Term `n`, where `n` is adjacent to the last term produced on its side.
    pub fn term(&mut self, n: i64) -> Result<Term> {
        if n == 0 {
            return Ok(Term::exact(ScaledComplex::ONE));
        }
        if n > 0 {
            let (k, t, e) = self.right;
            debug_assert_eq!(k + 1, n, "terms must be requested in order");
            let (ratio, rel) = self.up(k)?;
            self.right = (n, t * ratio, e + rel);
            Ok(Term { value: self.right.1, rel_err: self.right.2 })
        } else {
            let (k, t, e) = self.left;
            debug_assert_eq!(k - 1, n, "terms must be requested in order");
            let (ratio, rel) = self.down(k)?;
            self.left = (n, t * ratio, e + rel);
            Ok(Term { value: self.left.1, rel_err: self.left.2 })
        }
    }
}
