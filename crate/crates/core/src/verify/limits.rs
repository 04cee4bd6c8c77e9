//! `q → 1⁻` limit studies: a q-object evaluated along a grid of real `q`
//! approaching one, compared with its classical limit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::{gamma_classical, qexp_scaled, qgamma_scaled, qpochhammer_ratio_scaled, theta_ratio_scaled};
use crate::scaled::{ScaledComplex, ScaledValue};
use crate::series::{horn_rhs, qbb_rhs};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Default `λ` for the resummed formula.
pub const DEFAULT_LAMBDA: f64 = 0.7;

/// Rounding noise in a product of about `1/(1−q)` factors, below which
/// [`LimitScan::tail_non_increasing`] ignores changes in the error.
pub fn rounding_floor(q: f64) -> f64 {
    64.0 * f64::EPSILON / (1.0 - q)
}

/// Length of the tail inspected for monotone convergence.
pub const TAIL_LEN: usize = 4;

/// One limit study: values along the `q` grid, the classical target and the
/// relative deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitScan {
    pub label: String,
    pub q_values: Vec<f64>,
    pub lhs_values: Vec<Complex64>,
    pub target: Complex64,
    pub errors: Vec<f64>,
}

impl LimitScan {
    /// Deviation at the `q` closest to one.
    pub fn final_error(&self) -> f64 {
        self.errors.last().copied().unwrap_or(f64::NAN)
    }

    /// Whether the last `n` errors never increase, up to [`rounding_floor`].
    pub fn tail_non_increasing(&self, n: usize) -> bool {
        let start = self.errors.len().saturating_sub(n) + 1;
        (start..self.errors.len()).all(|i| {
            self.errors[i] <= self.errors[i - 1].max(rounding_floor(self.q_values[i]))
        })
    }

    /// Final error within `tol` and a non-increasing tail of [`TAIL_LEN`].
    pub fn converged(&self, tol: f64) -> bool {
        self.final_error() <= tol && self.tail_non_increasing(TAIL_LEN)
    }
}

/// `q = 1 − 2^{−k}` for `k = k1..=k2`.
pub fn dyadic_grid(k1: u32, k2: u32) -> Vec<f64> {
    (k1..=k2).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
}

/// Parses `"dyadic:k1:k2"`.
pub fn parse_qgrid(spec: &str) -> Option<Vec<f64>> {
    let mut parts = spec.split(':');
    if parts.next()? != "dyadic" {
        return None;
    }
    let k1: u32 = parts.next()?.trim().parse().ok()?;
    let k2: u32 = parts.next()?.trim().parse().ok()?;
    if parts.next().is_some() || k1 == 0 || k1 > k2 || k2 > 52 {
        return None;
    }
    Some(dyadic_grid(k1, k2))
}

fn check_grid(q_grid: &[f64]) -> Result<()> {
    if q_grid.is_empty() {
        return Err(QError::DomainError("empty q grid".into()));
    }
    if q_grid.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
        return Err(QError::DomainError("limit studies need real q in (0, 1)".into()));
    }
    if q_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(QError::DomainError("q grid must increase strictly".into()));
    }
    Ok(())
}

fn check_principal(x: Complex64) -> Result<()> {
    if x.re == 0.0 && x.im == 0.0 {
        return Err(QError::ZeroArgument);
    }
    if x.im == 0.0 && x.re < 0.0 {
        return Err(QError::DomainError("arg x = π lies on the branch cut".into()));
    }
    Ok(())
}

fn scan<F>(label: &str, q_grid: &[f64], target: Complex64, ctx: &QContext, f: F) -> Result<LimitScan>
where
    F: Fn(f64, &QContext) -> Result<ScaledValue>,
{
    check_grid(q_grid)?;
    let mut lhs_values = Vec::with_capacity(q_grid.len());
    let mut errors = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        let qctx = ctx.with_q(q)?;
        let v = f(q, &qctx)?.value.to_complex();
        errors.push((v - target).norm() / target.norm().max(f64::MIN_POSITIVE));
        lhs_values.push(v);
    }
    Ok(LimitScan { label: label.into(), q_values: q_grid.to_vec(), lhs_values, target, errors })
}

/// `q^s` for real `q`, principal branch.
fn qpow(q: f64, s: Complex64) -> Complex64 {
    (s * q.ln()).exp()
}

/// `(1 − q)^s` in scaled form.
fn one_minus_q_pow(q: f64, s: Complex64) -> ScaledComplex {
    let e = s * (1.0 - q).ln();
    ScaledComplex::from_polar_ln(e.re, e.im)
}

/// The resummed formula with `a = q^α` and `x ↦ x/(1−q)`, in its factored form
/// `Γ_q(1−α) · θ(q^{α+1}λ)/θ(qλ) · θ(q^α X)/θ(X) · (1−q)^{−α} · e_q((1−q)q^{−α}/x)`
/// with `X = x/((1−q)λ)`, scanned against `Γ(1−α) x^{−α} e^{1/x}`.
pub fn limit_theorem2(alpha: Complex64, x: Complex64, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
    limit_theorem2_with_lambda(alpha, x, Complex64::new(DEFAULT_LAMBDA, 0.0), q_grid, ctx)
}

pub fn limit_theorem2_with_lambda(
    alpha: Complex64,
    x: Complex64,
    lambda: Complex64,
    q_grid: &[f64],
    ctx: &QContext,
) -> Result<LimitScan> {
    check_principal(x)?;
    if x.norm() <= 1.0 {
        return Err(QError::DomainError(format!("needs |x| > 1, got {}", x.norm())));
    }
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(QError::ZeroArgument);
    }
    let target = gamma_classical(ONE - alpha)? * x.powc(-alpha) * (ONE / x).exp();
    scan("theorem2", q_grid, target, ctx, |q, ctx| {
        let big_x = x / ((1.0 - q) * lambda);
        let gamma = qgamma_scaled(ONE - alpha, ctx)?;
        let t1 = theta_ratio_scaled(qpow(q, alpha + 1.0) * lambda, q * lambda, ctx)?;
        let t2 = theta_ratio_scaled(qpow(q, alpha) * big_x, big_x, ctx)?;
        let e = qexp_scaled((1.0 - q) * qpow(q, -alpha) / x, ctx)?;
        let power = ScaledValue::exact(one_minus_q_pow(q, -alpha));
        Ok(gamma * t1 * t2 * power * e)
    })
}

/// Which half of the theta-ratio limits to scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaLimit {
    /// `θ(q^α x)/θ(q^β x) → x^{β−α}`.
    Plain,
    /// `θ(q^α x/(1−q))/θ(q^β x/(1−q)) · (1−q)^{β−α} → (1/x)^{α−β}`.
    Rescaled,
}

pub fn limit_prop21(
    alpha: Complex64,
    beta: Complex64,
    x: Complex64,
    which: ThetaLimit,
    q_grid: &[f64],
    ctx: &QContext,
) -> Result<LimitScan> {
    check_principal(x)?;
    match which {
        ThetaLimit::Plain => scan("limt1", q_grid, x.powc(beta - alpha), ctx, |q, ctx| {
            theta_ratio_scaled(qpow(q, alpha) * x, qpow(q, beta) * x, ctx)
        }),
        ThetaLimit::Rescaled => scan("limt2", q_grid, (ONE / x).powc(alpha - beta), ctx, |q, ctx| {
            let y = x / (1.0 - q);
            let r = theta_ratio_scaled(qpow(q, alpha) * y, qpow(q, beta) * y, ctx)?;
            Ok(r * ScaledValue::exact(one_minus_q_pow(q, beta - alpha)))
        }),
    }
}

/// `(xq^α;q)_∞/(x;q)_∞ → (1−x)^{−α}` for `|x| < 1`.
pub fn limit_binomial(alpha: Complex64, x: Complex64, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
    if x.norm() >= 1.0 {
        return Err(QError::DomainError(format!("needs |x| < 1, got {}", x.norm())));
    }
    scan("binomial", q_grid, (ONE - x).powc(-alpha), ctx, |q, ctx| {
        qpochhammer_ratio_scaled(x * qpow(q, alpha), x, ctx)
    })
}

/// `e_q(x(1−q)) → eˣ`.
pub fn limit_qexp(x: Complex64, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
    scan("qexp", q_grid, x.exp(), ctx, |q, ctx| qexp_scaled(x * (1.0 - q), ctx))
}

/// `Γ_q(x) → Γ(x)`.
pub fn limit_qgamma(x: Complex64, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
    scan("qgamma", q_grid, gamma_classical(x)?, ctx, |_, ctx| qgamma_scaled(x, ctx))
}

/// Which classical function [`limit_qexp_qgamma`] approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QClassical {
    Exp,
    Gamma,
}

pub fn limit_qexp_qgamma(kind: QClassical, x: Complex64, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
    match kind {
        QClassical::Exp => limit_qexp(x, q_grid, ctx),
        QClassical::Gamma => limit_qgamma(x, q_grid, ctx),
    }
}

/// The q-analogue of Horn's bilateral binomial sum against the classical
/// closed form on `|z| = 1`.
pub fn limit_horn(alpha: Complex64, beta: Complex64, z: Complex64, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
    check_principal(-z)?;
    scan("horn", q_grid, horn_rhs(alpha, beta, z)?, ctx, |_, ctx| {
        let v = qbb_rhs(alpha, beta, z, ctx)?;
        Ok(ScaledValue::exact(ScaledComplex::from_complex(v.value)))
    })
}
