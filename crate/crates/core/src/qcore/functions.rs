//! q-exponential, q-gamma and their classical counterparts.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::pochhammer::{infinite_zero_index, qpochhammer_infinite_scaled, qpochhammer_ratio_scaled};
use crate::scaled::{ScaledComplex, ScaledValue};
use crate::value::SeriesValue;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `e_q(x) = 1/(x;q)_∞`, valid for `|x| < 1`.
pub fn qexp(x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(qexp_scaled(x, ctx)?.to_series())
}

pub fn qexp_scaled(x: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    if x.re == 0.0 && x.im == 0.0 {
        return Ok(ScaledValue::exact(ScaledComplex::ONE));
    }
    // poles of e_q sit at x = q^{-k}, k >= 0
    if let Some(k) = infinite_zero_index(x, ctx) {
        return Err(QError::PoleOnQSpiral(format!("e_q pole at x = q^-{k}")));
    }
    if x.norm() >= 1.0 {
        return Err(QError::DomainError(format!("e_q(x) needs |x| < 1, got |x| = {}", x.norm())));
    }
    let p = qpochhammer_infinite_scaled(x, ctx)?;
    Ok(ScaledValue { value: p.value.recip(), rel_err: p.rel_err, terms_used: p.terms_used })
}

fn nonpositive_integer(x: Complex64, tol: f64) -> Option<i64> {
    let n = x.re.round();
    if n <= 0.0 && (x - Complex64::new(n, 0.0)).norm() < tol {
        Some(n as i64)
    } else {
        None
    }
}

/// `Γ_q(x) = (q;q)_∞ / (q^x;q)_∞ · (1-q)^{1-x}` for real `q ∈ (0, 1)`,
/// principal branch for the powers.
pub fn qgamma(x: Complex64, ctx: &QContext) -> Result<SeriesValue> {
    Ok(qgamma_scaled(x, ctx)?.to_series())
}

pub fn qgamma_scaled(x: Complex64, ctx: &QContext) -> Result<ScaledValue> {
    let q = ctx.real_q()?;
    if let Some(n) = nonpositive_integer(x, ctx.spiral_eps()) {
        return Err(QError::PoleAtNonPositiveInteger(n));
    }
    let qx = (x * q.ln()).exp();
    let ratio = qpochhammer_ratio_scaled(Complex64::new(q, 0.0), qx, ctx).map_err(|e| match e {
        QError::PoleInDenominator(_) => QError::PoleAtNonPositiveInteger(x.re.round() as i64),
        other => other,
    })?;
    // (1-q)^{1-x} = exp((1-x) ln(1-q)) kept in log form
    let e = (ONE - x) * (1.0 - q).ln();
    let power = ScaledComplex::from_polar_ln(e.re, e.im);
    Ok(ScaledValue { value: ratio.value * power, ..ratio })
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Classical Γ(x) by the Lanczos approximation (g = 7, nine terms) with the
/// reflection formula on `Re x < 1/2`.
pub fn gamma_classical(x: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(x, 1e-14) {
        return Err(QError::PoleAtNonPositiveInteger(n));
    }
    Ok(lanczos(x))
}

fn lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * lanczos(ONE - z));
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * acc
}

/// Rising factorial `α(α+1)...(α+n-1)`.
pub fn pochhammer_classical(alpha: Complex64, n: u32) -> Complex64 {
    (0..n).fold(ONE, |acc, k| acc * (alpha + k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn qexp_examples() {
        let ctx = QContext::new(0.5).unwrap();
        assert_eq!(qexp(c(0.0), &ctx).unwrap().value, c(1.0));
        // Σ x^n / (q;q)_n, 60 terms
        let mut sum = 0.0;
        let mut qq = 1.0;
        for n in 0..60 {
            if n > 0 {
                qq *= 1.0 - 0.5f64.powi(n);
            }
            sum += 0.5f64.powi(n) / qq;
        }
        let v = qexp(c(0.5), &ctx).unwrap();
        assert!((v.value.re - sum).abs() < 1e-12 * sum);
    }

    #[test]
    fn qexp_approaches_exp() {
        let q = 0.99;
        let ctx = QContext::new(q).unwrap();
        let v = qexp(c(0.9 * (1.0 - q)), &ctx).unwrap();
        assert!((v.value.re - 0.9f64.exp()).abs() < 0.05);
    }

    #[test]
    fn qexp_domain_and_poles() {
        let ctx = QContext::new(0.5).unwrap();
        assert!(matches!(qexp(c(1.0), &ctx), Err(QError::PoleOnQSpiral(_))));
        assert!(matches!(qexp(c(4.0), &ctx), Err(QError::PoleOnQSpiral(_))));
        assert!(matches!(qexp(c(3.0), &ctx), Err(QError::DomainError(_))));
        assert!(matches!(qexp(Complex64::new(0.0, 1.2), &ctx), Err(QError::DomainError(_))));
    }

    #[test]
    fn qgamma_examples() {
        let ctx = QContext::new(0.5).unwrap();
        assert!((qgamma(c(1.0), &ctx).unwrap().value - c(1.0)).norm() < 1e-15);
        assert!((qgamma(c(2.0), &ctx).unwrap().value - c(1.0)).norm() < 1e-14);
        // Γ_q(x+1) = [x]_q Γ_q(x)
        let x = Complex64::new(0.3, 0.4);
        let lhs = qgamma(x + 1.0, &ctx).unwrap().value;
        let rhs = (ONE - (x * 0.5f64.ln()).exp()) / 0.5 * qgamma(x, &ctx).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());

        let ctx = QContext::new(0.999).unwrap();
        let v = qgamma(c(0.5), &ctx).unwrap().value.re;
        assert!((v / PI.sqrt() - 1.0).abs() < 0.02);
    }

    #[test]
    fn qgamma_poles_and_complex_q() {
        let ctx = QContext::new(0.5).unwrap();
        assert_eq!(qgamma(c(0.0), &ctx).unwrap_err(), QError::PoleAtNonPositiveInteger(0));
        assert_eq!(qgamma(c(-2.0), &ctx).unwrap_err(), QError::PoleAtNonPositiveInteger(-2));
        let ctx = QContext::new(Complex64::new(0.5, 0.1)).unwrap();
        assert!(matches!(qgamma(c(1.5), &ctx), Err(QError::DomainError(_))));
    }

    #[test]
    fn gamma_reference_values() {
        assert!((gamma_classical(c(1.0)).unwrap() - c(1.0)).norm() < 1e-14);
        assert!((gamma_classical(c(5.0)).unwrap() - c(24.0)).norm() < 24.0 * 1e-14);
        let v = gamma_classical(c(0.5)).unwrap();
        assert!((v.re - 1.772_453_850_905_516).abs() < 1e-14);
        let v = gamma_classical(c(1.0 / 3.0)).unwrap();
        assert!((v.re - 2.678_938_534_707_747_6).abs() < 1e-13);
        let v = gamma_classical(Complex64::new(1.0, 1.0)).unwrap();
        let r = Complex64::new(0.498_015_668_118_356, -0.154_949_828_301_810_7);
        assert!((v - r).norm() < 1e-13);
        let v = gamma_classical(c(-0.5)).unwrap();
        assert!((v.re + 3.544_907_701_811_032).abs() < 1e-13);
        assert_eq!(gamma_classical(c(-3.0)).unwrap_err(), QError::PoleAtNonPositiveInteger(-3));
    }

    #[test]
    fn rising_factorial() {
        assert_eq!(pochhammer_classical(c(3.0), 0), c(1.0));
        assert_eq!(pochhammer_classical(c(3.0), 3), c(60.0));
        assert_eq!(pochhammer_classical(c(-2.0), 4), c(0.0));
    }
}
