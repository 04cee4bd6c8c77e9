use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::value::SeriesValue;

/// Named parameters of a verification point, kept in sorted key order.
pub type ParamPoint = BTreeMap<String, Complex64>;

/// Guard against division by zero when normalising residuals.
pub const RESIDUAL_FLOOR: f64 = 1e-300;

/// Outcome of comparing the two sides of an identity at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub point: ParamPoint,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs - rhs| / max(scale, RESIDUAL_FLOOR)`; the scale is `|rhs|`
    /// unless stated otherwise by the check.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub terms_used: usize,
}

impl VerificationReport {
    /// Relative comparison `|lhs - rhs| / |rhs|`.
    pub fn compare(
        identity: &str,
        point: ParamPoint,
        lhs: SeriesValue,
        rhs: SeriesValue,
        tolerance: f64,
    ) -> Self {
        let scale = rhs.value.norm();
        Self::with_scale(identity, point, lhs, rhs, scale, tolerance)
    }

    /// Comparison normalised by an explicit scale, for residuals of equations
    /// whose two sides may both be small.
    pub fn with_scale(
        identity: &str,
        point: ParamPoint,
        lhs: SeriesValue,
        rhs: SeriesValue,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        let residual = (lhs.value - rhs.value).norm() / scale.max(RESIDUAL_FLOOR);
        Self {
            identity: identity.to_string(),
            point,
            lhs: lhs.value,
            rhs: rhs.value,
            residual,
            tolerance,
            pass: residual <= tolerance,
            terms_used: lhs.terms_used + rhs.terms_used,
        }
    }
}

/// Builds a [`ParamPoint`] from `(name, value)` pairs.
pub fn point<const N: usize>(pairs: [(&str, Complex64); N]) -> ParamPoint {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
