use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Numerical policy shared by every kernel: the base `q`, truncation
/// tolerances and budgets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QContext {
    q: Complex64,
    tol_rel: f64,
    max_terms: usize,
    quad_points: usize,
    spiral_eps: f64,
    unsafe_eval: bool,
}

impl QContext {
    pub const DEFAULT_TOL_REL: f64 = 1e-15;
    pub const DEFAULT_MAX_TERMS: usize = 400_000;
    pub const DEFAULT_QUAD_POINTS: usize = 64;
    pub const DEFAULT_SPIRAL_EPS: f64 = 1e-9;

    /// Context with default tolerances. Fails unless `0 <= |q| < 1`.
    pub fn new(q: impl Into<Complex64>) -> Result<Self> {
        Self::with_params(
            q.into(),
            Self::DEFAULT_TOL_REL,
            Self::DEFAULT_MAX_TERMS,
            Self::DEFAULT_QUAD_POINTS,
            Self::DEFAULT_SPIRAL_EPS,
        )
    }

    pub fn with_params(
        q: Complex64,
        tol_rel: f64,
        max_terms: usize,
        quad_points: usize,
        spiral_eps: f64,
    ) -> Result<Self> {
        if !q.is_finite() || q.norm() >= 1.0 {
            return Err(QError::InvalidContext(format!("|q| = {} must be < 1", q.norm())));
        }
        if !(tol_rel > 0.0 && tol_rel < 1.0) {
            return Err(QError::InvalidContext(format!("tol_rel = {tol_rel} not in (0, 1)")));
        }
        if !(spiral_eps > 0.0 && spiral_eps < 1.0) {
            return Err(QError::InvalidContext(format!(
                "spiral_eps = {spiral_eps} not in (0, 1)"
            )));
        }
        if max_terms < 8 {
            return Err(QError::InvalidContext(format!("max_terms = {max_terms} < 8")));
        }
        if quad_points < 16 {
            return Err(QError::InvalidContext(format!("quad_points = {quad_points} < 16")));
        }
        Ok(Self { q, tol_rel, max_terms, quad_points, spiral_eps, unsafe_eval: false })
    }

    /// Same policy with a different base.
    pub fn with_q(&self, q: impl Into<Complex64>) -> Result<Self> {
        let mut ctx = Self::with_params(
            q.into(),
            self.tol_rel,
            self.max_terms,
            self.quad_points,
            self.spiral_eps,
        )?;
        ctx.unsafe_eval = self.unsafe_eval;
        Ok(ctx)
    }

    pub fn with_tol_rel(mut self, tol_rel: f64) -> Result<Self> {
        if !(tol_rel > 0.0 && tol_rel < 1.0) {
            return Err(QError::InvalidContext(format!("tol_rel = {tol_rel} not in (0, 1)")));
        }
        self.tol_rel = tol_rel;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms < 8 {
            return Err(QError::InvalidContext(format!("max_terms = {max_terms} < 8")));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    pub fn with_quad_points(mut self, quad_points: usize) -> Result<Self> {
        if quad_points < 16 {
            return Err(QError::InvalidContext(format!("quad_points = {quad_points} < 16")));
        }
        self.quad_points = quad_points;
        Ok(self)
    }

    pub fn with_spiral_eps(mut self, spiral_eps: f64) -> Result<Self> {
        if !(spiral_eps > 0.0 && spiral_eps < 1.0) {
            return Err(QError::InvalidContext(format!(
                "spiral_eps = {spiral_eps} not in (0, 1)"
            )));
        }
        self.spiral_eps = spiral_eps;
        Ok(self)
    }

    /// Skip convergence-domain enforcement in the series evaluators. Partial
    /// sums are still subject to the truncation budget.
    pub fn with_unsafe_eval(mut self, unsafe_eval: bool) -> Self {
        self.unsafe_eval = unsafe_eval;
        self
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn quad_points(&self) -> usize {
        self.quad_points
    }

    pub fn spiral_eps(&self) -> f64 {
        self.spiral_eps
    }

    pub fn unsafe_eval(&self) -> bool {
        self.unsafe_eval
    }

    /// `q` as a real number in (0, 1), for the limit studies.
    pub fn real_q(&self) -> Result<f64> {
        let q = self.q;
        if q.im != 0.0 || !(q.re > 0.0 && q.re < 1.0) {
            return Err(QError::DomainError(format!("q = {q} must be real in (0, 1)")));
        }
        Ok(q.re)
    }
}
