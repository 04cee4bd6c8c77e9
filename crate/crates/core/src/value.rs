use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A computed value with an absolute a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub err_estimate: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn exact(value: Complex64) -> Self {
        Self { value, err_estimate: 0.0, terms_used: 0 }
    }

    pub fn from_real(x: f64) -> Self {
        Self::exact(Complex64::new(x, 0.0))
    }

    /// Relative error estimate; infinite for a zero value with nonzero error.
    pub fn rel_err(&self) -> f64 {
        let m = self.value.norm();
        if m == 0.0 {
            if self.err_estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.err_estimate / m
        }
    }
}
