//! Complex numbers carried as `mantissa * 2^exponent`.
//!
//! Theta values along a q-spiral and q-Pochhammer products near `q = 1`
//! routinely leave the `f64` exponent range even when the quantities built
//! from them are of order one. Every kernel works in this representation and
//! converts back only at the end.

use num_complex::Complex64;

use crate::value::SeriesValue;

/// `mant * 2^exp2` with `max(|re|, |im|)` of `mant` in `[1, 2)`, or exactly zero.
///
/// Scaling by powers of two is exact, so products and quotients lose no
/// more accuracy than the `f64` mantissa arithmetic itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    mant: Complex64,
    exp2: i64,
}

/// `x * 2^k`, exact barring overflow or underflow of the result.
fn ldexp(x: f64, mut k: i64) -> f64 {
    let mut x = x;
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(k as i32)
}

fn ldexp_c(z: Complex64, k: i64) -> Complex64 {
    Complex64::new(ldexp(z.re, k), ldexp(z.im, k))
}

impl ScaledComplex {
    pub const ZERO: Self = Self { mant: Complex64 { re: 0.0, im: 0.0 }, exp2: 0 };
    pub const ONE: Self = Self { mant: Complex64 { re: 1.0, im: 0.0 }, exp2: 0 };

    fn infinite() -> Self {
        Self { mant: Complex64::new(f64::INFINITY, 0.0), exp2: 0 }
    }

    fn renorm(m: Complex64, exp2: i64) -> Self {
        let top = m.re.abs().max(m.im.abs());
        if top == 0.0 {
            return Self::ZERO;
        }
        if !top.is_finite() {
            return Self { mant: m, exp2: 0 };
        }
        let mut e = top.log2().floor() as i64;
        let mut mant = ldexp_c(m, -e);
        let t = mant.re.abs().max(mant.im.abs());
        if t >= 2.0 {
            mant = ldexp_c(mant, -1);
            e += 1;
        } else if t < 1.0 {
            mant = ldexp_c(mant, 1);
            e -= 1;
        }
        Self { mant, exp2: exp2 + e }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::renorm(z, 0)
    }

    /// `m * 2^exp2`, exactly.
    pub fn from_parts(m: Complex64, exp2: i64) -> Self {
        Self::renorm(m, exp2)
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    /// `exp(log_mag) * exp(i * phase)`.
    pub fn from_polar_ln(log_mag: f64, phase: f64) -> Self {
        if !log_mag.is_finite() {
            return if log_mag < 0.0 { Self::ZERO } else { Self::infinite() };
        }
        let l2 = log_mag / std::f64::consts::LN_2;
        let e = l2.floor();
        let frac = l2 - e;
        Self::renorm(Complex64::from_polar(frac.exp2(), phase), e as i64)
    }

    /// `z^n` for integer `n`, without intermediate overflow.
    pub fn powi(z: Complex64, n: i64) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if z.re == 0.0 && z.im == 0.0 {
            return if n > 0 { Self::ZERO } else { Self::infinite() };
        }
        if n.unsigned_abs() <= 64 {
            // exact-as-possible binary powering
            let base = if n > 0 { Self::from_complex(z) } else { Self::from_complex(z).recip() };
            let mut k = n.unsigned_abs();
            let mut acc = Self::ONE;
            let mut b = base;
            while k > 0 {
                if k & 1 == 1 {
                    acc *= b;
                }
                b *= b;
                k >>= 1;
            }
            return acc;
        }
        let nf = n as f64;
        if z.im == 0.0 {
            let sign = if z.re < 0.0 && n % 2 != 0 { -1.0 } else { 1.0 };
            return Self::from_polar_ln(nf * z.re.abs().ln(), 0.0) * Self::from_real(sign);
        }
        Self::from_polar_ln(nf * z.norm().ln(), nf * z.arg())
    }

    /// `q^(n(n-1)/2)`, the Gaussian weight of theta-type series.
    pub fn q_triangular(q: Complex64, n: i64) -> Self {
        let e = n * (n - 1) / 2;
        Self::powi(q, e)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.re == 0.0 && self.mant.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mant.is_finite()
    }

    /// `ln |self|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.exp2 as f64 * std::f64::consts::LN_2 + self.mant.norm().ln()
        }
    }

    pub fn abs(&self) -> f64 {
        ldexp(self.mant.norm(), self.exp2)
    }

    /// `|self|` as a scaled non-negative real.
    pub fn norm_scaled(&self) -> Self {
        Self::renorm(Complex64::new(self.mant.norm(), 0.0), self.exp2)
    }

    pub fn to_complex(&self) -> Complex64 {
        ldexp_c(self.mant, self.exp2)
    }

    pub fn to_real(&self) -> f64 {
        self.to_complex().re
    }

    pub fn scale(&self, s: f64) -> Self {
        *self * Self::from_real(s)
    }

    pub fn recip(&self) -> Self {
        if self.is_zero() {
            return Self::infinite();
        }
        Self::renorm(Complex64::new(1.0, 0.0) / self.mant, -self.exp2)
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Self::renorm(self.mant / rhs.mant, self.exp2 - rhs.exp2))
        }
    }

    /// `|self| / |other|` as an `f64`, robust to range.
    pub fn ratio_abs(&self, other: &Self) -> f64 {
        ldexp(self.mant.norm() / other.mant.norm(), self.exp2 - other.exp2)
    }
}

impl From<Complex64> for ScaledComplex {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl std::ops::Mul for ScaledComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::renorm(self.mant * rhs.mant, self.exp2 + rhs.exp2)
    }
}

impl std::ops::MulAssign for ScaledComplex {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl std::ops::Add for ScaledComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let top = self.exp2.max(rhs.exp2);
        let m = ldexp_c(self.mant, self.exp2 - top) + ldexp_c(rhs.mant, rhs.exp2 - top);
        Self::renorm(m, top)
    }
}

impl std::ops::AddAssign for ScaledComplex {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl std::ops::Neg for ScaledComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mant: -self.mant, exp2: self.exp2 }
    }
}

impl std::ops::Sub for ScaledComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// A scaled value with a relative error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub value: ScaledComplex,
    pub rel_err: f64,
    pub terms_used: usize,
}

impl ScaledValue {
    pub fn exact(value: ScaledComplex) -> Self {
        Self { value, rel_err: 0.0, terms_used: 0 }
    }

    pub fn to_series(&self) -> SeriesValue {
        let value = self.value.to_complex();
        SeriesValue {
            value,
            err_estimate: self.rel_err * value.norm(),
            terms_used: self.terms_used,
        }
    }

    /// Quotient; `None` when `rhs` is exactly zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Some(Self {
            value: self.value.checked_div(rhs.value)?,
            rel_err: self.rel_err + rhs.rel_err,
            terms_used: self.terms_used + rhs.terms_used,
        })
    }
}

impl std::ops::Mul for ScaledValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            rel_err: self.rel_err + rhs.rel_err,
            terms_used: self.terms_used + rhs.terms_used,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn round_trips_ordinary_values() {
        for z in [Complex64::new(3.0, -4.0), Complex64::new(-1e-200, 0.0), Complex64::new(0.0, 7.5)] {
            assert!(close(ScaledComplex::from(z).to_complex(), z, 1e-15));
        }
        assert!(ScaledComplex::from(Complex64::new(0.0, 0.0)).is_zero());
    }

    #[test]
    fn products_beyond_f64_range() {
        let big = ScaledComplex::from_polar_ln(2000.0, 0.3);
        let small = ScaledComplex::from_polar_ln(-1999.0, -0.3);
        let p = big * small;
        assert!(close(p.to_complex(), Complex64::new(1f64.exp(), 0.0), 1e-12));
        let q = big.checked_div(big).unwrap();
        assert!(close(q.to_complex(), Complex64::new(1.0, 0.0), 1e-15));
        assert!(big.checked_div(ScaledComplex::ZERO).is_none());
    }

    #[test]
    fn addition_aligns_scales() {
        let a = ScaledComplex::from_polar_ln(800.0, 0.0);
        let b = ScaledComplex::from_polar_ln(800.0 + 2f64.ln(), 0.0);
        let s = a + b;
        assert!((s.ln_abs() - (800.0 + 3f64.ln())).abs() < 1e-12);
        assert!((a - a).is_zero());
    }

    #[test]
    fn integer_powers() {
        let z = Complex64::new(-0.5, 0.0);
        assert!(close(ScaledComplex::powi(z, 3).to_complex(), Complex64::new(-0.125, 0.0), 1e-15));
        let w = Complex64::new(0.3, 0.4);
        assert!(close(ScaledComplex::powi(w, -5).to_complex(), w.powi(-5), 1e-13));
        assert!(close(
            ScaledComplex::q_triangular(Complex64::new(0.5, 0.0), 4).to_complex(),
            Complex64::new(0.5f64.powi(6), 0.0),
            1e-15
        ));
        // n(n-1)/2 at n = -2 is 3
        assert!(close(
            ScaledComplex::q_triangular(Complex64::new(0.5, 0.0), -2).to_complex(),
            Complex64::new(0.125, 0.0),
            1e-15
        ));
    }
}
