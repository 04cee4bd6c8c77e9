//! Termwise q-Borel transforms of formal series.

use crate::context::QContext;
use crate::scaled::ScaledComplex;
use crate::series::FormalBilateralSeries;

/// First-kind q-Borel transform: `c_n ↦ c_n q^{n(n−1)/2}` for every
/// `n ∈ ℤ` (the termwise bilateral extension of the one-sided definition).
pub fn qborel_plus(f: &FormalBilateralSeries, ctx: &QContext) -> FormalBilateralSeries {
    let q = ctx.q();
    f.reweight(format!("B+[{}]", f.label()), 1, move |n| ScaledComplex::q_triangular(q, n))
}

/// Second-kind q-Borel transform: `c_n ↦ c_n q^{−n(n−1)/2}`.
pub fn qborel_minus(f: &FormalBilateralSeries, ctx: &QContext) -> FormalBilateralSeries {
    let q = ctx.q();
    f.reweight(format!("B-[{}]", f.label()), -1, move |n| ScaledComplex::q_triangular(q, n).recip())
}
