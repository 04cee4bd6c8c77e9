//! Functions reachable through `eval`.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::qcore::{
    gamma_classical, qexp, qgamma, qpochhammer_finite, qpochhammer_infinite, theta, theta_series,
};
use crate::resummation::{connection_c, psi_hat_10, theorem1_rhs, u_infinity, ResummationPoint};
use crate::series::{
    horn_rhs, phi_rs, psi11_neg_lambda, psi_of_xi, psi_rs, qbb_rhs, ramanujan_rhs, HypergeometricParams,
};
use crate::value::SeriesValue;
use crate::verify::{ParamPoint, DEFAULT_LAMBDA};

type EvalFn = fn(&ParamPoint, &QContext) -> Result<SeriesValue>;

/// An evaluable function. Every `q` parameter is installed in the context
/// before `eval` runs.
pub struct FunctionEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub defaults: &'static [(&'static str, f64)],
    pub description: &'static str,
    eval: EvalFn,
}

impl FunctionEntry {
    pub fn eval(&self, p: &ParamPoint, ctx: &QContext) -> Result<SeriesValue> {
        let ctx = match p.get("q") {
            Some(&q) => ctx.with_q(q)?,
            None => *ctx,
        };
        (self.eval)(p, &ctx)
    }
}

fn g(p: &ParamPoint, k: &str) -> Complex64 {
    p[k]
}

fn integer(p: &ParamPoint, k: &str) -> Result<i64> {
    let v = p[k];
    if v.im != 0.0 || v.re.fract() != 0.0 || v.re.abs() > 1e9 {
        return Err(QError::DomainError(format!("{k} must be an integer, got {v}")));
    }
    Ok(v.re as i64)
}

fn rpoint(p: &ParamPoint) -> ResummationPoint {
    ResummationPoint::new(g(p, "a"), g(p, "lambda"), g(p, "x"), g(p, "q"))
}

const LAMBDA: &[(&str, f64)] = &[("lambda", DEFAULT_LAMBDA)];

static FUNCTIONS: &[FunctionEntry] = &[
    FunctionEntry {
        name: "connection_c",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA,
        description: "q-elliptic connection function C(x;q)",
        eval: |p, ctx| connection_c(g(p, "a"), g(p, "lambda"), g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "gamma",
        params: &["x"],
        defaults: &[],
        description: "classical gamma function",
        eval: |p, _| gamma_classical(g(p, "x")).map(SeriesValue::exact),
    },
    FunctionEntry {
        name: "horn_rhs",
        params: &["alpha", "beta", "z"],
        defaults: &[],
        description: "closed form of the bilateral binomial sum on |z| = 1",
        eval: |p, _| horn_rhs(g(p, "alpha"), g(p, "beta"), g(p, "z")).map(SeriesValue::exact),
    },
    FunctionEntry {
        name: "phi21",
        params: &["a", "b", "c", "q", "x"],
        defaults: &[],
        description: "2phi1(a,b;c;q,x) by summation",
        eval: |p, ctx| phi_rs(&HypergeometricParams::new(vec![g(p, "a"), g(p, "b")], vec![g(p, "c")], ctx.q())?, g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "psi11",
        params: &["a", "b", "q", "z"],
        defaults: &[],
        description: "1psi1(a;b;q,z) by bilateral summation",
        eval: |p, ctx| psi_rs(&HypergeometricParams::new(vec![g(p, "a")], vec![g(p, "b")], ctx.q())?, g(p, "z"), ctx),
    },
    FunctionEntry {
        name: "psi11_neg_lambda",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA,
        description: "1psi1(-lambda;0;q,1/(ax)) in closed form",
        eval: |p, ctx| psi11_neg_lambda(g(p, "lambda"), g(p, "a"), g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "psi_hat_10",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA,
        description: "q-Laplace resummation of 1psi0(a;-;q,x)",
        eval: |p, ctx| psi_hat_10(&rpoint(p), ctx),
    },
    FunctionEntry {
        name: "psi_of_xi",
        params: &["a", "q", "xi"],
        defaults: &[],
        description: "q-Borel image of 1psi0(a;-;q,x)",
        eval: |p, ctx| psi_of_xi(g(p, "a"), g(p, "xi"), ctx),
    },
    FunctionEntry {
        name: "qbb_rhs",
        params: &["alpha", "beta", "q", "z"],
        defaults: &[],
        description: "product side of the q-analogue of the bilateral binomial sum",
        eval: |p, ctx| qbb_rhs(g(p, "alpha"), g(p, "beta"), g(p, "z"), ctx),
    },
    FunctionEntry {
        name: "qexp",
        params: &["q", "x"],
        defaults: &[],
        description: "q-exponential e_q(x) = 1/(x;q)_inf",
        eval: |p, ctx| qexp(g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "qgamma",
        params: &["q", "x"],
        defaults: &[],
        description: "q-gamma function",
        eval: |p, ctx| qgamma(g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "qpochhammer",
        params: &["a", "n", "q"],
        defaults: &[],
        description: "finite q-Pochhammer symbol (a;q)_n, any integer n",
        eval: |p, ctx| qpochhammer_finite(g(p, "a"), ctx.q(), integer(p, "n")?).map(SeriesValue::exact),
    },
    FunctionEntry {
        name: "qpochhammer_inf",
        params: &["a", "q"],
        defaults: &[],
        description: "infinite q-Pochhammer product (a;q)_inf",
        eval: |p, ctx| qpochhammer_infinite(g(p, "a"), ctx),
    },
    FunctionEntry {
        name: "ramanujan_rhs",
        params: &["a", "b", "q", "z"],
        defaults: &[],
        description: "product side of Ramanujan's 1psi1 sum",
        eval: |p, ctx| ramanujan_rhs(g(p, "a"), g(p, "b"), ctx.q(), g(p, "z"), ctx),
    },
    FunctionEntry {
        name: "theorem1_rhs",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA,
        description: "closed product for the resummed 1psi0(a;-;q,x)",
        eval: |p, ctx| theorem1_rhs(&rpoint(p), ctx),
    },
    FunctionEntry {
        name: "theta",
        params: &["q", "x"],
        defaults: &[],
        description: "Jacobi theta function by the triple product",
        eval: |p, ctx| theta(g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "theta_series",
        params: &["q", "x"],
        defaults: &[],
        description: "Jacobi theta function by its bilateral series",
        eval: |p, ctx| theta_series(g(p, "x"), ctx),
    },
    FunctionEntry {
        name: "u_infinity",
        params: &["a", "q", "x"],
        defaults: &[],
        description: "convergent solution at infinity of the degenerate equation",
        eval: |p, ctx| u_infinity(g(p, "a"), g(p, "x"), ctx),
    },
];

pub fn functions() -> &'static [FunctionEntry] {
    FUNCTIONS
}

pub fn function(name: &str) -> Option<&'static FunctionEntry> {
    FUNCTIONS.iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::point;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sorted_names() {
        for w in FUNCTIONS.windows(2) {
            assert!(w[0].name < w[1].name);
        }
    }

    #[test]
    fn examples() {
        let ctx = QContext::new(0.5).unwrap();
        let v = function("theta").unwrap().eval(&point([("q", c(0.5)), ("x", c(-1.0))]), &ctx).unwrap();
        assert!(v.value.norm() < 1e-12);
        let v = function("qgamma").unwrap().eval(&point([("q", c(0.5)), ("x", c(2.0))]), &ctx).unwrap();
        assert!((v.value - c(1.0)).norm() < 1e-14);
        let v = function("qpochhammer").unwrap().eval(&point([("a", c(0.5)), ("n", c(-2.0)), ("q", c(0.5))]), &ctx);
        assert!(v.is_err());
        let v = function("qpochhammer").unwrap().eval(&point([("a", c(0.5)), ("n", c(2.5)), ("q", c(0.5))]), &ctx);
        assert!(matches!(v, Err(QError::DomainError(_))));
    }
}
