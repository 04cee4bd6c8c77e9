//! Label-indexed tables of the identity checks and limit studies, used by
//! the command line and the acceptance suite.

use num_complex::Complex64;

use crate::context::QContext;
use crate::error::{QError, Result};
use crate::resummation::ResummationPoint;
use crate::series::qbb_lhs_rhs;
use crate::verify::checks::*;
use crate::verify::limits::*;
use crate::verify::report::{ParamPoint, VerificationReport};

/// Parameters filled in when absent.
const LAMBDA_DEFAULT: &[(&str, f64)] = &[("lambda", DEFAULT_LAMBDA)];

type RunFn = fn(&ParamPoint, &QContext) -> Result<Vec<VerificationReport>>;
type AdmitFn = fn(&ParamPoint, &QContext) -> Result<()>;
type LimitFn = fn(&ParamPoint, &[f64], &QContext) -> Result<LimitScan>;

/// A verifiable identity.
pub struct IdentityEntry {
    pub label: &'static str,
    pub params: &'static [&'static str],
    pub defaults: &'static [(&'static str, f64)],
    pub description: &'static str,
    admissible: AdmitFn,
    run: RunFn,
}

/// A `q → 1⁻` limit study.
pub struct LimitEntry {
    pub label: &'static str,
    pub params: &'static [&'static str],
    pub defaults: &'static [(&'static str, f64)],
    pub description: &'static str,
    run: LimitFn,
}

/// Adds defaults and checks that every parameter is present. Returns the
/// name of the first missing parameter on failure.
fn complete(
    params: &[&'static str],
    defaults: &[(&'static str, f64)],
    point: &ParamPoint,
) -> std::result::Result<ParamPoint, &'static str> {
    let mut p = point.clone();
    for (k, v) in defaults {
        p.entry((*k).to_string()).or_insert(Complex64::new(*v, 0.0));
    }
    match params.iter().find(|k| !p.contains_key(**k)) {
        Some(k) => Err(k),
        None => Ok(p),
    }
}

impl IdentityEntry {
    /// The point with defaults filled in, or the first missing parameter.
    pub fn complete(&self, point: &ParamPoint) -> std::result::Result<ParamPoint, &'static str> {
        complete(self.params, self.defaults, point)
    }

    /// Whether the identity's preconditions hold at a completed point.
    /// Default grids skip points failing this check.
    pub fn admissible(&self, point: &ParamPoint, ctx: &QContext) -> Result<()> {
        (self.admissible)(point, ctx)
    }

    /// Runs the check at a completed point. Some identities yield one report
    /// per representation.
    pub fn run(&self, point: &ParamPoint, ctx: &QContext) -> Result<Vec<VerificationReport>> {
        (self.run)(point, ctx)
    }
}

impl LimitEntry {
    pub fn complete(&self, point: &ParamPoint) -> std::result::Result<ParamPoint, &'static str> {
        complete(self.params, self.defaults, point)
    }

    pub fn run(&self, point: &ParamPoint, q_grid: &[f64], ctx: &QContext) -> Result<LimitScan> {
        (self.run)(point, q_grid, ctx)
    }
}

fn g(p: &ParamPoint, k: &str) -> Complex64 {
    p[k]
}

fn real(p: &ParamPoint, k: &str) -> Result<f64> {
    let v = p[k];
    if v.im != 0.0 {
        return Err(QError::DomainError(format!("{k} must be real, got {v}")));
    }
    Ok(v.re)
}

fn always(_: &ParamPoint, _: &QContext) -> Result<()> {
    Ok(())
}

fn one(r: Result<VerificationReport>) -> Result<Vec<VerificationReport>> {
    r.map(|r| vec![r])
}

fn resummation_point(p: &ParamPoint) -> ResummationPoint {
    ResummationPoint::new(g(p, "a"), g(p, "lambda"), g(p, "x"), g(p, "q"))
}

fn admit_resummation(p: &ParamPoint, ctx: &QContext) -> Result<()> {
    resummation_point(p).validate(ctx)
}

fn admit_elliptic_unit(p: &ParamPoint, ctx: &QContext) -> Result<()> {
    let mut p = p.clone();
    p.insert("a".into(), Complex64::new(1.0, 0.0));
    admit_resummation(&p, ctx)
}

fn admit_bqua2(p: &ParamPoint, ctx: &QContext) -> Result<()> {
    admit_resummation(p, ctx)?;
    let mut shifted = p.clone();
    shifted.insert("x".into(), g(p, "q") * g(p, "x"));
    admit_resummation(&shifted, ctx)
}

static IDENTITIES: &[IdentityEntry] = &[
    IdentityEntry {
        label: "bqua",
        params: &["a", "b", "q", "z"],
        defaults: &[],
        description: "first-order equation of 1psi1(a;b;q,z), direct bilateral sum",
        admissible: always,
        run: |p, ctx| one(check_qdiff_bqua(g(p, "a"), g(p, "b"), g(p, "q"), g(p, "z"), BquaVariant::Series, ctx)),
    },
    IdentityEntry {
        label: "bqua2",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "degenerate first-order equation for theorem1_rhs, u_infinity and psi_hat_10",
        admissible: admit_bqua2,
        run: |p, ctx| {
            Bqua2Repr::ALL
                .iter()
                .map(|&r| check_qdiff_bqua2(g(p, "a"), g(p, "lambda"), g(p, "x"), g(p, "q"), r, ctx))
                .collect()
        },
    },
    IdentityEntry {
        label: "bqua_closed",
        params: &["a", "b", "q", "z"],
        defaults: &[],
        description: "first-order equation of 1psi1(a;b;q,z), product formula",
        admissible: always,
        run: |p, ctx| {
            one(check_qdiff_bqua(g(p, "a"), g(p, "b"), g(p, "q"), g(p, "z"), BquaVariant::ClosedForm, ctx))
        },
    },
    IdentityEntry {
        label: "elliptic",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "q-periodicity C(qx) = C(x) of the connection function",
        admissible: admit_resummation,
        run: |p, ctx| one(check_elliptic(g(p, "a"), g(p, "lambda"), g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "elliptic_unit",
        params: &["lambda", "q", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "C = 1 when a = 1",
        admissible: admit_elliptic_unit,
        run: |p, ctx| one(check_elliptic_unit(g(p, "lambda"), g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "heine",
        params: &["a", "b", "c", "q", "x"],
        defaults: &[],
        description: "Heine's second-order equation for 2phi1",
        admissible: always,
        run: |p, ctx| {
            one(check_heine_residual(g(p, "a"), g(p, "b"), g(p, "c"), g(p, "q"), g(p, "x"), HeineSolution::Phi, ctx))
        },
    },
    IdentityEntry {
        label: "heine_v1",
        params: &["a", "b", "c", "q", "x"],
        defaults: &[],
        description: "Heine's equation for the first solution at infinity",
        admissible: always,
        run: |p, ctx| {
            one(check_heine_residual(g(p, "a"), g(p, "b"), g(p, "c"), g(p, "q"), g(p, "x"), HeineSolution::V1, ctx))
        },
    },
    IdentityEntry {
        label: "heine_v2",
        params: &["a", "b", "c", "q", "x"],
        defaults: &[],
        description: "Heine's equation for the second solution at infinity",
        admissible: always,
        run: |p, ctx| {
            one(check_heine_residual(g(p, "a"), g(p, "b"), g(p, "c"), g(p, "q"), g(p, "x"), HeineSolution::V2, ctx))
        },
    },
    IdentityEntry {
        label: "inverse_minus_geometric",
        params: &["q", "x"],
        defaults: &[],
        description: "second-kind Laplace of second-kind Borel of 1/(1-x)",
        admissible: always,
        run: |p, ctx| one(check_inverse_minus(TestSeries::Geometric, g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "inverse_minus_linear",
        params: &["q", "x"],
        defaults: &[],
        description: "second-kind Laplace of second-kind Borel of 1+x",
        admissible: always,
        run: |p, ctx| one(check_inverse_minus(TestSeries::Linear, g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "inverse_plus_geometric",
        params: &["lambda", "q", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "first-kind Laplace of first-kind Borel of 1/(1-x)",
        admissible: always,
        run: |p, ctx| one(check_inverse_plus(TestSeries::Geometric, g(p, "lambda"), g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "inverse_plus_linear",
        params: &["lambda", "q", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "first-kind Laplace of first-kind Borel of 1+x",
        admissible: always,
        run: |p, ctx| one(check_inverse_plus(TestSeries::Linear, g(p, "lambda"), g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "psi10_recurrence",
        params: &["a", "q"],
        defaults: &[],
        description: "coefficient recurrence of 1psi0(a;-;q,x)",
        admissible: always,
        run: |p, ctx| one(check_psi10_recurrence(g(p, "a"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "qbb",
        params: &["alpha", "beta", "q", "z"],
        defaults: &[],
        description: "q-analogue of the bilateral binomial sum, series against products",
        admissible: always,
        run: |p, ctx| one(qbb_lhs_rhs(g(p, "alpha"), g(p, "beta"), g(p, "z"), real(p, "q")?, ctx)),
    },
    IdentityEntry {
        label: "ramanujan",
        params: &["a", "b", "q", "z"],
        defaults: &[],
        description: "Ramanujan's 1psi1 summation",
        admissible: always,
        run: |p, ctx| one(check_ramanujan(g(p, "a"), g(p, "b"), g(p, "q"), g(p, "z"), ctx)),
    },
    IdentityEntry {
        label: "theorem1",
        params: &["a", "lambda", "q", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "resummed 1psi0(a;-;q,x) against its closed product",
        admissible: admit_resummation,
        run: |p, ctx| one(check_theorem1(&resummation_point(p), ctx)),
    },
    IdentityEntry {
        label: "theta",
        params: &["q", "x"],
        defaults: &[],
        description: "Jacobi triple product against the theta series",
        admissible: always,
        run: |p, ctx| one(check_theta(g(p, "x"), g(p, "q"), ctx)),
    },
    IdentityEntry {
        label: "watson",
        params: &["a", "b", "c", "q", "x"],
        defaults: &[],
        description: "Watson's connection formula for 2phi1",
        admissible: always,
        run: |p, ctx| one(check_watson(g(p, "a"), g(p, "b"), g(p, "c"), g(p, "q"), g(p, "x"), ctx)),
    },
];

static LIMITS: &[LimitEntry] = &[
    LimitEntry {
        label: "binomial",
        params: &["alpha", "x"],
        defaults: &[],
        description: "(xq^alpha;q)_inf/(x;q)_inf -> (1-x)^-alpha",
        run: |p, grid, ctx| limit_binomial(g(p, "alpha"), g(p, "x"), grid, ctx),
    },
    LimitEntry {
        label: "horn",
        params: &["alpha", "beta", "z"],
        defaults: &[],
        description: "q-analogue of the bilateral binomial sum -> classical closed form on |z| = 1",
        run: |p, grid, ctx| limit_horn(g(p, "alpha"), g(p, "beta"), g(p, "z"), grid, ctx),
    },
    LimitEntry {
        label: "limt1",
        params: &["alpha", "beta", "x"],
        defaults: &[],
        description: "theta(q^alpha x)/theta(q^beta x) -> x^(beta-alpha)",
        run: |p, grid, ctx| limit_prop21(g(p, "alpha"), g(p, "beta"), g(p, "x"), ThetaLimit::Plain, grid, ctx),
    },
    LimitEntry {
        label: "limt2",
        params: &["alpha", "beta", "x"],
        defaults: &[],
        description: "rescaled theta ratio -> (1/x)^(alpha-beta)",
        run: |p, grid, ctx| limit_prop21(g(p, "alpha"), g(p, "beta"), g(p, "x"), ThetaLimit::Rescaled, grid, ctx),
    },
    LimitEntry {
        label: "qexp",
        params: &["x"],
        defaults: &[],
        description: "e_q(x(1-q)) -> exp(x)",
        run: |p, grid, ctx| limit_qexp(g(p, "x"), grid, ctx),
    },
    LimitEntry {
        label: "qgamma",
        params: &["x"],
        defaults: &[],
        description: "Gamma_q(x) -> Gamma(x)",
        run: |p, grid, ctx| limit_qgamma(g(p, "x"), grid, ctx),
    },
    LimitEntry {
        label: "theorem2",
        params: &["alpha", "lambda", "x"],
        defaults: LAMBDA_DEFAULT,
        description: "resummed formula with a = q^alpha, x -> x/(1-q) -> Gamma(1-alpha) x^-alpha e^(1/x)",
        run: |p, grid, ctx| limit_theorem2_with_lambda(g(p, "alpha"), g(p, "x"), g(p, "lambda"), grid, ctx),
    },
];

/// All identity checks, sorted by label.
pub fn identities() -> &'static [IdentityEntry] {
    IDENTITIES
}

pub fn identity(label: &str) -> Option<&'static IdentityEntry> {
    IDENTITIES.iter().find(|e| e.label == label)
}

/// All limit studies, sorted by label.
pub fn limits() -> &'static [LimitEntry] {
    LIMITS
}

pub fn limit(label: &str) -> Option<&'static LimitEntry> {
    LIMITS.iter().find(|e| e.label == label)
}
