//! Acceptance suite: one pass/fail line per criterion, non-zero exit when
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use qresum::qcore::{theta, theta_series};
use qresum::verify::registry::{identity, limit};
use qresum::verify::{
    check_theorem1, parse_qgrid, Manifest, ParamPoint, VerificationReport, TAIL_LEN,
};
use qresum::resummation::ResummationPoint;
use qresum::{Complex64, QContext};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ctx() -> QContext {
    QContext::new(0.5).unwrap()
}

/// Runs `label` on its default grid, skipping inadmissible points, and
/// checks every report against `tol`.
fn grid_reports(label: &str, tol: f64) -> Result<(Vec<VerificationReport>, usize), String> {
    let entry = identity(label).ok_or(format!("no identity {label}"))?;
    let points = &Manifest::builtin().entry(label).ok_or(format!("no grid {label}"))?.points;
    let mut reports = Vec::new();
    let mut skipped = 0;
    for p in points {
        let p = entry.complete(p).map_err(|k| format!("{label}: missing {k}"))?;
        if entry.admissible(&p, &ctx()).is_err() {
            skipped += 1;
            continue;
        }
        let rs = entry.run(&p, &ctx()).map_err(|e| format!("{label} at {p:?}: {e}"))?;
        for mut r in rs {
            r.tolerance = tol;
            r.pass = r.residual <= tol;
            reports.push(r);
        }
    }
    Ok((reports, skipped))
}

fn summarize(label: &str, tol: f64, min_points: usize) -> Outcome {
    match grid_reports(label, tol) {
        Err(e) => Outcome { pass: false, detail: e },
        Ok((reports, skipped)) => {
            let worst = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
            let failed = reports.iter().filter(|r| !r.pass).count();
            let pass = failed == 0 && reports.len() >= min_points;
            Outcome {
                pass,
                detail: format!(
                    "{label}: {} checks, {failed} over {tol:e}, worst {worst:.2e}, {skipped} skipped",
                    reports.len()
                ),
            }
        }
    }
}

fn combine(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        pass: parts.iter().all(|o| o.pass),
        detail: parts.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join("; "),
    }
}

fn timed(budget: Duration, what: &str, o: Outcome, elapsed: Duration) -> Outcome {
    let within = elapsed <= budget;
    Outcome {
        pass: o.pass && within,
        detail: format!("{}; {what} {:.3}s (budget {:.0}s)", o.detail, elapsed.as_secs_f64(), budget.as_secs_f64()),
    }
}

fn criterion_1() -> Outcome {
    let points = &Manifest::builtin().entry("theorem1").unwrap().points;
    let entry = identity("theorem1").unwrap();
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    let mut checked = 0;
    let mut failed = Vec::new();
    for p in points {
        let p = entry.complete(p).unwrap();
        let rp = ResummationPoint::new(p["a"], p["lambda"], p["x"], p["q"]);
        if rp.validate(&ctx()).is_err() {
            continue;
        }
        let t = Instant::now();
        match check_theorem1(&rp, &ctx()) {
            Ok(r) => {
                worst = worst.max(r.residual);
                if r.residual > 1e-8 {
                    failed.push(format!("{p:?}"));
                }
            }
            Err(e) => failed.push(format!("{p:?}: {e}")),
        }
        slowest = slowest.max(t.elapsed());
        checked += 1;
    }
    Outcome {
        pass: failed.is_empty() && checked > 0 && slowest <= Duration::from_secs(1),
        detail: format!(
            "{checked} admissible points, worst {worst:.2e} (tol 1e-8), slowest {:.3}s (budget 1s){}",
            slowest.as_secs_f64(),
            if failed.is_empty() { String::new() } else { format!(", failures: {}", failed.join(", ")) }
        ),
    }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let o = combine(
        ["inverse_plus_geometric", "inverse_plus_linear", "inverse_minus_geometric", "inverse_minus_linear"]
            .iter()
            .map(|l| summarize(l, 1e-8, 6))
            .collect(),
    );
    timed(Duration::from_secs(1), "total", o, t.elapsed())
}

fn criterion_3() -> Outcome {
    summarize("ramanujan", 1e-8, 81)
}

fn criterion_4() -> Outcome {
    summarize("watson", 1e-7, 5)
}

fn criterion_5() -> Outcome {
    combine(vec![
        summarize("heine", 1e-9, 1),
        summarize("heine_v1", 1e-9, 1),
        summarize("heine_v2", 1e-9, 1),
        summarize("bqua", 1e-8, 1),
        summarize("bqua2", 1e-9, 3),
    ])
}

fn criterion_6() -> Outcome {
    combine(vec![summarize("elliptic", 1e-9, 1), summarize("elliptic_unit", 1e-12, 1)])
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for q in [c(0.5), Complex64::new(0.3, 0.4)] {
        let ctx = QContext::new(q).unwrap();
        // 50 log-spaced moduli in [1e-3, 1e3] on a rotating ray
        let mut worst_series = 0.0f64;
        let mut worst_qp = 0.0f64;
        let mut worst_inv = 0.0f64;
        let mut ok = true;
        for i in 0..50 {
            let m = 10f64.powf(-3.0 + 6.0 * i as f64 / 49.0);
            let x = Complex64::from_polar(m, 0.37 + 0.61 * i as f64);
            let p = theta(x, &ctx).unwrap();
            let s = theta_series(x, &ctx).unwrap();
            let d = (p.value - s.value).norm();
            worst_series = worst_series.max(d / s.value.norm());
            ok &= d <= 1e-12 * s.value.norm() + p.err_estimate + s.err_estimate;

            // θ(q^k x) = x^{-k} q^{-k(k-1)/2} θ(x), k = ±2
            for k in [-2i32, 2] {
                let lhs = theta(q.powi(k) * x, &ctx).unwrap();
                let factor = x.powi(-k) * q.powi(-k * (k - 1) / 2);
                let rhs = p.value * factor;
                let d = (lhs.value - rhs).norm();
                let bound = 10.0 * (lhs.err_estimate + p.err_estimate * factor.norm()) + 4.0 * f64::EPSILON * rhs.norm();
                worst_qp = worst_qp.max(d / rhs.norm());
                ok &= d <= bound;
            }
            // θ(x) = x θ(1/x)
            let inv = theta(Complex64::new(1.0, 0.0) / x, &ctx).unwrap();
            let rhs = x * inv.value;
            let d = (p.value - rhs).norm();
            worst_inv = worst_inv.max(d / rhs.norm());
            ok &= d <= 10.0 * (p.err_estimate + inv.err_estimate * x.norm()) + 4.0 * f64::EPSILON * rhs.norm();
        }
        let mut worst_zero = 0.0f64;
        for k in -3..=3 {
            let z = theta(-q.powi(k), &ctx).unwrap().value.norm();
            worst_zero = worst_zero.max(z);
            ok &= z <= 1e-10;
        }
        parts.push(Outcome {
            pass: ok,
            detail: format!(
                "q={q}: series {worst_series:.1e}, quasi-period {worst_qp:.1e}, inversion {worst_inv:.1e}, zeros {worst_zero:.1e}"
            ),
        });
    }
    combine(parts)
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let manifest = Manifest::builtin();
    let mut parts = Vec::new();
    for label in ["theorem2", "limt1", "limt2", "binomial", "qexp", "qgamma"] {
        let entry = limit(label).unwrap();
        let m = manifest.entry(label).unwrap();
        let grid = parse_qgrid(m.qgrid.as_deref().unwrap()).unwrap();
        for p in &m.points {
            let p: ParamPoint = entry.complete(p).unwrap();
            let o = match entry.run(&p, &grid, &ctx()) {
                Ok(s) => Outcome {
                    pass: s.final_error() <= 5e-2 && s.tail_non_increasing(TAIL_LEN) && s.errors.len() == 8,
                    detail: format!(
                        "{label}{:?}: final {:.2e}, tail monotone {}",
                        p.values().map(|v| v.re).collect::<Vec<_>>(),
                        s.final_error(),
                        s.tail_non_increasing(TAIL_LEN)
                    ),
                },
                Err(e) => Outcome { pass: false, detail: format!("{label}: {e}") },
            };
            parts.push(o);
        }
    }
    timed(Duration::from_secs(10), "total", combine(parts), t.elapsed())
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qresum");
    let run = |args: &[&str]| Command::new(bin).args(args).output().expect("binary runs");
    let a = run(&["verify", "theorem1", "--default-grid", "--output", "json"]);
    let b = run(&["verify", "theorem1", "--default-grid", "--output", "json"]);
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let pass_code = a.status.code() == Some(0) && b.status.code() == Some(0);
    let fail_code = run(&["verify", "theorem1", "a=0.4", "x=5", "q=0.3", "--tol", "1e-300"]).status.code();
    let error_code = run(&["verify", "theorem1", "x=-0.7", "lambda=0.7", "a=0.4", "q=0.3"]).status.code();
    let usage_code = run(&["verify", "no_such_identity"]).status.code();
    let pass = identical && pass_code && fail_code == Some(1) && error_code == Some(2) && usage_code == Some(2);
    Outcome {
        pass,
        detail: format!(
            "byte-identical {identical}, exit codes pass={:?} fail={fail_code:?} domain={error_code:?} unknown={usage_code:?}",
            a.status.code()
        ),
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 resummed formula equality", criterion_1),
        ("2 transform-inverse laws", criterion_2),
        ("3 Ramanujan sum", criterion_3),
        ("4 Watson formula", criterion_4),
        ("5 q-difference residuals", criterion_5),
        ("6 q-elliptic connection function", criterion_6),
        ("7 theta kernel", criterion_7),
        ("8 q -> 1 limits", criterion_8),
        ("9 CLI determinism and exit codes", criterion_9),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.pass {
            failures += 1;
        }
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
