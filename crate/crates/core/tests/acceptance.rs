//! Acceptance criteria: one `[PASS]`/`[FAIL]` line each. Every criterion
//! also has a wall-clock limit; exceeding it is a failure.

use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;
use rayon::prelude::*;
use sqdiff::arcs::{
    best_approximation_exhaustive, dirichlet_approx, fresnel_integral, RationalApprox,
};
use sqdiff::construction::lcm_bounds_report;
use sqdiff::numeric::{is_square, isqrt};
use sqdiff::report::VerificationReport;
use sqdiff::rng::seeded;
use sqdiff::sets::is_square_difference_free;

use sqdiff::solver::{
    brute_force_d, greedy_guarantee, greedy_square, solve_exact_d, trivial_bounds, Budget,
    CliqueCertificate, Status, KNOWN_CERTIFICATES,
};
use sqdiff::suites;
use std::time::{Duration, Instant};

const SEED: u64 = 20_240_901;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn report_outcome(report: &VerificationReport) -> Outcome {
    let first = report
        .rows
        .iter()
        .find(|r| !r.estimate.satisfied)
        .map(|r| format!("; first failure: {} {:?}", r.check, r.estimate))
        .unwrap_or_default();
    outcome(
        report.summary.failed == 0,
        format!(
            "{} rows, {} failed{first}",
            report.rows.len(),
            report.summary.failed
        ),
    )
}

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let ok = out.ok && in_time;
    println!(
        "[{}] {id:>2} {name}: {} ({:.2}s, limit {}s{})",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", over time" }
    );
    ok
}

fn exact_solver(exact: &mut Vec<(u64, u64)>) -> Outcome {
    let rows: Vec<_> = (1..=30u64)
        .into_par_iter()
        .map(|n| {
            let solved = solve_exact_d(n, Budget::unlimited()).unwrap();
            let brute = brute_force_d(n).unwrap();
            let witness_ok = solved.witness.as_ref().is_some_and(|w| {
                is_square_difference_free(w) && w.len() == solved.value && w.capacity() == n
            });
            (
                n,
                solved.value,
                brute.value,
                solved.status == Status::Exact && witness_ok,
            )
        })
        .collect();
    let bad: Vec<u64> = rows
        .iter()
        .filter(|(_, s, b, ok)| s != b || !ok)
        .map(|r| r.0)
        .collect();
    exact.extend(rows.iter().map(|&(n, s, _, _)| (n, s)));
    outcome(
        bad.is_empty(),
        format!(
            "D(1..30) = {:?}; mismatches {bad:?}",
            rows.iter().map(|r| r.1).collect::<Vec<_>>()
        ),
    )
}

fn sandwich(exact: &[(u64, u64)]) -> Outcome {
    let mut values = exact.to_vec();
    for n in 31..=80 {
        values.push((n, solve_exact_d(n, Budget::unlimited()).unwrap().value));
    }
    let certs: Vec<CliqueCertificate> = KNOWN_CERTIFICATES
        .iter()
        .map(|s| CliqueCertificate::new(s.to_vec()).unwrap())
        .collect();
    let mut bad = Vec::new();
    for &(n, d) in &values {
        let (lo, hi) = trivial_bounds(n);
        let dr = num_rational::Ratio::from_integer(d);
        let half = num_rational::Ratio::new(n + 1, 2);
        let third = num_rational::Ratio::new(n + 34, 3);
        if (d as f64) < lo || dr > hi || dr > half || dr > third {
            bad.push(n);
        }
        if certs.iter().any(|c| dr > c.bound(n)) {
            bad.push(n);
        }
    }
    // recompute the square roots of the shifts and of their differences
    let triple = &certs[2];
    let roots: Vec<u64> = triple.shifts().iter().map(|&s| isqrt(s)).collect();
    let shifts_square = triple.shifts().iter().all(|&s| is_square(s));
    let mut diffs: Vec<u64> = Vec::new();
    for i in 0..3 {
        for j in 0..i {
            let d = triple.shifts()[i] - triple.shifts()[j];
            if is_square(d) {
                diffs.push(isqrt(d));
            }
        }
    }
    diffs.sort_unstable();
    let ok =
        bad.is_empty() && shifts_square && roots == [153, 185, 697] && diffs == [104, 672, 680];
    outcome(
        ok,
        format!(
            "{} exact values in the sandwich, violations {bad:?}; shift roots {roots:?}, difference roots {diffs:?}",
            values.len()
        ),
    )
}

fn greedy() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [10u64, 100, 1_000, 10_000, 100_000] {
        let a = greedy_square(n).unwrap();
        let g = greedy_guarantee(n);
        ok &= a.len() as f64 >= g && is_square_difference_free(&a);
        parts.push(format!("N={n}: {} >= {g:.2}", a.len()));
    }
    outcome(ok, parts.join(", "))
}

/// Trapezoid rule on `10⁷` panels, independent of the library quadrature.
fn trapezoid_fresnel(lambda: f64) -> Complex64 {
    let panels = 10_000_000u64;
    let h = 1.0 / panels as f64;
    let f = |x: f64| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * lambda * x * x);
    let inner: Complex64 = (1..panels).into_par_iter().map(|k| f(k as f64 * h)).sum();
    (inner + (f(0.0) + f(1.0)) * 0.5) * h
}

fn oscillatory() -> Outcome {
    let report = suites::oscillatory_suite(0.1, 1e8, 200).unwrap();
    let grid = report_outcome(&report);
    let mut worst = 0.0f64;
    for lambda in [1.0, 10.0, 100.0] {
        let lib = fresnel_integral(lambda).unwrap();
        worst = worst.max((lib - trapezoid_fresnel(lambda)).norm());
    }
    outcome(
        grid.ok && worst <= 1e-8,
        format!(
            "{}; trapezoid oracle max deviation {worst:.2e}",
            grid.detail
        ),
    )
}

fn dirichlet() -> Outcome {
    let mut rng = seeded(SEED);
    let alphas: Vec<f64> = (0..10_000).map(|_| rng.gen::<f64>()).collect();
    let mut failures = 0usize;
    let mut mismatches = 0usize;
    for qmax in [10u64, 100, 1000] {
        let (f, m): (usize, usize) = alphas
            .par_iter()
            .map(|&alpha| {
                let r: RationalApprox = dirichlet_approx(alpha, qmax).unwrap();
                let bad = r.q == 0
                    || r.q > qmax
                    || r.a.unsigned_abs().gcd(&r.q) != 1
                    || (alpha - r.a as f64 / r.q as f64).abs() > 1.0 / (r.q * qmax) as f64;
                let mismatch = qmax <= 100 && {
                    let e = best_approximation_exhaustive(alpha, qmax);
                    (e.a, e.q) != (r.a, r.q)
                };
                (bad as usize, mismatch as usize)
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        failures += f;
        mismatches += m;
    }
    outcome(
        failures == 0 && mismatches == 0,
        format!("30000 approximations: {failures} invariant failures, {mismatches} exhaustive mismatches"),
    )
}

fn major() -> Outcome {
    let report = suites::major_suite(1_000_000, 1000, 50.0, SEED).unwrap();
    let c = report
        .summary
        .max_constant_observed
        .unwrap_or(f64::INFINITY);
    let base = report_outcome(&report);
    outcome(
        base.ok && c <= 50.0,
        format!(
            "{}; max decomposition error / N^(1/10) = {c:.4}",
            base.detail
        ),
    )
}

fn minor_arcs() -> Outcome {
    let ns = [10_000u64, 100_000, 1_000_000];
    let mut ok = true;
    let mut parts = Vec::new();
    for eps in [0.2, 0.3, 0.5] {
        let fractions: Vec<f64> = ns
            .iter()
            .map(|&n| {
                let s = suites::minor_arc_stats(n, eps, 4000, SEED).unwrap();
                if eps >= 0.3 && n == 1_000_000 && s.violations > 0 {
                    ok = false;
                }
                s.fraction
            })
            .collect();
        ok &= fractions.windows(2).all(|w| w[1] <= w[0]);
        parts.push(format!("eps={eps}: violation fractions {fractions:?}"));
    }
    outcome(ok, parts.join("; "))
}

fn varnavides() -> Outcome {
    let random = suites::varnavides_suite(1000, 4, 2000, 10, SEED).unwrap();
    let exhaustive = suites::varnavides_exhaustive(1, 400, &[2, 3, 4], SEED).unwrap();
    let (a, b) = (report_outcome(&random), report_outcome(&exhaustive));
    outcome(
        a.ok && b.ok,
        format!(
            "random: {} (literal middle-term failures {}); exhaustive: {}",
            a.detail, random.details["literalMiddleFailures"], b.detail
        ),
    )
}

fn construction() -> Outcome {
    let a = greedy_square(1_000_000).unwrap();
    let report = suites::construction_suite(&a, "greedy", None, 1 << 16, SEED).unwrap();
    let d = &report.details;
    let base = report_outcome(&report);
    outcome(
        base.ok,
        format!(
            "{}; C1={} |A|={} |A'|={} |B|={} property (i)={} (condition {}), translation residual {:.2e}, star ratio {:.4}",
            base.detail,
            d["c1"],
            d["size_a"],
            d["size_aprime"],
            d["size_b"],
            d["property_i"],
            d["property_i_condition"],
            d["translation_residual_max"].as_f64().unwrap_or(f64::NAN),
            d["star"]["measured"].as_f64().unwrap_or(f64::NAN) / d["star"]["bound"].as_f64().unwrap_or(f64::NAN),
        ),
    )
}

fn lcm() -> Outcome {
    let report = suites::lcm_suite(200).unwrap();
    let two_ways = report
        .rows
        .iter()
        .filter(|r| r.check.starts_with("lcm two ways"));
    let agree = two_ways.clone().all(|r| r.estimate.satisfied) && two_ways.count() == 100;
    let rows = lcm_bounds_report(200).unwrap();
    let m2 = rows.iter().find(|r| r.m == 2).unwrap();
    let near: Vec<String> = rows
        .iter()
        .filter(|r| (110..=116).contains(&r.m))
        .map(|r| format!("m={} ln={:.3} upper={}", r.m, r.ln_lcm, r.holds_upper))
        .collect();
    outcome(
        agree && !m2.holds_lower && rows.len() == 200,
        format!(
            "two ways agree for m<=100: {agree}; lower exceptions {}; near 113: {}",
            report.details["lowerExceptions"],
            near.join(", ")
        ),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let mut exact = Vec::new();
    let results = [
        run(1, "exact solver matches brute force", secs(60), || {
            exact_solver(&mut exact)
        }),
        run(
            2,
            "trivial-bound sandwich and certificates",
            secs(1),
            || sandwich(&exact),
        ),
        run(3, "greedy bound", secs(30), greedy),
        run(4, "counting identity", secs(120), || {
            report_outcome(&suites::identity_suite(1000, 4096, SEED).unwrap())
        }),
        run(5, "Plancherel", secs(30), || {
            report_outcome(&suites::plancherel_suite(100, 2048, SEED).unwrap())
        }),
        run(6, "Gauss sums", secs(120), || {
            report_outcome(&suites::gauss_suite(500).unwrap())
        }),
        run(7, "oscillatory integral", secs(60), oscillatory),
        run(8, "Dirichlet approximation", secs(30), dirichlet),
        run(9, "Weyl inequality", secs(120), || {
            report_outcome(&suites::weyl_suite(&[10_000, 1_000_000], 10_000).unwrap())
        }),
        run(10, "major arcs", secs(180), major),
        run(11, "minor arcs", secs(180), minor_arcs),
        run(12, "counting lemma", secs(300), varnavides),
        run(13, "construction pipeline", secs(300), construction),
        run(14, "lcm", secs(10), lcm),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
