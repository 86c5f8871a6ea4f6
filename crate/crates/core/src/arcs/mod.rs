//! Rational approximation, major/minor arcs, and the exponential-sum
//! estimates attached to them.
//!
//! Two arc systems are used. The ε-arcs put `α` on a major arc when it lies
//! within `1/(ε²N)` of some `a/q` with `q <= ε⁻²`. The classical arcs use
//! `q <= N^{1/20}` and radius `N^{-19/20}`. Both are decided by locating the
//! nearest fraction of bounded denominator, which is always one of the two
//! Farey neighbours of `α` and falls out of the continued-fraction
//! convergents.

mod gauss;
mod oscillatory;

pub use gauss::{gauss_magnitude_expected, gauss_sum};
pub use oscillatory::{
    fresnel_integral, fresnel_integral_contour, fresnel_integral_direct, gauss_legendre,
    oscillatory_bound_check, AdaptiveQuadrature, DIRECT_LAMBDA_LIMIT,
};

use crate::fourier::weyl_sum;
use crate::numeric::{gcd, iroot};
use crate::report::EstimateReport;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Reduced fraction `a/q` together with `|α - a/q|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RationalApprox {
    pub a: i64,
    pub q: u64,
    pub err: f64,
}

impl RationalApprox {
    /// Builds the approximation of `alpha` by `a/q`, reducing the fraction.
    pub fn of(alpha: f64, a: i64, q: u64) -> Self {
        assert!(q >= 1);
        let g = gcd(a.unsigned_abs(), q).max(1);
        let (a, q) = (a / g as i64, q / g);
        Self {
            a,
            q,
            err: residual(alpha, a, q).abs() / q as f64,
        }
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.q as f64
    }

    /// `α - a/q`, signed.
    pub fn beta(&self, alpha: f64) -> f64 {
        residual(alpha, self.a, self.q) / self.q as f64
    }
}

/// `qα - p`, from the exactly rounded fused product.
fn residual(alpha: f64, p: i64, q: u64) -> f64 {
    (q as f64).mul_add(alpha, -(p as f64))
}

/// A continued-fraction convergent `p/q` with residual `e = qα - p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergent {
    pub p: i64,
    pub q: u64,
    pub e: f64,
}

/// Convergents of `alpha` with denominator at most `qmax`, in order.
///
/// Partial quotients are read off the ratio of consecutive residuals, and each
/// residual is recomputed from `alpha` directly so rounding never compounds.
pub fn convergents(alpha: f64, qmax: u64) -> Vec<Convergent> {
    assert!(alpha.is_finite(), "alpha must be finite");
    assert!(qmax >= 1);
    let a0 = alpha.floor();
    let mut out = vec![Convergent {
        p: a0 as i64,
        q: 1,
        e: alpha - a0,
    }];
    let mut prev = Convergent {
        p: 1,
        q: 0,
        e: -1.0,
    };
    loop {
        let cur = *out.last().expect("non-empty");
        if cur.e == 0.0 {
            break;
        }
        let amax = (qmax - prev.q) / cur.q;
        if amax == 0 {
            break;
        }
        let ratio = prev.e.abs() / cur.e.abs();
        let mut a = if ratio.is_finite() {
            ratio.floor().clamp(1.0, (amax + 1) as f64) as u64
        } else {
            amax + 1
        };
        let step = |a: u64| -> Convergent {
            let p = a as i64 * cur.p + prev.p;
            let q = a * cur.q + prev.q;
            Convergent {
                p,
                q,
                e: residual(alpha, p, q),
            }
        };
        for _ in 0..4 {
            let next = step(a);
            let same_side = next.e != 0.0 && next.e.signum() == cur.e.signum();
            if same_side && a > 1 {
                a -= 1;
            } else if !same_side && next.e != 0.0 && next.e.abs() >= cur.e.abs() {
                a += 1;
            } else {
                break;
            }
        }
        if a > amax {
            break;
        }
        let next = step(a);
        prev = cur;
        out.push(next);
    }
    out
}

/// Dirichlet approximation: a reduced `a/q` with `q <= Q` and
/// `|α - a/q| <= 1/(qQ)`, namely the last convergent with `q <= Q`.
pub fn dirichlet_approx(alpha: f64, qmax: u64) -> Result<RationalApprox> {
    if qmax == 0 {
        return Err(Error::InvalidParameter("Q must be at least 1".into()));
    }
    let c = *convergents(alpha, qmax).last().expect("non-empty");
    let approx = RationalApprox {
        a: c.p,
        q: c.q,
        err: c.e.abs() / c.q as f64,
    };
    assert!(approx.q <= qmax);
    assert_eq!(gcd(approx.a.unsigned_abs(), approx.q), 1);
    assert!(
        approx.err <= 1.0 / (approx.q as f64 * qmax as f64),
        "Dirichlet bound failed for alpha={alpha}, Q={qmax}: {approx:?}"
    );
    Ok(approx)
}

/// The `q <= Q` minimising `|qα - p|` (smallest `q` on ties), by scanning every
/// denominator.
pub fn best_approximation_exhaustive(alpha: f64, qmax: u64) -> RationalApprox {
    let mut best: Option<(f64, i64, u64)> = None;
    for q in 1..=qmax {
        let p = (q as f64 * alpha).round() as i64;
        let d = residual(alpha, p, q).abs();
        if best.is_none_or(|(bd, _, _)| d < bd) {
            best = Some((d, p, q));
        }
    }
    let (d, a, q) = best.expect("qmax >= 1");
    RationalApprox {
        a,
        q,
        err: d / q as f64,
    }
}

/// The fraction with denominator `<= m` closest to `alpha` (smaller
/// denominator on ties): one of the two Farey neighbours of order `m`.
pub fn nearest_fraction(alpha: f64, m: u64) -> RationalApprox {
    let cs = convergents(alpha, m);
    let last = *cs.last().expect("non-empty");
    let from = |c: Convergent| RationalApprox {
        a: c.p,
        q: c.q,
        err: c.e.abs() / c.q as f64,
    };
    if last.e == 0.0 {
        return from(last);
    }
    let prev = if cs.len() >= 2 {
        cs[cs.len() - 2]
    } else {
        Convergent {
            p: 1,
            q: 0,
            e: -1.0,
        }
    };
    let t = (m - prev.q) / last.q;
    let q = prev.q + t * last.q;
    if q == 0 {
        return from(last);
    }
    let p = prev.p + t as i64 * last.p;
    let other = RationalApprox {
        a: p,
        q,
        err: residual(alpha, p, q).abs() / q as f64,
    };
    let best = from(last);
    if other.err < best.err || (other.err == best.err && other.q < best.q) {
        other
    } else {
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Major,
    Minor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcRegime {
    /// `q <= ε⁻²`, radius `1/(ε²N)`.
    EpsilonArcs,
    /// `q <= N^{1/20}`, radius `N^{-19/20}`.
    ClassicalArcs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcLabel {
    pub kind: ArcKind,
    pub approx: Option<RationalApprox>,
    pub regime: ArcRegime,
}

impl ArcLabel {
    pub fn is_major(&self) -> bool {
        self.kind == ArcKind::Major
    }
}

/// `⌊ε⁻²⌋`, tolerant of the representation error in `ε`.
pub fn epsilon_denominator_cap(epsilon: f64) -> u64 {
    (1.0 / (epsilon * epsilon) * (1.0 + 1e-12)).floor() as u64
}

fn check_epsilon(epsilon: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    let m = epsilon_denominator_cap(epsilon);
    if m > 1_000_000 {
        return Err(Error::InvalidParameter(format!(
            "epsilon^-2 = {m} exceeds 10^6"
        )));
    }
    Ok(m)
}

/// Parameters `(qmax, radius)` of an arc system.
pub fn arc_parameters(regime: ArcRegime, n: u64, epsilon: f64) -> Result<(u64, f64)> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    match regime {
        ArcRegime::EpsilonArcs => {
            let m = check_epsilon(epsilon)?;
            Ok((m, 1.0 / (epsilon * epsilon * n as f64)))
        }
        ArcRegime::ClassicalArcs => Ok((iroot(n, 20).max(1), (n as f64).powf(-19.0 / 20.0))),
    }
}

fn label(regime: ArcRegime, nearest: RationalApprox, radius: f64) -> ArcLabel {
    if nearest.err <= radius {
        ArcLabel {
            kind: ArcKind::Major,
            approx: Some(nearest),
            regime,
        }
    } else {
        ArcLabel {
            kind: ArcKind::Minor,
            approx: None,
            regime,
        }
    }
}

/// ε-arc label of `alpha`.
pub fn classify_arc(alpha: f64, n: u64, epsilon: f64) -> Result<ArcLabel> {
    let (m, radius) = arc_parameters(ArcRegime::EpsilonArcs, n, epsilon)?;
    Ok(label(
        ArcRegime::EpsilonArcs,
        nearest_fraction(alpha, m),
        radius,
    ))
}

/// Classical-arc label of `alpha`.
pub fn classify_arc_classical(alpha: f64, n: u64) -> Result<ArcLabel> {
    let (m, radius) = arc_parameters(ArcRegime::ClassicalArcs, n, 0.0)?;
    Ok(label(
        ArcRegime::ClassicalArcs,
        nearest_fraction(alpha, m),
        radius,
    ))
}

/// Same decision as [`classify_arc`]/[`classify_arc_classical`], scanning
/// every denominator up to the cap.
pub fn classify_arc_exhaustive(
    alpha: f64,
    n: u64,
    epsilon: f64,
    regime: ArcRegime,
) -> Result<ArcLabel> {
    let (m, radius) = arc_parameters(regime, n, epsilon)?;
    let mut best: Option<RationalApprox> = None;
    for q in 1..=m {
        let a = (q as f64 * alpha).round() as i64;
        let cand = RationalApprox::of(alpha, a, q);
        if best.is_none_or(|b| cand.err < b.err) {
            best = Some(cand);
        }
    }
    Ok(label(regime, best.expect("m >= 1"), radius))
}

/// `40 √N ln N (1/q + 1/√N + q/N)^{1/2}`.
pub fn weyl_inequality_bound(n: f64, q: u64) -> f64 {
    let q = q as f64;
    40.0 * n.sqrt() * n.ln() * (1.0 / q + 1.0 / n.sqrt() + q / n).sqrt()
}

/// `|Ŝ(α)|` against the Weyl inequality for the Dirichlet approximation with
/// `Q = ⌊√N⌋`.
pub fn weyl_inequality_check(n: u64, alpha: f64) -> Result<(RationalApprox, EstimateReport)> {
    if n < 2 {
        return Err(Error::InvalidParameter("N must be at least 2".into()));
    }
    let approx = dirichlet_approx(alpha, crate::numeric::isqrt(n))?;
    let report = EstimateReport::new(
        Some(alpha),
        weyl_sum(n, alpha).norm(),
        weyl_inequality_bound(n as f64, approx.q),
    );
    Ok((approx, report))
}

/// `|Ŝ(α)|` against `5ε√N` for an `alpha` off every ε-arc. A failure is
/// logged, not raised; the estimate only holds for large `N`.
pub fn weyl_estimate_check(n: u64, epsilon: f64, alpha: f64) -> Result<EstimateReport> {
    let arc = classify_arc(alpha, n, epsilon)?;
    if let Some(approx) = arc.approx {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} lies on the epsilon-arc around {}/{}",
            approx.a, approx.q
        )));
    }
    let report = EstimateReport::new(
        Some(alpha),
        weyl_sum(n, alpha).norm(),
        5.0 * epsilon * (n as f64).sqrt(),
    );
    if !report.satisfied {
        log::warn!(
            "minor-arc estimate failed: N={n} epsilon={epsilon} alpha={alpha} ratio={}",
            report.ratio()
        );
    }
    Ok(report)
}

/// Main term `√N q⁻¹ S(a,q) I_N(α - a/q)` and the measured error
/// `|Ŝ(α) - main|`, for any `a/q`.
pub fn major_arc_decomposition(n: u64, alpha: f64, a: i64, q: u64) -> Result<(Complex64, f64)> {
    let approx = RationalApprox::of(alpha, a, q);
    let beta = approx.beta(alpha);
    let arithmetic = gauss_sum(approx.a, approx.q)?;
    let continuous = fresnel_integral(n as f64 * beta)?;
    let main = arithmetic * continuous * ((n as f64).sqrt() / approx.q as f64);
    Ok((main, (weyl_sum(n, alpha) - main).norm()))
}

fn check_classical(n: u64, alpha: f64, approx: &RationalApprox) -> Result<()> {
    let (qmax, radius) = arc_parameters(ArcRegime::ClassicalArcs, n, 0.0)?;
    if approx.q > qmax {
        return Err(Error::Precondition(format!(
            "q = {} exceeds N^(1/20) cap {qmax}",
            approx.q
        )));
    }
    let err = approx.beta(alpha).abs();
    if err > radius {
        return Err(Error::Precondition(format!(
            "|alpha - {}/{}| = {err:e} exceeds N^(-19/20) = {radius:e}",
            approx.a, approx.q
        )));
    }
    Ok(())
}

/// [`major_arc_decomposition`] restricted to classical major arcs.
pub fn major_arc_approximation(
    n: u64,
    alpha: f64,
    approx: &RationalApprox,
) -> Result<(Complex64, f64)> {
    check_classical(n, alpha, approx)?;
    major_arc_decomposition(n, alpha, approx.a, approx.q)
}

/// `|Ŝ(α)|` against `5√N q^{-1/2} (1 + N|α - a/q|)^{-1/2}` on a classical
/// major arc.
pub fn major_arc_bound_check(
    n: u64,
    alpha: f64,
    approx: &RationalApprox,
) -> Result<EstimateReport> {
    check_classical(n, alpha, approx)?;
    let nf = n as f64;
    let beta = approx.beta(alpha).abs();
    let bound = 5.0 * nf.sqrt() / (approx.q as f64).sqrt() / (1.0 + nf * beta).sqrt();
    Ok(EstimateReport::new(
        Some(alpha),
        weyl_sum(n, alpha).norm(),
        bound,
    ))
}
