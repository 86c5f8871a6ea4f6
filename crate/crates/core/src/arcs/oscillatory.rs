//! The integral `I(λ) = ∫₀¹ e^{-2πiλx²} dx`.
//!
//! Up to [`DIRECT_LAMBDA_LIMIT`] the integral is computed on `[0,1]` by
//! adaptive bisection with a 15-point Gauss–Legendre rule per panel. Past
//! that the number of oscillations makes the panel count impractical, so the
//! tail `∫₁^∞` is moved onto the steepest-descent path `x² = 1 + it/(2πλ)`,
//! where the integrand decays like `e^{-t}` and only `frac(λ)` enters the
//! phase.

use crate::numeric::{cis_neg, ComplexSum};
use crate::report::EstimateReport;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest `|λ|` handled by direct quadrature on `[0,1]`.
pub const DIRECT_LAMBDA_LIMIT: f64 = 1e4;

const LAMBDA_MAX: f64 = 1e12;
const RULE_POINTS: usize = 15;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1,1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let (pn, pn1) = if n == 1 { (x, 1.0) } else { (p1, p0) };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(RULE_POINTS))
}

/// Adaptive bisection over a fixed Gauss–Legendre rule.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveQuadrature {
    /// Absolute tolerance for the whole interval, shared out by panel width.
    pub tolerance: f64,
    pub initial_panels: usize,
    pub max_panels: usize,
}

impl Default for AdaptiveQuadrature {
    fn default() -> Self {
        Self {
            tolerance: 1e-11,
            initial_panels: 8,
            max_panels: 1 << 20,
        }
    }
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let (nodes, weights) = rule();
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let sum: ComplexSum = nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| f(mid + half * x) * *w)
        .collect();
    sum.value() * half
}

impl AdaptiveQuadrature {
    /// `∫_a^b f`, or the number of panels reached when the cap is hit.
    pub fn integrate<F: Fn(f64) -> Complex64>(
        &self,
        f: F,
        a: f64,
        b: f64,
    ) -> std::result::Result<Complex64, usize> {
        let width = b - a;
        let n0 = self.initial_panels.max(1);
        let mut stack: Vec<(f64, f64, Complex64)> = (0..n0)
            .rev()
            .map(|i| {
                let lo = a + width * i as f64 / n0 as f64;
                let hi = if i + 1 == n0 {
                    b
                } else {
                    a + width * (i + 1) as f64 / n0 as f64
                };
                (lo, hi, panel(&f, lo, hi))
            })
            .collect();
        let mut panels = n0;
        let mut total = ComplexSum::new();
        while let Some((lo, hi, whole)) = stack.pop() {
            let mid = (lo + hi) / 2.0;
            let (left, right) = (panel(&f, lo, mid), panel(&f, mid, hi));
            let local = self.tolerance * (hi - lo) / width;
            if (whole - left - right).norm() <= local || mid <= lo || mid >= hi {
                total.add(left + right);
                continue;
            }
            panels += 1;
            if panels > self.max_panels {
                return Err(panels);
            }
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
        Ok(total.value())
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || lambda.abs() > LAMBDA_MAX {
        return Err(Error::InvalidParameter(format!(
            "|lambda| must be at most 1e12, got {lambda}"
        )));
    }
    Ok(())
}

/// `I(λ)` by adaptive quadrature on `[0,1]`.
pub fn fresnel_integral_direct(lambda: f64) -> Result<Complex64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let quad = AdaptiveQuadrature {
        initial_panels: (2.0 * lambda.abs()).ceil() as usize + 8,
        ..AdaptiveQuadrature::default()
    };
    quad.integrate(|x| cis_neg(lambda * x * x), 0.0, 1.0)
        .map_err(|panels| Error::ToleranceNotReached { lambda, panels })
}

/// `I(λ)` from the complete integral minus the tail on the deformed path.
pub fn fresnel_integral_contour(lambda: f64) -> Result<Complex64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mu = lambda.abs();
    // J(μ) = ∫₀¹ e^{2πiμx²}dx = ½(2μ)^{-1/2}e^{iπ/4} - e^{2πiμ}(i/4πμ)∫₀^∞ e^{-t}(1 + it/2πμ)^{-1/2}dt
    let scale = 1.0 / (2.0 * PI * mu);
    let quad = AdaptiveQuadrature {
        tolerance: 1e-13,
        initial_panels: 64,
        ..AdaptiveQuadrature::default()
    };
    let k = quad
        .integrate(
            |t| Complex64::new(1.0, t * scale).sqrt().inv() * (-t).exp(),
            0.0,
            50.0,
        )
        .map_err(|panels| Error::ToleranceNotReached { lambda, panels })?;
    let complete = Complex64::from_polar(0.5 / (2.0 * mu).sqrt(), PI / 4.0);
    let phase = cis_neg(-(mu - mu.floor()));
    let tail = phase * Complex64::new(0.0, 1.0 / (4.0 * PI * mu)) * k;
    let j = complete - tail;
    Ok(if lambda > 0.0 { j.conj() } else { j })
}

/// `I(λ) = ∫₀¹ e^{-2πiλx²} dx` with absolute error below `1e-8`.
pub fn fresnel_integral(lambda: f64) -> Result<Complex64> {
    if lambda.abs() <= DIRECT_LAMBDA_LIMIT {
        fresnel_integral_direct(lambda)
    } else {
        fresnel_integral_contour(lambda)
    }
}

/// `|∫₀¹ e^{2πiλx²} dx|` against `min{1, 2λ^{-1/2}}`.
pub fn oscillatory_bound_check(lambda: f64) -> Result<EstimateReport> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must be non-negative, got {lambda}"
        )));
    }
    let measured = fresnel_integral(lambda)?.norm();
    let bound = if lambda == 0.0 {
        1.0
    } else {
        (2.0 / lambda.sqrt()).min(1.0)
    };
    Ok(EstimateReport::new(Some(lambda), measured, bound))
}
