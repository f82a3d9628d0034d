//! Vacuum correlations of a massless scalar field seen along a uniformly
//! accelerated worldline.
//!
//! Natural units (ħ = c = k_B = 1). The inverse Unruh temperature
//! `beta_u = 2π / a` is the only temperature scale; every constructor derives
//! it from the acceleration (or vice versa) so the two never drift apart.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::quadrature::{self, Tolerance};

/// Hyperbolic trajectory `x⁰ = sinh(at)/a`, `x¹ = cosh(at)/a`, together with
/// the `iε` regulator used for position-space evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryParams {
    acceleration: f64,
    beta_u: f64,
    epsilon: f64,
}

impl TrajectoryParams {
    pub fn new(acceleration: f64, epsilon: f64) -> Result<Self> {
        if !(acceleration > 0.0 && acceleration.is_finite()) {
            return domain(format!("acceleration must be positive, got {acceleration}"));
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return domain(format!("regulator epsilon must be positive, got {epsilon}"));
        }
        Ok(Self {
            acceleration,
            beta_u: 2.0 * PI / acceleration,
            epsilon,
        })
    }

    pub fn from_beta_u(beta_u: f64, epsilon: f64) -> Result<Self> {
        if !(beta_u > 0.0 && beta_u.is_finite()) {
            return domain(format!("beta_u must be positive, got {beta_u}"));
        }
        Self::new(2.0 * PI / beta_u, epsilon)
    }

    pub fn acceleration(&self) -> f64 {
        self.acceleration
    }

    pub fn beta_u(&self) -> f64 {
        self.beta_u
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.acceleration, epsilon)
    }
}

/// Settings for the numerical transforms.
///
/// `cutoff` is measured in decay lengths: the time integral runs over
/// `|t| ≤ cutoff / a` and the frequency integral over `z ≤ cutoff / β_U`
/// (plus twice the pole location). The default of 36 leaves a tail below
/// `e^{-36} ≈ 2e-16`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Starting panels per break interval.
    pub nodes: usize,
    pub cutoff: f64,
    /// Regulator values, strictly decreasing, extrapolated to zero.
    pub epsilon_ladder: Vec<f64>,
    /// Half-width of the symmetric principal-value exclusion window.
    pub pv_window: f64,
    /// Relative tolerance for each adaptive integral.
    pub rel_tol: f64,
    /// Largest accepted relative spread between the two finest extrapolants.
    pub extrapolation_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes: 16,
            cutoff: 36.0,
            epsilon_ladder: vec![0.04, 0.02, 0.01, 0.005],
            pv_window: 0.25,
            rel_tol: 1e-13,
            extrapolation_tol: 1e-4,
            max_panels: 50_000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 16 {
            return domain(format!(
                "node count must be at least 16, got {}",
                self.nodes
            ));
        }
        if !(self.cutoff > 0.0) {
            return domain("cutoff must be positive");
        }
        if self.epsilon_ladder.is_empty() {
            return domain("epsilon ladder is empty");
        }
        if self
            .epsilon_ladder
            .iter()
            .any(|&e| !(e > 0.0 && e.is_finite()))
        {
            return domain("epsilon ladder entries must be positive");
        }
        if self.epsilon_ladder.windows(2).any(|w| !(w[1] < w[0])) {
            return domain("epsilon ladder must be strictly decreasing");
        }
        if !(self.pv_window > 0.0) {
            return domain("principal-value window must be positive");
        }
        if !(self.rel_tol > 0.0 && self.extrapolation_tol > 0.0) {
            return domain("tolerances must be positive");
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: 1e-15,
            rel: self.rel_tol,
            max_panels: self.max_panels,
        }
    }
}

/// Wightman function `⟨0|Φ(x(t))Φ(x(0))|0⟩` along the trajectory.
///
/// On the hyperbola `(Δx⁰)² − (Δx¹)² = (4/a²) sinh²(at/2)`, so the
/// four-dimensional `−1/(4π²((x⁰−iε)² − x⃗²))` collapses to
/// `−a²/(16π²) · 1/sinh²(a(t − iε)/2)`.
pub fn wightman_along_trajectory(params: &TrajectoryParams, t: f64) -> Complex64 {
    let a = params.acceleration;
    if t < 0.0 {
        // W(-t) = conj W(t) for real ε.
        return wightman_along_trajectory(params, -t).conj();
    }
    let z = Complex64::new(0.5 * a * t, -0.5 * a * params.epsilon);
    if z.re > 350.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = z.sinh();
    -(a * a / (16.0 * PI * PI)) / (s * s)
}

/// Closed-form Fourier transform `G(λ) = (1/2π) λ / (1 − e^{−β_U λ})`.
pub fn fourier_g(lambda: f64, beta_u: f64) -> Result<f64> {
    if !(beta_u > 0.0 && beta_u.is_finite()) {
        return domain(format!("beta_u must be positive, got {beta_u}"));
    }
    if !lambda.is_finite() {
        return domain("lambda must be finite");
    }
    Ok(fourier_g_unchecked(lambda, beta_u))
}

#[inline]
pub(crate) fn fourier_g_unchecked(lambda: f64, beta_u: f64) -> f64 {
    if lambda == 0.0 {
        return 1.0 / (2.0 * PI * beta_u);
    }
    lambda / (-(-beta_u * lambda).exp_m1()) / (2.0 * PI)
}

/// Numerical Fourier transform of [`wightman_along_trajectory`] with the
/// regulator extrapolated to zero.
///
/// Each ladder rung integrates `2 Re[e^{iλt} W_ε(t)]` over `[0, cutoff/a]`
/// with geometric break points clustered at the `1/(t − iε)²` peak; Neville
/// extrapolation in `ε` then removes the regulator.
pub fn fourier_g_numeric(
    lambda: f64,
    params: &TrajectoryParams,
    quad: &QuadratureConfig,
) -> Result<f64> {
    quad.validate()?;
    if !lambda.is_finite() {
        return domain("lambda must be finite");
    }
    let t_max = quad.cutoff / params.acceleration;
    let mut samples = Vec::with_capacity(quad.epsilon_ladder.len());
    for &eps in &quad.epsilon_ladder {
        if eps * params.acceleration >= PI {
            return domain(format!(
                "regulator {eps} too large for acceleration {}",
                params.acceleration
            ));
        }
        let p = params.with_epsilon(eps)?;
        let mut breaks = vec![0.0];
        let mut edge = eps;
        while edge < t_max {
            breaks.push(edge);
            edge *= 2.0;
        }
        breaks.push(t_max);
        let integrand = |t: f64| {
            let phase = Complex64::new(0.0, lambda * t).exp();
            2.0 * (phase * wightman_along_trajectory(&p, t)).re
        };
        let est = quadrature::integrate_with_breaks(integrand, &breaks, 1, quad.tolerance())?;
        samples.push((eps, est.value));
    }
    let (value, spread) = neville_at_zero(&samples);
    if spread > quad.extrapolation_tol * value.abs().max(1e-300) {
        return Err(Error::Convergence(format!(
            "epsilon extrapolation spread {spread:.3e} exceeds tolerance at lambda = {lambda}"
        )));
    }
    Ok(value)
}

/// Polynomial extrapolation of `(x_i, y_i)` to `x = 0`. Returns the estimate
/// and the difference between the two highest-order extrapolants.
fn neville_at_zero(samples: &[(f64, f64)]) -> (f64, f64) {
    let n = samples.len();
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut p: Vec<f64> = samples.iter().map(|s| s.1).collect();
    if n == 1 {
        return (p[0], f64::INFINITY);
    }
    let mut previous = p[n - 1];
    for level in 1..n {
        previous = p[n - level];
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    (p[0], (p[0] - previous).abs())
}

/// Finite, acceleration-dependent part of the Hilbert transform, returned
/// as the real function `k(λ) = i·K_acc(λ)`:
///
/// `k(λ) = (1/2π²) P∫₀^∞ dz  z/(1 − e^{β_U z}) [1/(z+λ) − 1/(z−λ)]`.
///
/// The divergent inertial piece is not computed.
pub fn hilbert_k_acc(lambda: f64, beta_u: f64, quad: &QuadratureConfig) -> Result<f64> {
    quad.validate()?;
    if !(beta_u > 0.0 && beta_u.is_finite()) {
        return domain(format!("beta_u must be positive, got {beta_u}"));
    }
    if !lambda.is_finite() {
        return domain("lambda must be finite");
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let weight = |z: f64| planck_weight(z, beta_u);
    let upper = quad.cutoff / beta_u + 2.0 * lambda.abs();
    let tol = quad.tolerance();
    let plus = cauchy_or_regular(&weight, -lambda, upper, quad, tol, beta_u)?;
    let minus = cauchy_or_regular(&weight, lambda, upper, quad, tol, beta_u)?;
    Ok((plus - minus) / (2.0 * PI * PI))
}

/// `z / (1 − e^{β z})`, finite at `z = 0`.
fn planck_weight(z: f64, beta: f64) -> f64 {
    if z == 0.0 {
        -1.0 / beta
    } else {
        -z / (beta * z).exp_m1()
    }
}

fn planck_weight_derivative(z: f64, beta: f64) -> f64 {
    if z.abs() < 1e-8 / beta {
        return 0.5;
    }
    let em1 = (beta * z).exp_m1();
    let e = em1 + 1.0;
    -1.0 / em1 + beta * z * e / (em1 * em1)
}

/// `∫₀^upper f(z)/(z − pole) dz`, as a principal value when the pole lies on
/// the positive axis.
fn cauchy_or_regular<F: Fn(f64) -> f64>(
    f: &F,
    pole: f64,
    upper: f64,
    quad: &QuadratureConfig,
    tol: Tolerance,
    beta: f64,
) -> Result<f64> {
    if pole <= 0.0 {
        return Ok(
            quadrature::integrate(|z| f(z) / (z - pole), 0.0, upper, quad.nodes, tol)?.value,
        );
    }
    let window = quad.pv_window.min(0.5 * pole).min(0.5 * (upper - pole));
    let (lo, hi) = (pole - window, pole + window);
    let fp = f(pole);
    let dfp = planck_weight_derivative(pole, beta);
    let outer =
        quadrature::integrate_with_breaks(|z| f(z) / (z - pole), &[0.0, lo], quad.nodes, tol)?
            .value
            + quadrature::integrate_with_breaks(
                |z| f(z) / (z - pole),
                &[hi, upper],
                quad.nodes,
                tol,
            )?
            .value;
    // Subtracted integrand is regular across the window; the subtracted
    // constant contributes f(p)·ln((hi − p)/(p − lo)) = 0 for a symmetric window.
    let inner = quadrature::integrate(
        |z| {
            let d = z - pole;
            if d.abs() < 1e-7 * window {
                dfp
            } else {
                (f(z) - fp) / d
            }
        },
        lo,
        hi,
        quad.nodes,
        tol,
    )?
    .value;
    let log_term = fp * ((hi - pole) / (pole - lo)).ln();
    Ok(outer + inner + log_term)
}
