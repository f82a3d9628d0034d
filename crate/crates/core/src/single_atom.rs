//! Bloch-vector dynamics of a single accelerated atom.
//!
//! The coherence vector obeys `ṙ = −2H r + η`, with
//! `H = (2A+C)·1 − C nnᵀ + (Ω/2)[ε·n]` and `η = −4B n`. The propagator
//! `M(t) = e^{−2Ht}` is available in closed form whenever `Ω² + 4C² > 0`.

use nalgebra::{Matrix3, Vector3};

use crate::correlations::{hilbert_k_acc, QuadratureConfig};
use crate::dissipator::{
    epsilon_dot, kossakowski_large_acceleration, scalar_coefficients, KossakowskiCoefficients,
    KossakowskiMatrix, UnitVector, POSITIVITY_TOL,
};
use crate::error::{domain, Error, Result};
use crate::ode::{expm, LinearSystem};
use crate::qstate::STATE_TOL;

pub use crate::qstate::BlochVector;

/// Threshold on `Ω² + 4C²` below which the closed-form propagator is singular.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// Parameters of the single-atom generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleAtomParams {
    omega: f64,
    omega_eff: f64,
    n: UnitVector,
    coefficients: KossakowskiCoefficients,
    beta_u: Option<f64>,
}

impl SingleAtomParams {
    /// Exact scalar-field coefficients at inverse Unruh temperature `beta_u`.
    pub fn scalar(omega: f64, beta_u: f64, n: UnitVector) -> Result<Self> {
        let coefficients = scalar_coefficients(omega, beta_u)?;
        let mut p = Self::from_coefficients(omega, n, coefficients)?;
        p.beta_u = Some(beta_u);
        Ok(p)
    }

    /// Large-acceleration coefficients `A = 1/(2πβ_U)`, `B = ω/4π`, `C = 0`.
    pub fn large_acceleration(omega: f64, beta_u: f64, n: UnitVector) -> Result<Self> {
        let k = kossakowski_large_acceleration(omega, beta_u, &n)?;
        let mut p = Self::from_kossakowski(omega, &k)?;
        p.beta_u = Some(beta_u);
        Ok(p)
    }

    /// From a structured Kossakowski matrix (its axis becomes `n`).
    pub fn from_kossakowski(omega: f64, k: &KossakowskiMatrix) -> Result<Self> {
        let (coefficients, n) = k
            .coefficients()
            .zip(k.axis())
            .ok_or_else(|| Error::Domain("Kossakowski matrix has no A, B, C structure".into()))?;
        Self::from_coefficients(omega, n, coefficients)
    }

    pub fn from_coefficients(
        omega: f64,
        n: UnitVector,
        coefficients: KossakowskiCoefficients,
    ) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return domain(format!("omega must be positive, got {omega}"));
        }
        let KossakowskiCoefficients { a, b, c } = coefficients;
        if ![a, b, c].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("Kossakowski coefficients".into()));
        }
        let tol = POSITIVITY_TOL * a.abs().max(1.0);
        if a + tol < b.abs() || a + c < -tol {
            return Err(Error::Positivity(format!(
                "coefficients violate A >= |B|, A + C >= 0 (A = {a}, B = {b}, C = {c})"
            )));
        }
        Ok(Self {
            omega,
            omega_eff: omega,
            n,
            coefficients,
            beta_u: None,
        })
    }

    /// Overrides the renormalized frequency `Ω` (defaults to `ω`).
    pub fn with_omega_eff(mut self, omega_eff: f64) -> Result<Self> {
        if !omega_eff.is_finite() {
            return domain("renormalized frequency must be finite");
        }
        self.omega_eff = omega_eff;
        Ok(self)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega_eff(&self) -> f64 {
        self.omega_eff
    }

    pub fn n(&self) -> &UnitVector {
        &self.n
    }

    pub fn coefficients(&self) -> KossakowskiCoefficients {
        self.coefficients
    }

    pub fn a(&self) -> f64 {
        self.coefficients.a
    }

    pub fn b(&self) -> f64 {
        self.coefficients.b
    }

    pub fn c(&self) -> f64 {
        self.coefficients.c
    }

    /// Inverse Unruh temperature, when the parameters were built from one.
    pub fn beta_u(&self) -> Option<f64> {
        self.beta_u
    }
}

/// Shift `i[K(−ω) − K(ω)]` of the level spacing, from the subtracted Hilbert
/// transform. Not applied by default; pass `ω + shift` to
/// [`SingleAtomParams::with_omega_eff`] to use it.
pub fn frequency_shift(omega: f64, beta_u: f64, quad: &QuadratureConfig) -> Result<f64> {
    Ok(hilbert_k_acc(-omega, beta_u, quad)? - hilbert_k_acc(omega, beta_u, quad)?)
}

/// `ṙ = −2H r + η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochGenerator {
    pub h: Matrix3<f64>,
    pub eta: Vector3<f64>,
}

impl BlochGenerator {
    pub fn as_linear_system(&self) -> LinearSystem<3> {
        LinearSystem {
            generator: -2.0 * self.h,
            drive: self.eta,
        }
    }

    /// `−2H r + η`.
    pub fn rate(&self, r: &Vector3<f64>) -> Vector3<f64> {
        -2.0 * self.h * r + self.eta
    }
}

pub fn build_bloch_generator(p: &SingleAtomParams) -> BlochGenerator {
    let KossakowskiCoefficients { a, b, c } = p.coefficients;
    let n = p.n.as_vector();
    let h = Matrix3::identity() * (2.0 * a + c) - n * n.transpose() * c
        + epsilon_dot(n) * (0.5 * p.omega_eff);
    BlochGenerator {
        h,
        eta: n * (-4.0 * b),
    }
}

/// `H − (2A+C)·1`, built directly to avoid cancellation.
fn shifted_generator(p: &SingleAtomParams) -> Matrix3<f64> {
    let n = p.n.as_vector();
    -(n * n.transpose()) * p.c() + epsilon_dot(n) * (0.5 * p.omega_eff)
}

/// `M(t) = e^{−2Ht}` from the cubic characteristic equation of `H`:
/// `M = 4/(Ω²+4C²) {e^{−4At} Λ₁ + 2e^{−2(2A+C)t} [Λ₂ cos Ωt + Λ₃ sin Ωt / Ω]}`,
/// with the `Λ` matrices written in terms of `K = H − (2A+C)·1`.
pub fn propagator_closed_form(p: &SingleAtomParams, t: f64) -> Result<Matrix3<f64>> {
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!("time must be finite and non-negative, got {t}"));
    }
    let (a, c, w) = (p.a(), p.c(), p.omega_eff);
    let denom = w * w + 4.0 * c * c;
    if denom < DEGENERACY_TOL {
        return Err(Error::DegenerateSpectrum(denom));
    }
    let ident = Matrix3::<f64>::identity();
    let k = shifted_generator(p);
    let k2 = k * k;
    let q = 0.25 * w * w;
    let lambda1 = k2 + ident * q;
    let lambda2 = (ident * (c * c) - k2) * 0.5;
    let lambda3 = ident * (-c * q) - k * (c * c + q) - k2 * c;
    let sinc = if w == 0.0 { t } else { (w * t).sin() / w };
    let slow = (-4.0 * a * t).exp();
    let fast = (-2.0 * (2.0 * a + c) * t).exp();
    Ok(
        (lambda1 * slow + (lambda2 * (w * t).cos() + lambda3 * sinc) * (2.0 * fast))
            * (4.0 / denom),
    )
}

/// Closed form when available, otherwise the oracle exponential `e^{−2Ht}`.
pub fn propagator(p: &SingleAtomParams, t: f64) -> Result<Matrix3<f64>> {
    match propagator_closed_form(p, t) {
        Err(Error::DegenerateSpectrum(_)) => expm(&(build_bloch_generator(p).h * (-2.0 * t))),
        other => other,
    }
}

/// `r∞ = ½ H⁻¹ η`, which reduces to `−(B/A) n`.
pub fn asymptotic_state(p: &SingleAtomParams) -> Result<BlochVector> {
    if p.a() <= 0.0 {
        return Err(Error::SingularGenerator);
    }
    BlochVector::clamped(p.n.as_vector() * (-p.b() / p.a()))
}

/// `r(t) = M(t) r₀ + (1 − M(t)) r∞`. A degenerate spectrum falls back to the
/// oracle exponential; lengths up to `1 + 1e-12` are projected back onto the ball.
pub fn evolve_state(p: &SingleAtomParams, r0: &BlochVector, t: f64) -> Result<BlochVector> {
    let m = propagator(p, t)?;
    let r_inf = asymptotic_state(p)?;
    let r = m * r0.as_vector() + (Matrix3::identity() - m) * r_inf.as_vector();
    if r.norm() > 1.0 + STATE_TOL {
        return Err(Error::Positivity(format!(
            "evolved Bloch vector has length {}",
            r.norm()
        )));
    }
    BlochVector::clamped(r)
}

/// `Tr[ρ_f ρ(t)] = ½(1 + r_f · r(t))`, with `r(t)` expanded along and across `n`:
/// the longitudinal part relaxes as `e^{−4At}` towards `−(B/A)`, the transverse
/// part decays as `e^{−2(2A+C)t}` while precessing by `Ωt` about `n`.
pub fn transition_probability(
    p: &SingleAtomParams,
    ri: &BlochVector,
    rf: &BlochVector,
    t: f64,
) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!("time must be finite and non-negative, got {t}"));
    }
    if p.a() <= 0.0 {
        return Err(Error::SingularGenerator);
    }
    let n = p.n.as_vector();
    let (vi, vf) = (ri.as_vector(), rf.as_vector());
    let (ni, nf) = (vi.dot(n), vf.dot(n));
    let ratio = p.b() / p.a();
    let slow = (-4.0 * p.a() * t).exp();
    let fast = (-2.0 * (2.0 * p.a() + p.c()) * t).exp();
    let wt = p.omega_eff * t;
    let transverse = (vi.dot(vf) - ni * nf) * wt.cos() + n.dot(&vi.cross(vf)) * wt.sin();
    let prob = 0.5 * (1.0 - nf * (1.0 - slow) * ratio + slow * ni * nf + fast * transverse);
    Ok(prob)
}

/// Spontaneous excitation rate `Γ = (ω/π)/(e^{β_U ω} − 1)`. For parameters
/// without a temperature the equivalent `2(A − B)` is returned.
pub fn excitation_rate(p: &SingleAtomParams) -> f64 {
    match p.beta_u {
        Some(beta) => (p.omega / std::f64::consts::PI) / (beta * p.omega).exp_m1(),
        None => 2.0 * (p.a() - p.b()),
    }
}

/// `dP/dt` at `t = 0` for the ground-to-excited transition, read off the generator.
pub fn excitation_rate_from_generator(p: &SingleAtomParams) -> f64 {
    let g = build_bloch_generator(p);
    let n = p.n.as_vector();
    0.5 * n.dot(&g.rate(&(-n)))
}
