//! Collective dissipative dynamics of two atoms coupled to the same field.
//!
//! The generator is
//! `𝓛ρ = Σ a_ij [Σ_j ρ Σ_i − ½{Σ_i Σ_j, ρ}]` with collective operators
//! `Σ_i = σ_i⊗1 + 1⊗σ_i`, represented as a real 16×16 matrix on the Pauli
//! components of [`TwoAtomState`]. Hamiltonian terms are not included.

use nalgebra::{Matrix3, Matrix4, SMatrix, SVector, Vector3};
use num_complex::Complex64;

use crate::dissipator::{check_positivity, KossakowskiCoefficients, KossakowskiMatrix, UnitVector};
use crate::error::{domain, Error, Result};
use crate::ode::{expm, integrate, stationary_solve, IntegratorOptions, LinearSystem};
use crate::qstate::{
    concurrence, pauli, pauli4_encode, pauli4_encode_with_tolerance, pauli_pair,
    CONCURRENCE_ZERO_TOL,
};

pub use crate::qstate::TwoAtomState;

/// Largest negative eigenvalue tolerated along a trajectory before it is
/// reported as a defect.
pub const POSITIVITY_DRIFT_TOL: f64 = 1e-8;
/// Allowed drift of `τ` during evolution.
pub const TAU_DRIFT_TOL: f64 = 1e-9;

const TAU_RANGE: (f64, f64) = (-3.0, 1.0);
const RANGE_SLACK: f64 = 1e-12;

/// Real 16×16 matrix of the collective generator on Pauli components.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveLiouvillian {
    l: SMatrix<f64, 16, 16>,
    rates: [f64; 3],
    coefficients: Option<KossakowskiCoefficients>,
    n: UnitVector,
}

impl CollectiveLiouvillian {
    pub fn matrix(&self) -> &SMatrix<f64, 16, 16> {
        &self.l
    }

    /// Eigenvalues of the Kossakowski matrix, ascending (`A−B, A+B, A+C` for the structured form).
    pub fn rates(&self) -> [f64; 3] {
        self.rates
    }

    pub fn coefficients(&self) -> Option<KossakowskiCoefficients> {
        self.coefficients
    }

    pub fn n(&self) -> &UnitVector {
        &self.n
    }

    /// `R = B/A`, when the Kossakowski matrix has the structured form.
    pub fn ratio(&self) -> Option<f64> {
        self.coefficients.map(|k| k.b / k.a)
    }

    /// Time derivative of the components of `s`.
    pub fn apply(&self, s: &TwoAtomState) -> SVector<f64, 16> {
        self.l * s.components()
    }

    pub fn as_linear_system(&self) -> LinearSystem<16> {
        LinearSystem {
            generator: self.l,
            drive: SVector::zeros(),
        }
    }
}

fn collective_operators() -> [Matrix4<Complex64>; 3] {
    std::array::from_fn(|i| pauli(i + 1).kronecker(&pauli(0)) + pauli(0).kronecker(&pauli(i + 1)))
}

/// Applies `𝓛` to an arbitrary 4×4 matrix.
pub fn apply_collective_generator(
    a: &KossakowskiMatrix,
    rho: &Matrix4<Complex64>,
) -> Matrix4<Complex64> {
    let sigma = collective_operators();
    let mut out = Matrix4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let aij = a.matrix()[(i, j)];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            let prod = sigma[i] * sigma[j];
            let term =
                sigma[j] * rho * sigma[i] - (prod * rho + rho * prod) * Complex64::new(0.5, 0.0);
            out += term * aij;
        }
    }
    out
}

/// Assembles `L[(αβ),(μν)] = ¼ Tr[(σα⊗σβ) 𝓛(σμ⊗σν)]`.
pub fn build_collective_liouvillian(
    a: &KossakowskiMatrix,
    n: &UnitVector,
) -> Result<CollectiveLiouvillian> {
    let report = check_positivity(a)?;
    if !report.positive {
        return Err(Error::Positivity(format!(
            "Kossakowski matrix has eigenvalue {:.3e}",
            report.min()
        )));
    }
    if let Some(axis) = a.axis() {
        if (axis.as_vector() - n.as_vector()).amax() > 1e-12 {
            return domain("Kossakowski axis differs from the supplied direction n");
        }
    }
    let basis: Vec<Matrix4<Complex64>> = (0..16).map(|k| pauli_pair(k / 4, k % 4)).collect();
    let mut l = SMatrix::<f64, 16, 16>::zeros();
    for (col, p) in basis.iter().enumerate() {
        let image = apply_collective_generator(a, p);
        for (row, q) in basis.iter().enumerate() {
            l[(row, col)] = 0.25 * (q * image).trace().re;
        }
    }
    if !l.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("Liouvillian entries".into()));
    }
    Ok(CollectiveLiouvillian {
        l,
        rates: report.eigenvalues,
        coefficients: a.coefficients(),
        n: *n,
    })
}

/// How [`evolve_two_atom`] propagates the components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Propagation {
    /// `e^{Lt}` by scaling and squaring.
    Exact,
    /// Dormand–Prince integration at the given tolerances.
    Adaptive(IntegratorOptions),
}

/// Evolves `s0` for time `t`, checking that `τ` is conserved and the state
/// stays positive.
pub fn evolve_two_atom(
    l: &CollectiveLiouvillian,
    s0: &TwoAtomState,
    t: f64,
    propagation: Propagation,
) -> Result<TwoAtomState> {
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!("time must be finite and non-negative, got {t}"));
    }
    pauli4_encode(s0)?;
    let c0 = s0.components();
    let c = match propagation {
        Propagation::Exact => expm(&(l.l * t))? * c0,
        Propagation::Adaptive(opts) => integrate(&l.as_linear_system(), &c0, t, &opts)?.state,
    };
    let s = TwoAtomState::from_components(&c)?;
    let drift = (s.tau() - s0.tau()).abs();
    if drift > TAU_DRIFT_TOL {
        return Err(Error::Convergence(format!("tau drifted by {drift:.3e}")));
    }
    pauli4_encode_with_tolerance(&s, POSITIVITY_DRIFT_TOL)?;
    Ok(s)
}

/// Solver used by [`asymptotic_two_atom`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryMethod {
    /// Kernel of `L` pinned by unit trace and fixed `τ`.
    NullSpace,
    /// `e^{LT}` with `T` doubled until the state stops changing.
    LongTime,
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau >= TAU_RANGE.0 - RANGE_SLACK && tau <= TAU_RANGE.1 + RANGE_SLACK) {
        return domain(format!("tau must lie in [-3, 1], got {tau}"));
    }
    Ok(())
}

fn check_ratio(r: f64) -> Result<()> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&r) {
        return domain(format!("R = B/A must lie in [0, 1], got {r}"));
    }
    Ok(())
}

fn tau_functional() -> SVector<f64, 16> {
    let mut f = SVector::zeros();
    f[5] = 1.0;
    f[10] = 1.0;
    f[15] = 1.0;
    f
}

/// Isotropic state `¼[1 + (τ/3) Σ σᵢ⊗σᵢ]`, physical for every admissible `τ`.
pub fn isotropic_state(tau: f64) -> Result<TwoAtomState> {
    check_tau(tau)?;
    let tau = tau.clamp(TAU_RANGE.0, TAU_RANGE.1);
    Ok(TwoAtomState::from_parts_unchecked(
        Vector3::zeros(),
        Vector3::zeros(),
        Matrix3::identity() * (tau / 3.0),
    ))
}

/// Stationary state of `L` in the sector of fixed `τ`.
pub fn asymptotic_two_atom(
    l: &CollectiveLiouvillian,
    tau: f64,
    method: StationaryMethod,
) -> Result<TwoAtomState> {
    check_tau(tau)?;
    if let Some(r) = l.ratio() {
        check_ratio(r)?;
    }
    let c = match method {
        StationaryMethod::NullSpace => {
            let mut unit = SVector::<f64, 16>::zeros();
            unit[0] = 1.0;
            stationary_solve(
                &l.as_linear_system(),
                &[(unit, 1.0), (tau_functional(), tau)],
            )?
            .x
        }
        StationaryMethod::LongTime => long_time_limit(l, &isotropic_state(tau)?)?,
    };
    let s = TwoAtomState::from_components(&c)?;
    pauli4_encode_with_tolerance(&s, POSITIVITY_DRIFT_TOL)?;
    Ok(s)
}

fn long_time_limit(l: &CollectiveLiouvillian, s0: &TwoAtomState) -> Result<SVector<f64, 16>> {
    let slowest = l
        .rates
        .iter()
        .copied()
        .filter(|&r| r > 0.0)
        .fold(f64::INFINITY, f64::min);
    let t0 = if slowest.is_finite() {
        1.0 / slowest
    } else {
        1.0
    };
    let mut step = expm(&(l.l * t0))?;
    let mut c = step * s0.components();
    for _ in 0..64 {
        step = step * step;
        let next = step * c;
        let change = (next - c).amax();
        c = next;
        if change < 1e-13 {
            return Ok(c);
        }
    }
    Err(Error::Convergence("long-time limit did not settle".into()))
}

/// Sign convention for the local coherences `v0i = vi0` of the stationary state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceSign {
    /// Anti-aligned with `n`, as the single-atom asymptote.
    Negative,
    /// Aligned with `n`.
    Positive,
}

impl CoherenceSign {
    pub fn value(self) -> f64 {
        match self {
            CoherenceSign::Negative => -1.0,
            CoherenceSign::Positive => 1.0,
        }
    }
}

/// Closed-form stationary state:
/// `vij = [(τ − R²)δᵢⱼ + R²(τ + 3)nᵢnⱼ]/(3 + R²)`,
/// `v0i = vi0 = s R(τ + 3) nᵢ/(3 + R²)`.
pub fn stationary_closed_form(
    tau: f64,
    r: f64,
    n: &UnitVector,
    sign: CoherenceSign,
) -> Result<TwoAtomState> {
    check_tau(tau)?;
    check_ratio(r)?;
    let nv = n.as_vector();
    let d = 3.0 + r * r;
    let local = nv * (sign.value() * r * (tau + 3.0) / d);
    let vij =
        (Matrix3::identity() * (tau - r * r) + nv * nv.transpose() * (r * r * (tau + 3.0))) / d;
    Ok(TwoAtomState::from_parts_unchecked(local, local, vij))
}

/// Sign of `v0i · n` in the computed stationary state (`0` when the local
/// coherences vanish, i.e. `R = 0` or `τ = −3`).
pub fn coherence_sign(s: &TwoAtomState, n: &UnitVector) -> f64 {
    let proj = 0.5 * (s.v0i() + s.vi0()).dot(n.as_vector());
    if proj.abs() < 1e-14 {
        0.0
    } else {
        proj.signum()
    }
}

/// `τ* = (5R² − 3)/(3 − R²)`; the stationary state is entangled iff `τ < τ*`.
pub fn entanglement_threshold(r: f64) -> Result<f64> {
    check_ratio(r)?;
    Ok((5.0 * r * r - 3.0) / (3.0 - r * r))
}

/// `max{0, (3 − R²)/(2(3 + R²)) · (τ* − τ)}`.
pub fn asymptotic_concurrence(tau: f64, r: f64) -> Result<f64> {
    check_tau(tau)?;
    let threshold = entanglement_threshold(r)?;
    let value = (3.0 - r * r) / (2.0 * (3.0 + r * r)) * (threshold - tau);
    Ok(if value <= CONCURRENCE_ZERO_TOL {
        0.0
    } else {
        value.min(1.0)
    })
}

/// `τ` of the product of two pure states along `n` and `m`.
pub fn scenario_product(n: &UnitVector, m: &UnitVector) -> f64 {
    n.as_vector().dot(m.as_vector())
}

/// Werner-type start `(1−ε)ρ₋ + (ε/4)1` and the entanglement it gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerScenario {
    pub initial: TwoAtomState,
    pub tau: f64,
    pub initial_concurrence: f64,
    pub asymptotic_concurrence: f64,
    /// `asymptotic_concurrence − initial_concurrence`; equals `3R²ε/(3+R²)` for `ε < 2/3`.
    pub gain: f64,
}

pub fn scenario_werner(epsilon: f64, r: f64) -> Result<WernerScenario> {
    let initial = TwoAtomState::werner(epsilon)?;
    let tau = -3.0 * (1.0 - epsilon);
    let initial_concurrence = concurrence(&pauli4_encode(&initial)?);
    let asymptotic = asymptotic_concurrence(tau, r)?;
    Ok(WernerScenario {
        initial,
        tau,
        initial_concurrence,
        asymptotic_concurrence: asymptotic,
        gain: asymptotic - initial_concurrence,
    })
}

/// Largest antisymmetric component, `max(|v0i − vi0|, |vij − vji|)`.
pub fn antisymmetric_magnitude(s: &TwoAtomState) -> f64 {
    (s.v0i() - s.vi0())
        .amax()
        .max((s.vij() - s.vij().transpose()).amax())
}

/// Right-hand side of the component equation for `v0i` in the form
/// `−4A v0i + B(1 + 2τ)n − 2B Σ_k n_k v_ik`, which is commonly quoted for the
/// large-acceleration generator. Kept for comparison only: it disagrees with
/// the operator form (it does not annihilate the singlet).
pub fn quoted_v0i_rhs(s: &TwoAtomState, a: f64, b: f64, n: &UnitVector) -> Vector3<f64> {
    let nv = n.as_vector();
    -4.0 * a * s.v0i() + nv * (b * (1.0 + 2.0 * s.tau())) - s.vij() * nv * (2.0 * b)
}

/// `v0i` block of `L s` (rows 1..4).
pub fn v0i_rate(l: &CollectiveLiouvillian, s: &TwoAtomState) -> Vector3<f64> {
    let d = l.apply(s);
    Vector3::new(d[1], d[2], d[3])
}
