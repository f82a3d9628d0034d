//! Qubit and two-qubit states: Bloch and Pauli-component codecs, partial
//! traces, Gibbs states and the Wootters concurrence.
//!
//! Two-qubit components are indexed as `c[4μ + ν] = Tr[ρ (σμ ⊗ σν)]` with
//! `σ0 = 1`. The block `c[ν]` (μ = 0) is therefore the Bloch vector of the
//! second qubit and `c[4μ]` (ν = 0) that of the first.

use nalgebra::{Matrix2, Matrix3, Matrix4, SVector, Vector3};
use num_complex::Complex64;

use crate::dissipator::{hermitian_deviation, UnitVector};
use crate::error::{domain, Error, Result};

/// Tolerance on `|r| ≤ 1` and on negative density-matrix eigenvalues.
pub const STATE_TOL: f64 = 1e-12;
/// Eigenvalues of ρ below this are treated as exact zeros inside [`concurrence`].
const SQRT_FLOOR: f64 = 1e-14;
/// Concurrence values within this of zero are reported as zero.
pub const CONCURRENCE_ZERO_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Pauli matrices `σ0 … σ3`.
pub fn pauli(mu: usize) -> Matrix2<Complex64> {
    let (o, z) = (cr(1.0), cr(0.0));
    match mu {
        0 => Matrix2::new(o, z, z, o),
        1 => Matrix2::new(z, o, o, z),
        2 => Matrix2::new(z, -I, I, z),
        3 => Matrix2::new(o, z, z, -o),
        _ => panic!("Pauli index {mu} out of range"),
    }
}

/// `σμ ⊗ σν`.
pub fn pauli_pair(mu: usize, nu: usize) -> Matrix4<Complex64> {
    pauli(mu).kronecker(&pauli(nu))
}

// ---------------------------------------------------------------------------
// Single qubit

/// Bloch (coherence) vector of a qubit, `ρ = ½(1 + r·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vector3<f64>);

impl BlochVector {
    /// Accepts `|r| ≤ 1 + 1e-12`.
    pub fn new(r: Vector3<f64>) -> Result<Self> {
        if !r.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("Bloch vector".into()));
        }
        let norm = r.norm();
        if norm > 1.0 + STATE_TOL {
            return Err(Error::Positivity(format!(
                "Bloch vector length {norm} exceeds 1"
            )));
        }
        Ok(Self(r))
    }

    pub fn from_components(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Vector3::new(x, y, z))
    }

    /// Pure state pointing along `n`.
    pub fn pure(n: &UnitVector) -> Self {
        Self(*n.as_vector())
    }

    pub fn maximally_mixed() -> Self {
        Self(Vector3::zeros())
    }

    /// Rescales onto the unit sphere if the length exceeds 1 by at most the
    /// state tolerance; larger excursions are an error.
    pub fn clamped(r: Vector3<f64>) -> Result<Self> {
        let s = Self::new(r)?;
        let norm = r.norm();
        Ok(if norm > 1.0 { Self(r / norm) } else { s })
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn into_inner(self) -> Vector3<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.dot(&other.0)
    }
}

fn check_density<const N: usize>(
    m: &nalgebra::SMatrix<Complex64, N, N>,
    min_eig: fn(&nalgebra::SMatrix<Complex64, N, N>) -> f64,
    tol: f64,
) -> Result<f64> {
    if !m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("density matrix".into()));
    }
    let deviation = hermitian_deviation(m);
    if deviation > STATE_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = m.trace();
    if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
        return domain(format!("density matrix trace {trace} is not 1"));
    }
    let min = min_eig(m);
    if min < -tol {
        return Err(Error::Positivity(format!(
            "density matrix eigenvalue {min:.3e}"
        )));
    }
    Ok(min)
}

fn hermitian_part4(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    (m + m.adjoint()) * cr(0.5)
}

fn min_eigenvalue2(m: &Matrix2<Complex64>) -> f64 {
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    0.5 * (a + d) - (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt()
}

fn min_eigenvalue4(m: &Matrix4<Complex64>) -> f64 {
    hermitian_part4(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Validated qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(Matrix2<Complex64>);

impl DensityMatrix2 {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        check_density(&m, min_eigenvalue2, STATE_TOL)?;
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue2(&self.0)
    }
}

/// Validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(Matrix4<Complex64>);

impl DensityMatrix4 {
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        Self::with_tolerance(m, STATE_TOL)
    }

    /// As [`new`](Self::new), but negative eigenvalues down to `-tol` are accepted.
    pub fn with_tolerance(m: Matrix4<Complex64>, tol: f64) -> Result<Self> {
        check_density(&m, min_eigenvalue4, tol)?;
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue4(&self.0)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let ev = hermitian_part4(&self.0).symmetric_eigenvalues();
        let mut out = [ev[0], ev[1], ev[2], ev[3]];
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn tensor(a: &DensityMatrix2, b: &DensityMatrix2) -> Self {
        Self(a.0.kronecker(&b.0))
    }
}

/// `ρ = ½(1 + r·σ)`.
pub fn bloch_encode(r: &BlochVector) -> DensityMatrix2 {
    let v = r.as_vector();
    let m = (pauli(0) + pauli(1) * cr(v.x) + pauli(2) * cr(v.y) + pauli(3) * cr(v.z)) * cr(0.5);
    DensityMatrix2(m)
}

/// `rᵢ = Tr[ρ σᵢ]`.
pub fn bloch_decode(rho: &DensityMatrix2) -> BlochVector {
    let r = Vector3::from_fn(|i, _| (rho.0 * pauli(i + 1)).trace().re);
    // the matrix is validated, so |r| ≤ 1 up to the state tolerance
    BlochVector(r)
}

/// Thermal state `e^{−βH}/Tr e^{−βH}` for `H = (ω/2) n·σ`.
pub fn gibbs_state(omega: f64, n: &UnitVector, beta: f64) -> Result<DensityMatrix2> {
    if !(beta > 0.0) {
        return domain(format!("inverse temperature must be positive, got {beta}"));
    }
    if !omega.is_finite() {
        return domain("level spacing must be finite");
    }
    let r = -(0.5 * beta * omega).tanh() * n.as_vector();
    Ok(bloch_encode(&BlochVector(r)))
}

// ---------------------------------------------------------------------------
// Two qubits

/// Real Pauli components of a two-qubit state, `ρ = ¼[1 + Σ v0i 1⊗σᵢ +
/// Σ vi0 σᵢ⊗1 + Σ vij σᵢ⊗σⱼ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoAtomState {
    v0i: Vector3<f64>,
    vi0: Vector3<f64>,
    vij: Matrix3<f64>,
}

impl TwoAtomState {
    /// Builds the state and checks that its density matrix is physical.
    pub fn new(v0i: Vector3<f64>, vi0: Vector3<f64>, vij: Matrix3<f64>) -> Result<Self> {
        let s = Self { v0i, vi0, vij };
        pauli4_encode(&s)?;
        Ok(s)
    }

    /// No positivity check; used for intermediate or diagnostic vectors.
    pub fn from_parts_unchecked(v0i: Vector3<f64>, vi0: Vector3<f64>, vij: Matrix3<f64>) -> Self {
        Self { v0i, vi0, vij }
    }

    /// From the 16-component vector; `c[0]` must be 1. Not positivity-checked.
    pub fn from_components(c: &SVector<f64, 16>) -> Result<Self> {
        if (c[0] - 1.0).abs() > 1e-9 {
            return domain(format!("identity component must be 1, got {}", c[0]));
        }
        if !c.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("two-atom components".into()));
        }
        Ok(Self {
            v0i: Vector3::new(c[1], c[2], c[3]),
            vi0: Vector3::new(c[4], c[8], c[12]),
            vij: Matrix3::from_fn(|i, j| c[4 * (i + 1) + j + 1]),
        })
    }

    pub fn components(&self) -> SVector<f64, 16> {
        let mut c = SVector::<f64, 16>::zeros();
        c[0] = 1.0;
        for i in 0..3 {
            c[i + 1] = self.v0i[i];
            c[4 * (i + 1)] = self.vi0[i];
            for j in 0..3 {
                c[4 * (i + 1) + j + 1] = self.vij[(i, j)];
            }
        }
        c
    }

    pub fn singlet() -> Self {
        Self {
            v0i: Vector3::zeros(),
            vi0: Vector3::zeros(),
            vij: -Matrix3::identity(),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            v0i: Vector3::zeros(),
            vi0: Vector3::zeros(),
            vij: Matrix3::zeros(),
        }
    }

    /// `ρ_first ⊗ ρ_second`.
    pub fn product(first: &BlochVector, second: &BlochVector) -> Self {
        Self {
            v0i: *second.as_vector(),
            vi0: *first.as_vector(),
            vij: first.as_vector() * second.as_vector().transpose(),
        }
    }

    /// `(1−ε) ρ₋ + (ε/4) 1`.
    pub fn werner(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return domain(format!(
                "mixing parameter must lie in [0, 1], got {epsilon}"
            ));
        }
        Ok(Self {
            v0i: Vector3::zeros(),
            vi0: Vector3::zeros(),
            vij: -Matrix3::identity() * (1.0 - epsilon),
        })
    }

    /// Bloch vector of the second qubit.
    pub fn v0i(&self) -> &Vector3<f64> {
        &self.v0i
    }

    /// Bloch vector of the first qubit.
    pub fn vi0(&self) -> &Vector3<f64> {
        &self.vi0
    }

    pub fn vij(&self) -> &Matrix3<f64> {
        &self.vij
    }

    /// `Σᵢ vii`, conserved by the collective dynamics.
    pub fn tau(&self) -> f64 {
        self.vij.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue4(&pauli4_matrix(self))
    }
}

fn pauli4_matrix(s: &TwoAtomState) -> Matrix4<Complex64> {
    let c = s.components();
    let mut m = Matrix4::<Complex64>::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            let w = c[4 * mu + nu];
            if w != 0.0 {
                m += pauli_pair(mu, nu) * cr(w);
            }
        }
    }
    m * cr(0.25)
}

/// Density matrix of the component set; fails if it is not positive.
pub fn pauli4_encode(s: &TwoAtomState) -> Result<DensityMatrix4> {
    DensityMatrix4::new(pauli4_matrix(s))
}

/// Like [`pauli4_encode`], with a custom negative-eigenvalue allowance.
pub fn pauli4_encode_with_tolerance(s: &TwoAtomState, tol: f64) -> Result<DensityMatrix4> {
    DensityMatrix4::with_tolerance(pauli4_matrix(s), tol)
}

pub fn pauli4_decode(rho: &DensityMatrix4) -> TwoAtomState {
    let c = SVector::<f64, 16>::from_fn(|k, _| (rho.0 * pauli_pair(k / 4, k % 4)).trace().re);
    TwoAtomState {
        v0i: Vector3::new(c[1], c[2], c[3]),
        vi0: Vector3::new(c[4], c[8], c[12]),
        vij: Matrix3::from_fn(|i, j| c[4 * (i + 1) + j + 1]),
    }
}

/// Which qubit a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Traces out `subsystem`, returning the state of the other qubit.
pub fn partial_trace(rho: &DensityMatrix4, subsystem: Subsystem) -> DensityMatrix2 {
    let m = &rho.0;
    let reduced = Matrix2::from_fn(|a, b| match subsystem {
        Subsystem::Second => m[(2 * a, 2 * b)] + m[(2 * a + 1, 2 * b + 1)],
        Subsystem::First => m[(a, b)] + m[(a + 2, b + 2)],
    });
    DensityMatrix2(reduced)
}

/// Hermitian square root with eigenvalues below the noise floor set to zero.
fn psd_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = hermitian_part4(m).symmetric_eigen();
    let roots = eig
        .eigenvalues
        .map(|l| if l > SQRT_FLOOR { l.sqrt() } else { 0.0 });
    let v = &eig.eigenvectors;
    v * Matrix4::from_diagonal(&roots.map(cr)) * v.adjoint()
}

/// The decreasing `λ_μ` of the concurrence: square roots of the eigenvalues
/// of `ρρ̃`, obtained as singular values of `√ρ · √ρ̃`.
pub fn concurrence_spectrum(rho: &DensityMatrix4) -> [f64; 4] {
    let yy = pauli_pair(2, 2);
    let s = psd_sqrt(&rho.0);
    // √ρ̃ = (σy⊗σy) √ρ* (σy⊗σy), since ρᵀ = ρ* for Hermitian ρ
    let s_tilde = yy * s.map(|z| z.conj()) * yy;
    let sv = (s * s_tilde).singular_values();
    let mut out = [sv[0], sv[1], sv[2], sv[3]];
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`.
pub fn concurrence(rho: &DensityMatrix4) -> f64 {
    let l = concurrence_spectrum(rho);
    let c = l[0] - l[1] - l[2] - l[3];
    if c <= CONCURRENCE_ZERO_TOL {
        0.0
    } else {
        c.min(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_ball(rng: &mut ChaCha8Rng) -> BlochVector {
        loop {
            let v = Vector3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            if v.norm() <= 1.0 {
                return BlochVector::new(v).unwrap();
            }
        }
    }

    /// Random SU(2) from a random rotation axis and angle.
    fn random_unitary(rng: &mut ChaCha8Rng) -> Matrix2<Complex64> {
        let axis = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
        .normalize();
        let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (s, c) = (0.5 * angle).sin_cos();
        pauli(0) * cr(c)
            - (pauli(1) * cr(axis.x) + pauli(2) * cr(axis.y) + pauli(3) * cr(axis.z)) * (I * s)
    }

    /// Random mixed two-qubit state `G G† / Tr`.
    fn random_state(rng: &mut ChaCha8Rng) -> DensityMatrix4 {
        let g = Matrix4::from_fn(|_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let m = g * g.adjoint();
        let t = m.trace();
        DensityMatrix4::new(m / t).unwrap()
    }

    /// Closed form for states with only diagonal and anti-diagonal entries.
    fn x_state_concurrence(m: &Matrix4<Complex64>) -> f64 {
        let d = |i: usize| m[(i, i)].re;
        let a = m[(0, 3)].norm() - (d(1) * d(2)).sqrt();
        let b = m[(1, 2)].norm() - (d(0) * d(3)).sqrt();
        (2.0 * a.max(b)).max(0.0)
    }

    #[test]
    fn pauli_algebra() {
        for i in 1..4 {
            assert!((pauli(i) * pauli(i) - pauli(0)).camax() < 1e-15);
        }
        assert!((pauli(1) * pauli(2) - pauli(3) * I).camax() < 1e-15);
    }

    #[test]
    fn bloch_codec() {
        let mixed = bloch_encode(&BlochVector::maximally_mixed());
        assert!((mixed.matrix() - pauli(0) * cr(0.5)).camax() < 1e-16);

        let n = UnitVector::new(Vector3::new(1.0, -2.0, 0.5)).unwrap();
        let p = bloch_encode(&BlochVector::pure(&n));
        // projector onto the +1 eigenvector of n·σ
        assert!((p.matrix() * p.matrix() - p.matrix()).camax() < 1e-15);
        let ns = pauli(1) * cr(n.as_vector().x)
            + pauli(2) * cr(n.as_vector().y)
            + pauli(3) * cr(n.as_vector().z);
        assert!((ns * p.matrix() - p.matrix()).camax() < 1e-15);

        assert!(BlochVector::from_components(0.0, 0.0, 1.0 + 1e-9).is_err());
        assert!(BlochVector::from_components(0.0, 0.0, 1.0 + 1e-13).is_ok());
        assert_eq!(
            BlochVector::clamped(Vector3::new(0.0, 0.0, 1.0 + 1e-13))
                .unwrap()
                .norm(),
            1.0
        );
    }

    proptest! {
        #[test]
        fn bloch_round_trip(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = random_ball(&mut rng);
            let back = bloch_decode(&DensityMatrix2::new(*bloch_encode(&r).matrix()).unwrap());
            prop_assert!((back.as_vector() - r.as_vector()).camax() < 1e-14);
        }

        #[test]
        fn pauli_round_trip(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rho = random_state(&mut rng);
            let s = pauli4_decode(&rho);
            let back = pauli4_encode(&s).unwrap();
            prop_assert!((back.matrix() - rho.matrix()).camax() < 1e-14);
            prop_assert!((TwoAtomState::from_components(&s.components()).unwrap().components() - s.components()).camax() == 0.0);
        }

        #[test]
        fn concurrence_local_unitary_invariance(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rho = random_state(&mut rng);
            let u = random_unitary(&mut rng).kronecker(&random_unitary(&mut rng));
            let rotated = DensityMatrix4::new(u * rho.matrix() * u.adjoint()).unwrap();
            prop_assert!((concurrence(&rho) - concurrence(&rotated)).abs() < 1e-10);
        }

        #[test]
        fn partial_traces_recover_local_bloch_vectors(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = pauli4_decode(&random_state(&mut rng));
            let rho = pauli4_encode(&s).unwrap();
            let first = bloch_decode(&partial_trace(&rho, Subsystem::Second));
            let second = bloch_decode(&partial_trace(&rho, Subsystem::First));
            prop_assert!((first.as_vector() - s.vi0()).camax() < 1e-14);
            prop_assert!((second.as_vector() - s.v0i()).camax() < 1e-14);
        }

        #[test]
        fn concurrence_bounds(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = concurrence(&random_state(&mut rng));
            prop_assert!((0.0..=1.0).contains(&c));
        }
    }

    #[test]
    fn singlet_components_and_matrix() {
        let rho = pauli4_encode(&TwoAtomState::singlet()).unwrap();
        // (|01⟩ − |10⟩)/√2
        let h = cr(0.5);
        let expected = Matrix4::new(
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            h,
            -h,
            cr(0.0),
            cr(0.0),
            -h,
            h,
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
        );
        assert!((rho.matrix() - expected).camax() < 1e-15);
        assert!((concurrence(&rho) - 1.0).abs() < 1e-12);
        let reduced = partial_trace(&rho, Subsystem::First);
        assert!((reduced.matrix() - pauli(0) * cr(0.5)).camax() < 1e-15);
        assert_eq!(TwoAtomState::singlet().tau(), -3.0);
    }

    #[test]
    fn product_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (a, b) = (random_ball(&mut rng), random_ball(&mut rng));
            let s = TwoAtomState::product(&a, &b);
            assert!((s.tau() - a.dot(&b)).abs() < 1e-15);
            let rho = pauli4_encode(&s).unwrap();
            let direct = DensityMatrix4::tensor(&bloch_encode(&a), &bloch_encode(&b));
            assert!((rho.matrix() - direct.matrix()).camax() < 1e-15);
            assert_eq!(concurrence(&rho), 0.0);
            let first = partial_trace(&rho, Subsystem::Second);
            assert!((first.matrix() - bloch_encode(&a).matrix()).camax() < 1e-15);
        }
        // pure product states are rank one
        let n = UnitVector::new(Vector3::new(0.3, 0.1, -1.0)).unwrap();
        let s = TwoAtomState::product(&BlochVector::pure(&n), &BlochVector::pure(&-n));
        assert_eq!(concurrence(&pauli4_encode(&s).unwrap()), 0.0);
        assert!((s.tau() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_has_zero_components() {
        let rho = DensityMatrix4::new(Matrix4::identity() * cr(0.25)).unwrap();
        assert_eq!(pauli4_decode(&rho), TwoAtomState::maximally_mixed());
        assert_eq!(concurrence(&rho), 0.0);
    }

    #[test]
    fn werner_concurrence_line() {
        for k in 0..=100 {
            let eps = k as f64 / 100.0;
            let rho = pauli4_encode(&TwoAtomState::werner(eps).unwrap()).unwrap();
            let expected = (1.0 - 1.5 * eps).max(0.0);
            assert!((concurrence(&rho) - expected).abs() < 1e-12, "eps {eps}");
            assert!((concurrence(&rho) - x_state_concurrence(rho.matrix())).abs() < 1e-12);
        }
        let rho = pauli4_encode(&TwoAtomState::werner(0.4).unwrap()).unwrap();
        assert!((concurrence(&rho) - 0.4).abs() < 1e-12);
        assert!(TwoAtomState::werner(1.5).is_err());
    }

    #[test]
    fn x_states_match_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            // random X state: diagonal p, coherences bounded by √(p p)
            let mut p = [0.0; 4];
            for v in &mut p {
                *v = rng.random_range(0.0..1.0);
            }
            let t: f64 = p.iter().sum();
            p.iter_mut().for_each(|v| *v /= t);
            let z = (p[0] * p[3]).sqrt() * rng.random_range(0.0..1.0);
            let w = (p[1] * p[2]).sqrt() * rng.random_range(0.0..1.0);
            let (pz, pw) = (rng.random_range(0.0..6.0f64), rng.random_range(0.0..6.0f64));
            let mut m = Matrix4::from_diagonal(&nalgebra::Vector4::new(
                cr(p[0]),
                cr(p[1]),
                cr(p[2]),
                cr(p[3]),
            ));
            m[(0, 3)] = Complex64::from_polar(z, pz);
            m[(3, 0)] = m[(0, 3)].conj();
            m[(1, 2)] = Complex64::from_polar(w, pw);
            m[(2, 1)] = m[(1, 2)].conj();
            let rho = DensityMatrix4::new(m).unwrap();
            let expected = x_state_concurrence(&m);
            let got = concurrence(&rho);
            assert!(
                (got - if expected <= 1e-12 { 0.0 } else { expected }).abs() < 1e-10,
                "{got} vs {expected}"
            );
        }
    }

    #[test]
    fn concurrence_threshold_tie_is_exact_zero() {
        // ε = 2/3 sits exactly on the separability boundary of the Werner line
        let rho = pauli4_encode(&TwoAtomState::werner(2.0 / 3.0).unwrap()).unwrap();
        assert_eq!(concurrence(&rho), 0.0);
    }

    #[test]
    fn rejects_unphysical_matrices() {
        let bad = TwoAtomState::from_parts_unchecked(
            Vector3::zeros(),
            Vector3::zeros(),
            Matrix3::identity() * -1.5,
        );
        assert!(matches!(pauli4_encode(&bad), Err(Error::Positivity(_))));
        let mut m = Matrix4::<Complex64>::identity() * cr(0.25);
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(matches!(
            DensityMatrix4::new(m),
            Err(Error::NotHermitian { .. })
        ));
        let m = Matrix4::<Complex64>::identity() * cr(0.3);
        assert!(DensityMatrix4::new(m).is_err());
        let mut c = TwoAtomState::singlet().components();
        c[0] = 0.5;
        assert!(TwoAtomState::from_components(&c).is_err());
    }

    #[test]
    fn gibbs_states() {
        let n = UnitVector::new(Vector3::new(0.2, 0.4, -0.7)).unwrap();
        let g = gibbs_state(1.0, &n, 2.0).unwrap();
        let r = bloch_decode(&g);
        assert!((r.norm() - 0.761_594_155_955_764_9).abs() < 1e-15);
        assert!((r.as_vector() + n.as_vector() * r.norm()).camax() < 1e-15);
        // direct matrix exponential of −βH
        let beta = 2.0;
        let h = (pauli(1) * cr(n.as_vector().x)
            + pauli(2) * cr(n.as_vector().y)
            + pauli(3) * cr(n.as_vector().z))
            * cr(0.5);
        let eig = h.symmetric_eigen();
        let w = eig.eigenvalues.map(|l| cr((-beta * l).exp()));
        let e = eig.eigenvectors * Matrix2::from_diagonal(&w) * eig.eigenvectors.adjoint();
        let e = e / e.trace();
        assert!((e - g.matrix()).camax() < 1e-14);
        // zero temperature limit → ground-state projector
        let cold = bloch_decode(&gibbs_state(1.0, &n, 1e3).unwrap());
        assert!((cold.as_vector() + n.as_vector()).camax() < 1e-15);
        assert!(gibbs_state(1.0, &n, 0.0).is_err());
    }
}
