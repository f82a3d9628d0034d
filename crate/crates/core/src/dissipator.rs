//! Kossakowski matrices of the weak-coupling generator.
//!
//! Three builders are provided: the general one, which starts from the
//! Fourier/Hilbert transforms of an arbitrary environment correlation matrix,
//! the scalar-field one (diagonal field correlations), and its
//! large-acceleration reduction used for the two-atom analysis.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::correlations::{fourier_g, fourier_g_unchecked};
use crate::error::{domain, Error, Result};

/// Eigenvalues below this are treated as a positivity violation.
pub const POSITIVITY_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Levi-Civita symbol on 0-based indices.
#[inline]
pub(crate) fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Direction of the level splitting, `|n| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector(Vector3<f64>);

impl UnitVector {
    /// Normalizes `v`; rejects zero or non-finite input.
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return domain(format!("cannot normalize vector {v:?}"));
        }
        Ok(Self(v / norm))
    }

    /// Accepts `v` only if it already has unit length to 1e-12.
    pub fn exact(v: Vector3<f64>) -> Result<Self> {
        if (v.norm() - 1.0).abs() > 1e-12 {
            return domain(format!("|n| = {} is not 1", v.norm()));
        }
        Ok(Self(v))
    }

    pub fn from_components(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Vector3::new(x, y, z))
    }

    pub fn z() -> Self {
        Self(Vector3::z())
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn into_inner(self) -> Vector3<f64> {
        self.0
    }
}

impl std::ops::Neg for UnitVector {
    type Output = UnitVector;
    fn neg(self) -> UnitVector {
        UnitVector(-self.0)
    }
}

/// Spectral components `ξ ∈ {0, +, −}` of the free atomic motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Xi {
    Zero,
    Plus,
    Minus,
}

impl Xi {
    pub const ALL: [Xi; 3] = [Xi::Zero, Xi::Plus, Xi::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Xi::Zero => 0.0,
            Xi::Plus => 1.0,
            Xi::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Xi {
        match self {
            Xi::Zero => Xi::Zero,
            Xi::Plus => Xi::Minus,
            Xi::Minus => Xi::Plus,
        }
    }

    fn index(self) -> usize {
        match self {
            Xi::Zero => 0,
            Xi::Plus => 1,
            Xi::Minus => 2,
        }
    }
}

/// The auxiliary matrices `ψ⁽⁰⁾ = n nᵀ`, `ψ⁽±⁾ = ½(δ − n nᵀ ± i ε·n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiProjectors {
    pub psi0: Matrix3<Complex64>,
    pub plus: Matrix3<Complex64>,
    pub minus: Matrix3<Complex64>,
}

impl PsiProjectors {
    pub fn get(&self, xi: Xi) -> &Matrix3<Complex64> {
        match xi {
            Xi::Zero => &self.psi0,
            Xi::Plus => &self.plus,
            Xi::Minus => &self.minus,
        }
    }
}

/// Real antisymmetric matrix `[ε·n]_ij = ε_ijk n_k`.
pub(crate) fn epsilon_dot(n: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, n.z, -n.y, -n.z, 0.0, n.x, n.y, -n.x, 0.0)
}

pub fn psi_matrices(n: &UnitVector) -> PsiProjectors {
    let n = n.as_vector();
    let nn = n * n.transpose();
    let eps = epsilon_dot(n);
    let transverse = Matrix3::identity() - nn;
    let half = |sign: f64| {
        Matrix3::from_fn(|i, j| Complex64::new(0.5 * transverse[(i, j)], 0.5 * sign * eps[(i, j)]))
    };
    PsiProjectors {
        psi0: nn.map(c),
        plus: half(1.0),
        minus: half(-1.0),
    }
}

/// `A`, `B`, `C` in `a_ij = A δ_ij − i B ε_ijk n_k + C n_i n_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KossakowskiCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Hermitian 3×3 dissipation matrix. When built from the structured form the
/// coefficients and axis are kept so the spectrum is available in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct KossakowskiMatrix {
    matrix: Matrix3<Complex64>,
    structure: Option<(KossakowskiCoefficients, UnitVector)>,
}

impl KossakowskiMatrix {
    /// Wraps an arbitrary matrix after checking Hermiticity.
    pub fn from_matrix(matrix: Matrix3<Complex64>) -> Result<Self> {
        let deviation = hermitian_deviation(&matrix);
        if deviation > HERMITIAN_TOL * matrix.norm().max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            matrix,
            structure: None,
        })
    }

    pub fn from_coefficients(coefficients: KossakowskiCoefficients, n: &UnitVector) -> Self {
        let KossakowskiCoefficients { a, b, c: cc } = coefficients;
        let v = n.as_vector();
        let eps = epsilon_dot(v);
        let matrix = Matrix3::from_fn(|i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            Complex64::new(a * delta + cc * v[i] * v[j], -b * eps[(i, j)])
        });
        Self {
            matrix,
            structure: Some((coefficients, *n)),
        }
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.matrix
    }

    pub fn coefficients(&self) -> Option<KossakowskiCoefficients> {
        self.structure.map(|s| s.0)
    }

    pub fn axis(&self) -> Option<UnitVector> {
        self.structure.map(|s| s.1)
    }

    /// Eigenvalues from a dense Hermitian solver, ascending.
    pub fn dense_eigenvalues(&self) -> [f64; 3] {
        let mut ev: Vec<f64> = self
            .matrix
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2]]
    }

    /// `{A − B, A + B, A + C}` sorted, when the structured form is known.
    pub fn structured_eigenvalues(&self) -> Option<[f64; 3]> {
        self.coefficients().map(|k| {
            let mut ev = [k.a - k.b, k.a + k.b, k.a + k.c];
            ev.sort_by(f64::total_cmp);
            ev
        })
    }
}

pub(crate) fn hermitian_deviation<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

fn anti_hermitian_deviation<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> f64 {
    (m + m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Fourier (`alpha`) and Hilbert (`beta`) transforms of the environment
/// correlations `⟨B_μ(t) B_ν⟩`, one 4×4 matrix per spectral component.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTransforms {
    alpha: [Matrix4<Complex64>; 3],
    beta: [Matrix4<Complex64>; 3],
}

impl CorrelationTransforms {
    /// Order of both arrays is `[ξ = 0, ξ = +, ξ = −]`.
    pub fn new(alpha: [Matrix4<Complex64>; 3], beta: [Matrix4<Complex64>; 3]) -> Result<Self> {
        for (k, m) in alpha.iter().enumerate() {
            let d = hermitian_deviation(m);
            if d > HERMITIAN_TOL * m.norm().max(1.0) {
                return domain(format!("alpha[{k}] is not Hermitian (deviation {d:.3e})"));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite(format!("alpha[{k}]")));
            }
        }
        for (k, m) in beta.iter().enumerate() {
            let d = anti_hermitian_deviation(m);
            if d > HERMITIAN_TOL * m.norm().max(1.0) {
                return domain(format!(
                    "beta[{k}] is not anti-Hermitian (deviation {d:.3e})"
                ));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite(format!("beta[{k}]")));
            }
        }
        Ok(Self { alpha, beta })
    }

    pub fn zero() -> Self {
        Self {
            alpha: [Matrix4::zeros(); 3],
            beta: [Matrix4::zeros(); 3],
        }
    }

    /// Scalar field with unit, diagonal couplings: `α⁽ξ⁾ = G(ξω)·1`, no Hilbert part.
    pub fn scalar_diagonal(omega: f64, beta_u: f64) -> Result<Self> {
        let g = |xi: Xi| {
            fourier_g(xi.sign() * omega, beta_u).map(|v| Matrix4::from_diagonal_element(c(v)))
        };
        Ok(Self {
            alpha: [g(Xi::Zero)?, g(Xi::Plus)?, g(Xi::Minus)?],
            beta: [Matrix4::zeros(); 3],
        })
    }

    pub fn alpha(&self, xi: Xi) -> &Matrix4<Complex64> {
        &self.alpha[xi.index()]
    }

    pub fn beta(&self, xi: Xi) -> &Matrix4<Complex64> {
        &self.beta[xi.index()]
    }
}

/// Output of [`kossakowski_general`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralGenerator {
    pub kossakowski: KossakowskiMatrix,
    /// Hamiltonian correction `H_L = ½ b·σ`, from the supplied (already finite) transforms.
    pub lamb: Vector3<f64>,
    pub positivity: PositivityReport,
}

fn spatial_block(m: &Matrix4<Complex64>) -> Matrix3<Complex64> {
    m.fixed_view::<3, 3>(1, 1).into_owned()
}

/// Assembles `a_ij = Σ_ξ Σ_kl α⁽ξ⁾_kl ψ⁽ξ⁾_ki ψ⁽⁻ξ⁾_lj` and the Lamb vector
/// `b_i` from arbitrary correlation transforms.
pub fn kossakowski_general(
    corr: &CorrelationTransforms,
    n: &UnitVector,
) -> Result<GeneralGenerator> {
    let psi = psi_matrices(n);
    let nv = n.as_vector();

    let mut a = Matrix3::<Complex64>::zeros();
    let mut hilbert = Matrix3::<Complex64>::zeros();
    for xi in Xi::ALL {
        let left = psi.get(xi).transpose();
        let right = psi.get(xi.opposite());
        a += left * spatial_block(corr.alpha(xi)) * right;
        hilbert += left * spatial_block(corr.beta(xi)) * right;
    }

    let alpha0 = corr.alpha(Xi::Zero);
    let beta0 = corr.beta(Xi::Zero);
    let mut lamb = Vector3::<Complex64>::zeros();
    let mut longitudinal = Complex64::new(0.0, 0.0);
    for j in 0..3 {
        longitudinal +=
            (alpha0[(0, j + 1)] - alpha0[(j + 1, 0)] - beta0[(0, j + 1)] - beta0[(j + 1, 0)])
                * nv[j];
    }
    for i in 0..3 {
        let mut transverse = Complex64::new(0.0, 0.0);
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0.0 {
                    transverse += hilbert[(j, k)] * e;
                }
            }
        }
        lamb[i] = I * longitudinal * nv[i] + transverse;
    }
    let imag = lamb.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > 1e-12 * lamb.norm().max(1.0) {
        return Err(Error::NotHermitian { deviation: imag });
    }

    let kossakowski = KossakowskiMatrix::from_matrix(a)?;
    let positivity = check_positivity(&kossakowski)?;
    Ok(GeneralGenerator {
        kossakowski,
        lamb: lamb.map(|z| z.re),
        positivity,
    })
}

fn check_scalar_inputs(omega: f64, beta_u: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return domain(format!("omega must be positive, got {omega}"));
    }
    if !(beta_u > 0.0 && beta_u.is_finite()) {
        return domain(format!("beta_u must be positive, got {beta_u}"));
    }
    Ok(())
}

/// Scalar-field coefficients
/// `A = ½[G(ω)+G(−ω)]`, `B = ½[G(ω)−G(−ω)] = ω/4π`, `C = ½[2G(0)−G(ω)−G(−ω)]`.
pub fn scalar_coefficients(omega: f64, beta_u: f64) -> Result<KossakowskiCoefficients> {
    check_scalar_inputs(omega, beta_u)?;
    let g_plus = fourier_g_unchecked(omega, beta_u);
    let g_minus = fourier_g_unchecked(-omega, beta_u);
    let g_zero = fourier_g_unchecked(0.0, beta_u);
    Ok(KossakowskiCoefficients {
        a: 0.5 * (g_plus + g_minus),
        b: 0.5 * (g_plus - g_minus),
        c: 0.5 * (2.0 * g_zero - g_plus - g_minus),
    })
}

pub fn kossakowski_scalar(omega: f64, beta_u: f64, n: &UnitVector) -> Result<KossakowskiMatrix> {
    Ok(KossakowskiMatrix::from_coefficients(
        scalar_coefficients(omega, beta_u)?,
        n,
    ))
}

/// Small-`β_U` form: `A = 1/(2πβ_U)`, `B = ω/4π`, `C = 0`. Positivity
/// (`B ≤ A`, i.e. `β_U ω ≤ 2`) is no longer automatic and is enforced here.
pub fn kossakowski_large_acceleration(
    omega: f64,
    beta_u: f64,
    n: &UnitVector,
) -> Result<KossakowskiMatrix> {
    check_scalar_inputs(omega, beta_u)?;
    if beta_u * omega > 2.0 * (1.0 + 1e-12) {
        return Err(Error::Positivity(format!(
            "large-acceleration form needs beta_u * omega <= 2, got {}",
            beta_u * omega
        )));
    }
    let coefficients = KossakowskiCoefficients {
        a: 1.0 / (2.0 * PI * beta_u),
        b: omega / (4.0 * PI),
        c: 0.0,
    };
    Ok(KossakowskiMatrix::from_coefficients(coefficients, n))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    /// Ascending.
    pub eigenvalues: [f64; 3],
    pub positive: bool,
}

impl PositivityReport {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Spectrum of `a` with a positivity verdict at [`POSITIVITY_TOL`].
pub fn check_positivity(a: &KossakowskiMatrix) -> Result<PositivityReport> {
    let deviation = hermitian_deviation(a.matrix());
    if deviation > HERMITIAN_TOL * a.matrix().norm().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let eigenvalues = a
        .structured_eigenvalues()
        .unwrap_or_else(|| a.dense_eigenvalues());
    Ok(PositivityReport {
        eigenvalues,
        positive: eigenvalues[0] >= -POSITIVITY_TOL,
    })
}
