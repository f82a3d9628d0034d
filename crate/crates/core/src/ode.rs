//! Oracles for linear constant-coefficient systems `ẋ = G x + d`:
//! matrix exponential, adaptive Runge–Kutta integration and constrained
//! stationary solves. Everything is dense and sized at compile time; the
//! dimensions in use are 3 (Bloch vector) and 16 (two-atom Pauli components).

use nalgebra::{DMatrix, DVector, SMatrix, SVector};

use crate::error::{domain, Error, Result};

/// Default relative tolerance for [`integrate`].
pub const DEFAULT_RTOL: f64 = 1e-10;
/// Default absolute tolerance for [`integrate`].
pub const DEFAULT_ATOL: f64 = 1e-12;

/// `ẋ = generator · x + drive`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<const N: usize> {
    pub generator: SMatrix<f64, N, N>,
    pub drive: SVector<f64, N>,
}

impl<const N: usize> LinearSystem<N> {
    pub fn new(generator: SMatrix<f64, N, N>, drive: SVector<f64, N>) -> Result<Self> {
        if generator.iter().chain(drive.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("linear system entries".into()));
        }
        Ok(Self { generator, drive })
    }

    pub fn homogeneous(generator: SMatrix<f64, N, N>) -> Result<Self> {
        Self::new(generator, SVector::zeros())
    }

    #[inline]
    fn rhs(&self, x: &SVector<f64, N>) -> SVector<f64, N> {
        self.generator * x + self.drive
    }
}

// ---------------------------------------------------------------------------
// Matrix exponential

const THETA: [(usize, f64); 4] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
];
const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn norm1<const N: usize>(m: &SMatrix<f64, N, N>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `a · x = b` by Gaussian elimination with partial pivoting.
fn solve_square<const N: usize>(
    mut a: SMatrix<f64, N, N>,
    mut b: SMatrix<f64, N, N>,
) -> Result<SMatrix<f64, N, N>> {
    for col in 0..N {
        let (pivot, max) = (col..N)
            .map(|r| (r, a[(r, col)].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty pivot range");
        if max == 0.0 || !max.is_finite() {
            return Err(Error::SingularGenerator);
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            b.swap_rows(pivot, col);
        }
        let inv = 1.0 / a[(col, col)];
        for r in col + 1..N {
            let factor = a[(r, col)] * inv;
            if factor != 0.0 {
                for k in col..N {
                    a[(r, k)] -= factor * a[(col, k)];
                }
                for k in 0..N {
                    b[(r, k)] -= factor * b[(col, k)];
                }
            }
        }
    }
    for col in (0..N).rev() {
        let inv = 1.0 / a[(col, col)];
        for k in 0..N {
            b[(col, k)] *= inv;
        }
        for r in 0..col {
            let factor = a[(r, col)];
            if factor != 0.0 {
                for k in 0..N {
                    b[(r, k)] -= factor * b[(col, k)];
                }
            }
        }
    }
    Ok(b)
}

fn pade_low<const N: usize>(
    a: &SMatrix<f64, N, N>,
    coeffs: &[f64],
) -> (SMatrix<f64, N, N>, SMatrix<f64, N, N>) {
    let ident = SMatrix::<f64, N, N>::identity();
    let a2 = a * a;
    let mut power = ident;
    let mut u = ident * coeffs[1];
    let mut v = ident * coeffs[0];
    for k in 1..coeffs.len() / 2 {
        power *= a2;
        v += power * coeffs[2 * k];
        u += power * coeffs[2 * k + 1];
    }
    (a * u, v)
}

fn pade_13<const N: usize>(a: &SMatrix<f64, N, N>) -> (SMatrix<f64, N, N>, SMatrix<f64, N, N>) {
    let b = &PADE_13;
    let ident = SMatrix::<f64, N, N>::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u_inner = a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9])
        + a6 * b[7]
        + a4 * b[5]
        + a2 * b[3]
        + ident * b[1];
    let u = a * u_inner;
    let v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8])
        + a6 * b[6]
        + a4 * b[4]
        + a2 * b[2]
        + ident * b[0];
    (u, v)
}

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.
pub fn expm<const N: usize>(g: &SMatrix<f64, N, N>) -> Result<SMatrix<f64, N, N>> {
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("expm input".into()));
    }
    let norm = norm1(g);
    for &(m, theta) in &THETA {
        if norm <= theta {
            let (u, v) = match m {
                3 => pade_low(g, &PADE_3),
                5 => pade_low(g, &PADE_5),
                7 => pade_low(g, &PADE_7),
                _ => pade_low(g, &PADE_9),
            };
            return solve_square(v - u, v + u);
        }
    }
    let squarings = (norm / THETA_13).log2().ceil().max(0.0) as i32;
    if squarings > 1000 {
        return Err(Error::NonFinite(format!("expm norm {norm:.3e} too large")));
    }
    let scaled = g / 2f64.powi(squarings);
    let (u, v) = pade_13(&scaled);
    let mut r = solve_square(v - u, v + u)?;
    for _ in 0..squarings {
        r = r * r;
    }
    if r.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("expm overflow (norm {norm:.3e})")));
    }
    Ok(r)
}

/// Exact solution of `ẋ = G x + d` at time `t` via the augmented
/// exponential of `[[G, d], [0, 0]]`.
pub fn propagate_exact<const N: usize>(
    sys: &LinearSystem<N>,
    x0: &SVector<f64, N>,
    t: f64,
) -> Result<SVector<f64, N>> {
    if !(t >= 0.0) {
        return domain(format!("time must be non-negative, got {t}"));
    }
    let gt = sys.generator * t;
    let phi = expm(&gt)?;
    if sys.drive.iter().all(|&v| v == 0.0) {
        return Ok(phi * x0);
    }
    // x(t) = e^{Gt} x0 + ∫₀ᵗ e^{Gs} ds d, the integral read off a 2N block exponential.
    let mut big = DMatrix::<f64>::zeros(2 * N, 2 * N);
    big.view_mut((0, 0), (N, N)).copy_from(&gt);
    big.view_mut((0, N), (N, N))
        .copy_from(&(SMatrix::<f64, N, N>::identity() * t));
    let e = expm_dynamic(&big)?;
    let integral: SMatrix<f64, N, N> = e.fixed_view::<N, N>(0, N).into_owned();
    Ok(phi * x0 + integral * sys.drive)
}

fn expm_dynamic(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    // Only used for the 2N augmented block; dispatch onto the fixed-size kernel.
    macro_rules! fixed {
        ($n:literal) => {{
            let s = SMatrix::<f64, $n, $n>::from_column_slice(m.as_slice());
            let e = expm(&s)?;
            Ok(DMatrix::from_column_slice($n, $n, e.as_slice()))
        }};
    }
    match m.nrows() {
        2 => fixed!(2),
        4 => fixed!(4),
        6 => fixed!(6),
        32 => fixed!(32),
        n => Err(Error::Shape(format!(
            "no fixed-size exponential kernel for dimension {n}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Dormand–Prince 5(4)

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rtol: DEFAULT_RTOL,
            atol: DEFAULT_ATOL,
            max_steps: 200_000,
        }
    }
}

impl IntegratorOptions {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const N: usize> {
    pub state: SVector<f64, N>,
    pub accepted: usize,
    pub rejected: usize,
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth minus embedded fourth order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
const PI_BETA: f64 = 0.04;
const PI_ALPHA: f64 = 0.2 - 0.75 * PI_BETA;

fn error_norm<const N: usize>(
    err: &SVector<f64, N>,
    x: &SVector<f64, N>,
    x_new: &SVector<f64, N>,
    opts: &IntegratorOptions,
) -> f64 {
    let sum: f64 = (0..N)
        .map(|i| {
            let scale = opts.atol + opts.rtol * x[i].abs().max(x_new[i].abs());
            (err[i] / scale).powi(2)
        })
        .sum();
    (sum / N as f64).sqrt()
}

/// Integrates `sys` from `x0` over `[0, t]` with an embedded Dormand–Prince
/// 5(4) pair and a PI step-size controller.
pub fn integrate<const N: usize>(
    sys: &LinearSystem<N>,
    x0: &SVector<f64, N>,
    t: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory<N>> {
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return domain("integrator tolerances must be positive");
    }
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!(
            "integration time must be finite and non-negative, got {t}"
        ));
    }
    let mut x = *x0;
    let mut out = Trajectory {
        state: x,
        accepted: 0,
        rejected: 0,
    };
    if t == 0.0 {
        return Ok(out);
    }

    let mut k1 = sys.rhs(&x);
    let mut h = {
        let scale = |v: &SVector<f64, N>| {
            let s: f64 = (0..N)
                .map(|i| (v[i] / (opts.atol + opts.rtol * x[i].abs())).powi(2))
                .sum();
            (s / N as f64).sqrt()
        };
        let (d0, d1) = (scale(&x), scale(&k1));
        let guess = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        guess.min(t)
    };
    let mut time = 0.0;
    let mut previous_error = 1e-4_f64;

    while time < t {
        if out.accepted + out.rejected >= opts.max_steps {
            return Err(Error::MaxStepsExceeded(opts.max_steps));
        }
        if h < 1e-14 * t.max(1.0) {
            return Err(Error::StepSizeUnderflow { t: time });
        }
        let last = time + h >= t;
        if last {
            h = t - time;
        }

        let k2 = sys.rhs(&(x + k1 * (h * A21)));
        let k3 = sys.rhs(&(x + (k1 * A31 + k2 * A32) * h));
        let k4 = sys.rhs(&(x + (k1 * A41 + k2 * A42 + k3 * A43) * h));
        let k5 = sys.rhs(&(x + (k1 * A51 + k2 * A52 + k3 * A53 + k4 * A54) * h));
        let k6 = sys.rhs(&(x + (k1 * A61 + k2 * A62 + k3 * A63 + k4 * A64 + k5 * A65) * h));
        let x_new = x + (k1 * B1 + k3 * B3 + k4 * B4 + k5 * B5 + k6 * B6) * h;
        let k7 = sys.rhs(&x_new);
        let err = (k1 * E1 + k3 * E3 + k4 * E4 + k5 * E5 + k6 * E6 + k7 * E7) * h;
        let en = error_norm(&err, &x, &x_new, opts);

        if en <= 1.0 {
            time = if last { t } else { time + h };
            x = x_new;
            k1 = k7;
            out.accepted += 1;
            let factor = if en == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * en.powf(-PI_ALPHA) * previous_error.powf(PI_BETA))
                    .clamp(MIN_FACTOR, MAX_FACTOR)
            };
            previous_error = en.max(1e-4);
            h *= factor;
        } else {
            out.rejected += 1;
            h *= (SAFETY * en.powf(-PI_ALPHA)).max(MIN_FACTOR);
        }
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite(format!("integrator state at t = {time}")));
        }
    }
    out.state = x;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Stationary states

/// A stationary point with its residual `‖G x + d‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stationary<const N: usize> {
    pub x: SVector<f64, N>,
    pub residual: f64,
    pub rank: usize,
}

/// Solves `G x + d = 0` together with the affine constraints `cᵀ x = value`
/// in the least-squares sense, requiring the stacked system to have full
/// column rank.
pub fn stationary_solve<const N: usize>(
    sys: &LinearSystem<N>,
    constraints: &[(SVector<f64, N>, f64)],
) -> Result<Stationary<N>> {
    let rows = N + constraints.len();
    let mut m = DMatrix::<f64>::zeros(rows, N);
    let mut rhs = DVector::<f64>::zeros(rows);
    m.view_mut((0, 0), (N, N)).copy_from(&sys.generator);
    rhs.rows_mut(0, N).copy_from(&(-sys.drive));
    for (k, (c, value)) in constraints.iter().enumerate() {
        m.row_mut(N + k).copy_from(&c.transpose());
        rhs[N + k] = *value;
    }
    // rank from the singular values; the solve itself uses Householder QR,
    // which is backward stable where the SVD back-substitution is not
    let sv = m.singular_values();
    let smax = sv.max();
    let cutoff = 1e-10 * smax.max(f64::MIN_POSITIVE);
    let rank = sv.iter().filter(|&&s| s > cutoff).count();
    if rank < N {
        return Err(Error::RankDeficient { rank, needed: N });
    }
    let qr = m.clone().qr();
    let (q, r) = (qr.q(), qr.r());
    let solve = |b: &DVector<f64>| -> Result<DVector<f64>> {
        r.solve_upper_triangular(&(q.transpose() * b))
            .ok_or(Error::RankDeficient { rank, needed: N })
    };
    let mut sol = solve(&rhs)?;
    let correction = solve(&(&rhs - &m * &sol))?;
    sol += correction;
    let x = SVector::<f64, N>::from_column_slice(sol.as_slice());
    let residual = (sys.generator * x + sys.drive).norm();
    let constraint_residual = constraints
        .iter()
        .map(|(c, v)| (c.dot(&x) - v).abs())
        .fold(0.0, f64::max);
    let scale = sys.generator.amax().max(sys.drive.amax()).max(1.0);
    if residual > 1e-10 * scale || constraint_residual > 1e-10 * scale {
        return Err(Error::Residual(residual.max(constraint_residual)));
    }
    Ok(Stationary { x, residual, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Matrix2, Matrix3, SMatrix, Vector1, Vector2, Vector3};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn taylor_expm<const N: usize>(g: &SMatrix<f64, N, N>) -> SMatrix<f64, N, N> {
        // independent reference for small norms: truncated series
        let mut term = SMatrix::<f64, N, N>::identity();
        let mut sum = term;
        for k in 1..60 {
            term = term * g / k as f64;
            sum += term;
        }
        sum
    }

    #[test]
    fn expm_of_zero_is_identity() {
        assert_eq!(expm(&Matrix3::<f64>::zeros()).unwrap(), Matrix3::identity());
    }

    #[test]
    fn expm_diagonal() {
        let d = Vector3::new(-3.0, 0.5, 12.0);
        let e = expm(&Matrix3::from_diagonal(&d)).unwrap();
        for i in 0..3 {
            assert!((e[(i, i)] - d[i].exp()).abs() < 1e-12 * d[i].exp());
        }
        assert!(e[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn expm_rotation() {
        let theta = 2.3;
        let g = Matrix2::new(0.0, -theta, theta, 0.0);
        let e = expm(&g).unwrap();
        let r = Matrix2::new(theta.cos(), -theta.sin(), theta.sin(), theta.cos());
        assert!((e - r).amax() < 1e-14);
    }

    #[test]
    fn expm_every_pade_degree_matches_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &scale in &[0.005, 0.1, 0.5, 1.5, 4.0] {
            let raw = SMatrix::<f64, 4, 4>::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let g = raw * (scale / norm1(&raw));
            let e = expm(&g).unwrap();
            let t = taylor_expm(&g);
            assert!((e - t).amax() < 1e-13 * t.amax(), "norm {scale}");
        }
    }

    #[test]
    fn expm_inverse_and_non_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let g = SMatrix::<f64, 16, 16>::from_fn(|_, _| rng.random_range(-2.0..2.0));
        let prod = expm(&g).unwrap() * expm(&(-g)).unwrap();
        assert!((prod - SMatrix::<f64, 16, 16>::identity()).amax() < 1e-9);
        let mut bad = Matrix3::<f64>::zeros();
        bad[(0, 0)] = f64::NAN;
        assert!(expm(&bad).is_err());
    }

    proptest! {
        #[test]
        fn expm_semigroup(t in 0.0f64..3.0, s in 0.0f64..3.0, seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Matrix3::<f64>::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let lhs = expm(&(g * (t + s))).unwrap();
            let rhs = expm(&(g * t)).unwrap() * expm(&(g * s)).unwrap();
            prop_assert!((lhs - rhs).amax() < 1e-10 * lhs.amax().max(1.0));
        }
    }

    #[test]
    fn integrate_trivial_and_zero_time() {
        let sys = LinearSystem::homogeneous(Matrix3::<f64>::zeros()).unwrap();
        let x0 = Vector3::new(0.1, -0.2, 0.3);
        let out = integrate(&sys, &x0, 5.0, &IntegratorOptions::default()).unwrap();
        assert_eq!(out.state, x0);
        let sys = LinearSystem::homogeneous(Matrix3::<f64>::identity() * -1.0).unwrap();
        assert_eq!(
            integrate(&sys, &x0, 0.0, &IntegratorOptions::default())
                .unwrap()
                .state,
            x0
        );
    }

    #[test]
    fn integrate_scalar_decay() {
        let sys = LinearSystem::<1>::homogeneous(SMatrix::<f64, 1, 1>::new(-1.0)).unwrap();
        let opts = IntegratorOptions::default();
        let out = integrate(&sys, &Vector1::new(1.0), 1.0, &opts).unwrap();
        let exact = (-1.0f64).exp();
        assert!((out.state[0] - exact).abs() < 10.0 * opts.rtol * exact);
    }

    #[test]
    fn integrate_matches_exact_propagation_with_drive() {
        let g = Matrix2::new(-0.5, 2.0, -2.0, -0.7);
        let sys = LinearSystem::new(g, Vector2::new(0.3, -0.1)).unwrap();
        let x0 = Vector2::new(1.0, 0.0);
        let numeric = integrate(&sys, &x0, 4.0, &IntegratorOptions::default())
            .unwrap()
            .state;
        let exact = propagate_exact(&sys, &x0, 4.0).unwrap();
        assert!((numeric - exact).amax() < 1e-9);
    }

    #[test]
    fn integrator_error_tracks_tolerance() {
        let g = Matrix3::new(-1.0, 3.0, 0.0, -3.0, -1.0, 0.0, 0.0, 0.0, -0.5);
        let sys = LinearSystem::homogeneous(g).unwrap();
        let x0 = Vector3::new(1.0, 0.5, -0.3);
        let exact = expm(&(g * 3.0)).unwrap() * x0;
        let errs: Vec<f64> = [1e-5, 1e-7, 1e-9]
            .iter()
            .map(|&tol| {
                let opts = IntegratorOptions::with_tolerances(tol, tol * 1e-2);
                (integrate(&sys, &x0, 3.0, &opts).unwrap().state - exact).amax()
            })
            .collect();
        // tighter tolerance → smaller error, roughly proportionally (order-5 method)
        assert!(
            errs[1] < errs[0] / 10.0 && errs[2] < errs[1] / 10.0,
            "{errs:?}"
        );
        assert!(errs[2] < 1e-8);
    }

    #[test]
    fn integrator_limits() {
        let sys = LinearSystem::homogeneous(Matrix3::<f64>::identity() * -1.0).unwrap();
        let x0 = Vector3::new(1.0, 1.0, 1.0);
        let opts = IntegratorOptions {
            max_steps: 3,
            ..IntegratorOptions::default()
        };
        assert!(matches!(
            integrate(&sys, &x0, 100.0, &opts),
            Err(Error::MaxStepsExceeded(3))
        ));
        let bad = IntegratorOptions::with_tolerances(0.0, 1e-12);
        assert!(integrate(&sys, &x0, 1.0, &bad).is_err());
    }

    #[test]
    fn stationary_identity_case() {
        let v = Vector3::new(0.2, -1.0, 4.0);
        let sys = LinearSystem::new(-Matrix3::<f64>::identity(), v).unwrap();
        let s = stationary_solve(&sys, &[]).unwrap();
        assert!((s.x - v).amax() < 1e-14);
        assert!(s.residual < 1e-14);
    }

    #[test]
    fn stationary_with_constraint_selects_kernel_member() {
        // Kernel of G is span{(1, 1, 0)}; the constraint x0 + x1 = 2 picks (1, 1, 0).
        let g = Matrix3::new(-1.0, 1.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, -2.0);
        let sys = LinearSystem::homogeneous(g).unwrap();
        assert!(matches!(
            stationary_solve(&sys, &[]),
            Err(Error::RankDeficient { rank: 2, needed: 3 })
        ));
        let s = stationary_solve(&sys, &[(Vector3::new(1.0, 1.0, 0.0), 2.0)]).unwrap();
        assert!((s.x - Vector3::new(1.0, 1.0, 0.0)).amax() < 1e-14);
    }

    #[test]
    fn inconsistent_constraints_are_reported() {
        let sys =
            LinearSystem::new(-Matrix3::<f64>::identity(), Vector3::new(1.0, 0.0, 0.0)).unwrap();
        let r = stationary_solve(&sys, &[(Vector3::new(1.0, 0.0, 0.0), 5.0)]);
        assert!(matches!(r, Err(Error::Residual(_))));
    }
}
