//! Open-system dynamics of uniformly accelerated two-level atoms in a scalar
//! vacuum.
//!
//! The crate builds the weak-coupling Kossakowski–Lindblad generators from the
//! field correlations seen along a hyperbolic trajectory, evolves one atom
//! (Bloch vector, closed-form propagator) and two atoms (collective 16×16
//! Liouvillian), and evaluates thermalization and entanglement measures.
//!
//! Units are natural (`ħ = c = k_B = 1`); the inverse Unruh temperature is
//! `β_U = 2π/a`.
//!
//! ```
//! use unruh_core::{asymptotic_state, SingleAtomParams, UnitVector};
//!
//! let p = SingleAtomParams::scalar(1.0, 1.0, UnitVector::z()).unwrap();
//! let r = asymptotic_state(&p).unwrap();
//! assert!((r.as_vector().z + 0.5f64.tanh()).abs() < 1e-14);
//! ```

// negated comparisons double as NaN rejection in input guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
pub mod dissipator;
pub mod error;
pub mod ode;
pub mod qstate;
pub mod quadrature;
pub mod single_atom;
pub mod two_atom;

pub use correlations::{
    fourier_g, fourier_g_numeric, hilbert_k_acc, wightman_along_trajectory, QuadratureConfig,
    TrajectoryParams,
};
pub use dissipator::{
    check_positivity, kossakowski_general, kossakowski_large_acceleration, kossakowski_scalar,
    psi_matrices, scalar_coefficients, CorrelationTransforms, GeneralGenerator,
    KossakowskiCoefficients, KossakowskiMatrix, PositivityReport, UnitVector, Xi,
};
pub use error::{Error, Result};
pub use ode::{expm, integrate, stationary_solve, IntegratorOptions, LinearSystem};
pub use qstate::{
    bloch_decode, bloch_encode, concurrence, gibbs_state, partial_trace, pauli4_decode,
    pauli4_encode, BlochVector, DensityMatrix2, DensityMatrix4, Subsystem, TwoAtomState,
};
pub use single_atom::{
    asymptotic_state, build_bloch_generator, evolve_state, excitation_rate, propagator,
    propagator_closed_form, transition_probability, BlochGenerator, SingleAtomParams,
};
pub use two_atom::{
    asymptotic_concurrence, asymptotic_two_atom, build_collective_liouvillian,
    entanglement_threshold, evolve_two_atom, scenario_product, scenario_werner, CoherenceSign,
    CollectiveLiouvillian, Propagation, StationaryMethod, WernerScenario,
};
