//! Distinguishability measures for quantum states.
//!
//! Everything needed to study symmetric two-state discrimination on dense,
//! finite-dimensional density matrices: the Helstrom minimum error
//! probability, the quantum Chernoff quantity `Q = min_s Tr[ρ^s σ^(1-s)]`
//! and its exponent, trace distance, Uhlmann fidelity, relative entropy,
//! the Hellinger-arc interpolation, the Chernoff metric on state space,
//! n-copy discrimination experiments, CPTP channels for monotonicity
//! experiments, and seeded randomized verifiers for the trace inequalities
//! underpinning all of it.
//!
//! All numerical kernels are generic over the real scalar type through
//! [`scalar::Scalar`]; the `*64` aliases below fix `f64`, which is what the
//! command-line front end and the verification suites use.

pub mod error;
pub mod scalar;

pub mod channels;
pub mod linalg;
pub mod measures;
pub mod multicopy;
pub mod states;

pub use error::{Error, Result};
pub use measures::Extended;
pub use scalar::Scalar;

/// Dense complex matrix over `f64`.
pub type Matrix64 = linalg::ComplexMatrix<f64>;
/// Hermitian operator over `f64`.
pub type Hermitian64 = linalg::HermitianOperator<f64>;
/// Density matrix over `f64`.
pub type Density64 = states::DensityMatrix<f64>;
/// Prior pair over `f64`.
pub type Priors64 = states::PriorPair<f64>;

/// Dense complex matrix over `f32`.
pub type Matrix32 = linalg::ComplexMatrix<f32>;
/// Hermitian operator over `f32`.
pub type Hermitian32 = linalg::HermitianOperator<f32>;
/// Density matrix over `f32`.
pub type Density32 = states::DensityMatrix<f32>;
