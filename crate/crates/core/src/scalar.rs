//! Real scalar abstraction underlying all complex matrices.
//!
//! Every numerical kernel in this crate is generic over the floating-point
//! type through [`Scalar`], so the same code runs in `f32` or `f64`.
//! Validation thresholds are associated constants because they must track
//! the precision of the scalar actually in use.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, NumAssign};

/// Real floating-point scalar (`f32` or `f64`).
pub trait Scalar:
    Float + NumAssign + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Relative tolerance for accepting nearly-Hermitian input: a matrix `M`
    /// passes if `max|M - M†| <= HERMITICITY_TOL * max(1, max|M|)`. Accepted
    /// matrices are symmetrized before use.
    const HERMITICITY_TOL: Self;

    /// Eigenvalues within `CLIP_REL * lambda_max` of zero are treated as
    /// exact zeros by positive-semidefinite operations (fractional powers,
    /// support projectors); anything below the negative of that band is a
    /// positivity violation.
    const CLIP_REL: Self;

    /// General validation tolerance: unit trace, Kraus completeness,
    /// imaginary residues of quantities that must be real, support checks.
    const VALIDATE_TOL: Self;

    /// Tight tolerance: prior normalization, tracelessness of perturbations,
    /// flat-minimum detection in the 1-D minimizer.
    const TIGHT_TOL: Self;

    /// Quantities at or below this floor are treated as exact zeros when a
    /// logarithm would otherwise be taken (e.g. the Chernoff exponent of
    /// orthogonal states).
    const POSITIVITY_FLOOR: Self;

    /// Bracket width at which the golden-section minimizer stops.
    const BRACKET_TOL: Self;
}

impl Scalar for f64 {
    const HERMITICITY_TOL: f64 = 1e-10;
    const CLIP_REL: f64 = 1e-12;
    const VALIDATE_TOL: f64 = 1e-10;
    const TIGHT_TOL: f64 = 1e-12;
    const POSITIVITY_FLOOR: f64 = 1e-300;
    const BRACKET_TOL: f64 = 1e-10;
}

impl Scalar for f32 {
    const HERMITICITY_TOL: f32 = 1e-4;
    const CLIP_REL: f32 = 1e-6;
    const VALIDATE_TOL: f32 = 1e-4;
    const TIGHT_TOL: f32 = 1e-6;
    const POSITIVITY_FLOOR: f32 = 1e-30;
    const BRACKET_TOL: f32 = 1e-6;
}

/// Converts an `f64` constant into the scalar type in use.
#[inline]
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from(x).expect("constant representable in scalar type")
}
