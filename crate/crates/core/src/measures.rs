//! Scalar distinguishability measures between quantum states.
//!
//! The central quantity is `q_s(ρ, σ, s) = Tr[ρ^s σ^(1-s)]`, whose minimum
//! over `s ∈ [0,1]` is the quantum Chernoff quantity `Q`; `-ln Q` is the
//! asymptotic decay exponent of the optimal discrimination error. Around it
//! live the Helstrom minimum error, trace distance, Uhlmann fidelity,
//! relative entropy, the Hellinger-arc interpolation `τ_s`, the classical
//! Chernoff bound, and the metric that `1 - Q` induces between
//! infinitesimally close states.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{frac_power, scalar_frac_power, trace_norm, HermitianOperator};
use crate::scalar::{real, Scalar};
use crate::states::{ClassicalDistribution, DensityMatrix, Perturbation, PriorPair};

/// Extended nonnegative real: a finite value or an explicit infinity.
/// Orthogonal states have an infinite Chernoff exponent, and relative
/// entropy diverges on support violations; both must be representable
/// states, not sentinel floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Extended<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            Extended::Finite(v) => Some(*v),
            Extended::Infinite => None,
        }
    }
}

impl<T: Scalar> std::fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "infinite"),
        }
    }
}

impl<T: Serialize> Serialize for Extended<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => v.serialize(s),
            Extended::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Outcome of minimizing `q_s` over `s ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffResult<T> {
    /// Minimizing `s` (0.5 when the curve is flat).
    pub s_star: T,
    /// `Q = min_s q_s`, clamped into [0, 1].
    pub q_value: T,
    /// `-ln Q`, infinite when `Q` is numerically zero.
    pub exponent: Extended<T>,
    /// Set when `q_s` is constant over the whole interval within tolerance
    /// (e.g. identical or orthogonal states); `s_star` is then reported as
    /// the symmetric tie-break 0.5.
    pub flat_minimum: bool,
    /// Number of `q_s` evaluations spent by the minimizer.
    pub evaluations: usize,
}

/// Optimal single-copy discrimination: minimum error probability and the
/// projector implementing the optimal measurement.
#[derive(Debug, Clone)]
pub struct HelstromResult<T> {
    /// `(1 - ||π₁ρ₁ - π₀ρ₀||₁) / 2`.
    pub p_error: T,
    /// Projector onto the range of the positive part of `π₁ρ₁ - π₀ρ₀`;
    /// outcome 1 of the optimal two-outcome measurement.
    pub e1: HermitianOperator<T>,
}

impl<T: Scalar> HelstromResult<T> {
    /// Rank of the measurement projector.
    pub fn e1_rank(&self) -> usize {
        let tr = self.e1.trace_re();
        tr.round().to_f64().unwrap_or(0.0) as usize
    }
}

/// One point of the Hellinger arc `τ_s = ρ^s σ^(1-s) / Tr[ρ^s σ^(1-s)]`.
#[derive(Debug, Clone)]
pub struct HellingerArcPoint<T> {
    pub s: T,
    /// Spectrum of `τ_s` (ascending, normalized to unit sum). `τ_s` is not
    /// Hermitian, but it is similar to the Hermitian matrix
    /// `ρ^(s/2) σ^(1-s) ρ^(s/2)`, which shares its (positive) spectrum.
    pub spectrum: Vec<T>,
    /// `S(τ_s ‖ ρ)`.
    pub rel_ent_to_rho: T,
    /// `S(τ_s ‖ σ)`.
    pub rel_ent_to_sigma: T,
}

fn check_same_dim<T: Scalar>(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Helstrom measurement
// ---------------------------------------------------------------------------

/// Minimum-error discrimination of `rho0` vs `rho1` with the given priors.
pub fn helstrom<T: Scalar>(
    rho0: &DensityMatrix<T>,
    rho1: &DensityMatrix<T>,
    priors: PriorPair<T>,
) -> Result<HelstromResult<T>> {
    check_same_dim(rho0, rho1)?;
    let gamma = rho1
        .operator()
        .scale_re(priors.pi1())
        .sub(&rho0.operator().scale_re(priors.pi0()));
    let dec = gamma.eig()?;
    let tn: T = dec.eigenvalues().iter().map(|v| v.abs()).sum();
    let clip = dec.clip_threshold();
    let e1 = dec.map(|lam| if lam > clip { T::one() } else { T::zero() });
    let half = real::<T>(0.5);
    let p_error = ((T::one() - tn) * half).max(T::zero());

    // Achievability: the projector attains the bound.
    debug_assert!(
        (priors.pi1() - e1.matrix().trace_product(gamma.matrix()).re - p_error).abs()
            < T::VALIDATE_TOL,
        "Helstrom achievability identity violated"
    );
    Ok(HelstromResult { p_error, e1 })
}

// ---------------------------------------------------------------------------
// q_s and the Chernoff minimization
// ---------------------------------------------------------------------------

/// `Tr[ρ^s σ^(1-s)]` via explicit fractional powers. The trace must be real
/// up to tolerance; its real part is returned, clamped nonnegative.
pub fn q_s<T: Scalar>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>, s: T) -> Result<T> {
    check_same_dim(rho, sigma)?;
    let a = frac_power(rho.operator(), s)?;
    let b = frac_power(sigma.operator(), T::one() - s)?;
    let t = a.matrix().trace_product(b.matrix());
    if t.im.abs() > T::VALIDATE_TOL {
        return Err(Error::NumericalConsistency {
            what: "imaginary residue of Tr[rho^s sigma^(1-s)]",
            residual: t.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(t.re.max(T::zero()))
}

/// Eigendecompositions of a PSD pair plus their eigenvector overlaps.
/// Evaluating `Tr[A^s B^(1-s)] = Σ_ij a_i^s b_j^(1-s) |⟨u_i|v_j⟩|²` then
/// costs O(d²) per `s`, with the same clipping and endpoint conventions as
/// [`frac_power`].
pub(crate) struct PowerBasis<T> {
    a_vals: Vec<T>,
    b_vals: Vec<T>,
    clip_a: T,
    clip_b: T,
    /// `weights[i*dim + j] = |⟨u_i|v_j⟩|²`
    weights: Vec<T>,
    dim: usize,
}

impl<T: Scalar> PowerBasis<T> {
    pub fn new(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
        }
        let dim = a.dim();
        let dec_a = a.eig()?;
        let dec_b = b.eig()?;
        for dec in [&dec_a, &dec_b] {
            if dec.min_eigenvalue() < -dec.clip_threshold() {
                return Err(Error::NotPositive {
                    min_eigenvalue: dec.min_eigenvalue().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let cross = dec_a.eigenvectors().dagger().matmul(dec_b.eigenvectors());
        let weights = cross.entries().iter().map(|z| z.norm_sqr()).collect();
        Ok(Self {
            a_vals: dec_a.eigenvalues().to_vec(),
            b_vals: dec_b.eigenvalues().to_vec(),
            clip_a: dec_a.clip_threshold(),
            clip_b: dec_b.clip_threshold(),
            weights,
            dim,
        })
    }

    /// `Tr[A^s B^(1-s)]`; always nonnegative by construction.
    pub fn q(&self, s: T) -> T {
        let one_minus = T::one() - s;
        let fb: Vec<T> = self
            .b_vals
            .iter()
            .map(|&b| scalar_frac_power(b, one_minus, self.clip_b))
            .collect();
        let mut total = T::zero();
        for (i, &a) in self.a_vals.iter().enumerate() {
            let fa = scalar_frac_power(a, s, self.clip_a);
            if fa == T::zero() {
                continue;
            }
            let row = &self.weights[i * self.dim..(i + 1) * self.dim];
            let mut acc = T::zero();
            for (w, f) in row.iter().zip(fb.iter()) {
                acc += *w * *f;
            }
            total += fa * acc;
        }
        total
    }

    pub fn trace_a(&self) -> T {
        self.a_vals.iter().copied().sum()
    }

    pub fn trace_b(&self) -> T {
        self.b_vals.iter().copied().sum()
    }
}

/// Result of the shared 1-D minimization.
pub(crate) struct MinimumSearch<T> {
    pub s_star: T,
    pub value: T,
    pub flat: bool,
    pub evaluations: usize,
}

/// Golden-section bracketing over [0, 1], valid for the convex `q_s` curve.
/// Endpoints are evaluated explicitly (they use the support-projector
/// convention and the minimum is over the closed interval). A curve that is
/// constant within tolerance over the whole interval reports the symmetric
/// tie-break `s = 0.5` with the flat flag set.
pub(crate) fn minimize_convex_unit<T: Scalar>(f: impl Fn(T) -> T) -> MinimumSearch<T> {
    const MAX_EVALS: usize = 200;
    let inv_phi = real::<T>(0.618_033_988_749_894_9);
    let half = real::<T>(0.5);

    let mut evaluations = 0usize;
    let mut seen_min = T::infinity();
    let mut seen_max = T::neg_infinity();
    let mut best_interior = (half, T::infinity());

    let eval = |x: T, evaluations: &mut usize, seen_min: &mut T, seen_max: &mut T| {
        *evaluations += 1;
        let v = f(x);
        if v < *seen_min {
            *seen_min = v;
        }
        if v > *seen_max {
            *seen_max = v;
        }
        v
    };

    let f_at_0 = eval(T::zero(), &mut evaluations, &mut seen_min, &mut seen_max);
    let f_at_1 = eval(T::one(), &mut evaluations, &mut seen_min, &mut seen_max);

    let mut a = T::zero();
    let mut b = T::one();
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = eval(x1, &mut evaluations, &mut seen_min, &mut seen_max);
    let mut f2 = eval(x2, &mut evaluations, &mut seen_min, &mut seen_max);

    while (b - a) > T::BRACKET_TOL && evaluations < MAX_EVALS {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1, &mut evaluations, &mut seen_min, &mut seen_max);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2, &mut evaluations, &mut seen_min, &mut seen_max);
        }
        let (xc, fc) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
        if fc < best_interior.1 {
            best_interior = (xc, fc);
        }
    }
    if f1 < best_interior.1 {
        best_interior = (x1, f1);
    }
    if f2 < best_interior.1 {
        best_interior = (x2, f2);
    }

    if seen_max - seen_min <= T::TIGHT_TOL {
        evaluations += 1;
        return MinimumSearch { s_star: half, value: f(half), flat: true, evaluations };
    }

    // Endpoints win ties so boundary minima are reported exactly.
    let mut s_star = T::zero();
    let mut value = f_at_0;
    if f_at_1 < value {
        s_star = T::one();
        value = f_at_1;
    }
    if best_interior.1 < value {
        s_star = best_interior.0;
        value = best_interior.1;
    }
    MinimumSearch { s_star, value, flat: false, evaluations }
}

fn chernoff_from_search<T: Scalar>(search: MinimumSearch<T>) -> ChernoffResult<T> {
    let q_value = search.value.max(T::zero()).min(T::one());
    let exponent = if q_value <= T::POSITIVITY_FLOOR {
        Extended::Infinite
    } else {
        Extended::Finite((-q_value.ln()).max(T::zero()))
    };
    ChernoffResult {
        s_star: search.s_star,
        q_value,
        exponent,
        flat_minimum: search.flat,
        evaluations: search.evaluations,
    }
}

/// Quantum Chernoff quantity `Q = min_s Tr[ρ^s σ^(1-s)]` and exponent.
pub fn chernoff<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<ChernoffResult<T>> {
    check_same_dim(rho, sigma)?;
    let basis = PowerBasis::new(rho.operator(), sigma.operator())?;
    Ok(chernoff_from_search(minimize_convex_unit(|s| basis.q(s))))
}

/// Classical Chernoff bound: same minimizer applied to
/// `s ↦ Σ_i p₀(i)^s p₁(i)^(1-s)`, with `0^0 = 0` outside the support, the
/// scalar analogue of the support-projector convention.
pub fn classical_chernoff<T: Scalar>(
    p0: &ClassicalDistribution<T>,
    p1: &ClassicalDistribution<T>,
) -> Result<ChernoffResult<T>> {
    if p0.len() != p1.len() {
        return Err(Error::DimensionMismatch { left: p0.len(), right: p1.len() });
    }
    let f = |s: T| {
        let one_minus = T::one() - s;
        p0.probs()
            .iter()
            .zip(p1.probs().iter())
            .map(|(&x, &y)| {
                scalar_frac_power(x, s, T::zero()) * scalar_frac_power(y, one_minus, T::zero())
            })
            .sum()
    };
    Ok(chernoff_from_search(minimize_convex_unit(f)))
}

// ---------------------------------------------------------------------------
// Trace distance, fidelity, relative entropy
// ---------------------------------------------------------------------------

/// `T(ρ, σ) = ||ρ - σ||₁ / 2`.
pub fn trace_distance<T: Scalar>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    check_same_dim(rho, sigma)?;
    let diff = rho.operator().sub(sigma.operator());
    let half = real::<T>(0.5);
    Ok((trace_norm(diff.matrix())? * half).max(T::zero()).min(T::one()))
}

/// Uhlmann fidelity `F = ||ρ^(1/2) σ^(1/2)||₁` (unsquared convention).
/// Debug builds cross-check against `Tr[(ρ^(1/2) σ ρ^(1/2))^(1/2)]`.
pub fn fidelity<T: Scalar>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    check_same_dim(rho, sigma)?;
    let half = real::<T>(0.5);
    let sqrt_rho = frac_power(rho.operator(), half)?;
    let sqrt_sigma = frac_power(sigma.operator(), half)?;
    let f = trace_norm(&sqrt_rho.matrix().matmul(sqrt_sigma.matrix()))?;

    #[cfg(debug_assertions)]
    {
        let inner = HermitianOperator::symmetrize(
            sqrt_rho
                .matrix()
                .matmul(sigma.matrix())
                .matmul(sqrt_rho.matrix()),
        );
        let vals = inner.eigenvalues()?;
        let uhlmann: T = vals
            .into_iter()
            .map(|v| if v > T::zero() { v.sqrt() } else { T::zero() })
            .sum();
        debug_assert!(
            (f - uhlmann).abs() <= real::<T>(1e-9),
            "fidelity routes disagree: {f} vs {uhlmann}"
        );
    }

    Ok(f.max(T::zero()).min(T::one()))
}

/// Quantum relative entropy `S(ρ‖σ) = Tr[ρ ln ρ] - Tr[ρ ln σ]` in nats;
/// infinite when the support of `ρ` leaks outside the support of `σ`.
pub fn relative_entropy<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<Extended<T>> {
    check_same_dim(rho, sigma)?;
    let dec_sigma = sigma.operator().eig()?;
    let clip_sigma = dec_sigma.clip_threshold();
    let support = dec_sigma.map(|lam| if lam > clip_sigma { T::one() } else { T::zero() });
    let leak = T::one() - rho.matrix().trace_product(support.matrix()).re;
    if leak > T::VALIDATE_TOL {
        return Ok(Extended::Infinite);
    }

    let dec_rho = rho.operator().eig()?;
    let clip_rho = dec_rho.clip_threshold();
    let entropy_term: T = dec_rho
        .eigenvalues()
        .iter()
        .filter(|&&lam| lam > clip_rho)
        .map(|&lam| lam * lam.ln())
        .sum();
    let log_sigma = dec_sigma.map(|lam| if lam > clip_sigma { lam.ln() } else { T::zero() });
    let cross_term = rho.matrix().trace_product(log_sigma.matrix()).re;
    Ok(Extended::Finite((entropy_term - cross_term).max(T::zero())))
}

// ---------------------------------------------------------------------------
// Hellinger arc
// ---------------------------------------------------------------------------

/// The interpolating operator `τ_s` and its relative entropies to both
/// endpoints. Requires full-rank states: on rank-deficient input the arc
/// entropies are not well defined.
pub fn hellinger_arc<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    s: T,
) -> Result<HellingerArcPoint<T>> {
    check_same_dim(rho, sigma)?;
    if s < T::zero() || s > T::one() {
        return Err(Error::InvalidArgument(format!(
            "arc parameter must lie in [0, 1], got {}",
            s.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let dec_rho = rho.operator().eig()?;
    let dec_sigma = sigma.operator().eig()?;
    if dec_rho.min_eigenvalue() <= dec_rho.clip_threshold()
        || dec_sigma.min_eigenvalue() <= dec_sigma.clip_threshold()
    {
        return Err(Error::RankDeficient { context: "hellinger_arc" });
    }

    let half = real::<T>(0.5);
    let one_minus = T::one() - s;

    // Spectrum of τ_s from the similar Hermitian matrix ρ^(s/2) σ^(1-s) ρ^(s/2).
    let rho_half_s = dec_rho.map(|lam| lam.powf(s * half));
    let sigma_pow = dec_sigma.map(|lam| lam.powf(one_minus));
    let similar = HermitianOperator::symmetrize(
        rho_half_s
            .matrix()
            .matmul(sigma_pow.matrix())
            .matmul(rho_half_s.matrix()),
    );
    let raw = similar.eigenvalues()?;
    let norm: T = raw.iter().copied().sum();
    let spectrum: Vec<T> = raw
        .iter()
        .map(|&nu| (nu / norm).max(T::zero()))
        .collect();

    // Tr[τ ln τ] from the computed spectrum.
    let tau_entropy: T = spectrum
        .iter()
        .filter(|&&nu| nu > T::POSITIVITY_FLOOR)
        .map(|&nu| nu * nu.ln())
        .sum();

    // Tr[τ_s ln ρ] = Tr[(ρ^s ln ρ) σ^(1-s)] / q, pairing commuting factors so
    // each trace is one of two Hermitian operators.
    let rho_s_log = dec_rho.map(|lam| lam.powf(s) * lam.ln());
    let cross_rho = rho_s_log.matrix().trace_product(sigma_pow.matrix()).re / norm;
    let sigma_pow_log = dec_sigma.map(|lam| lam.powf(one_minus) * lam.ln());
    let rho_s = dec_rho.map(|lam| lam.powf(s));
    let cross_sigma = rho_s.matrix().trace_product(sigma_pow_log.matrix()).re / norm;

    Ok(HellingerArcPoint {
        s,
        spectrum,
        rel_ent_to_rho: tau_entropy - cross_rho,
        rel_ent_to_sigma: tau_entropy - cross_sigma,
    })
}

// ---------------------------------------------------------------------------
// Chernoff metric
// ---------------------------------------------------------------------------

/// Line element `ds² = ½ Σ_ij |⟨i|dρ|j⟩|² / (√λ_i + √λ_j)²` induced by
/// `1 - Q` between `ρ` and `ρ - dρ`, evaluated in the eigenbasis of `ρ`.
/// Rank-deficient `ρ` makes the denominator vanish on kernel blocks.
pub fn chernoff_metric<T: Scalar>(rho: &DensityMatrix<T>, drho: &Perturbation<T>) -> Result<T> {
    if rho.dim() != drho.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: drho.dim() });
    }
    let dec = rho.operator().eig()?;
    if dec.min_eigenvalue() <= dec.clip_threshold() {
        return Err(Error::SingularMetric);
    }
    let u = dec.eigenvectors();
    let d = u.dagger().matmul(drho.operator().matrix()).matmul(u);
    let n = rho.dim();
    let sqrt: Vec<T> = dec.eigenvalues().iter().map(|l| l.sqrt()).collect();
    let mut total = T::zero();
    for i in 0..n {
        for j in 0..n {
            let denom = sqrt[i] + sqrt[j];
            total += d.get(i, j).norm_sqr() / (denom * denom);
        }
    }
    Ok(total * real::<T>(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::states::{random_density, random_perturbation, DensityMatrix, RandomSpec};
    use num_complex::Complex64;

    type M = ComplexMatrix<f64>;
    type D = DensityMatrix<f64>;

    fn diag_state(values: &[f64]) -> D {
        D::from_matrix(M::diag(values)).unwrap()
    }

    fn pure_state(amplitudes: &[Complex64]) -> D {
        let n = amplitudes.len();
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let m = M::from_fn(n, n, |i, j| amplitudes[i] * amplitudes[j].conj() / (norm * norm));
        D::from_matrix(m).unwrap()
    }

    fn mixed_qubit(seed: u64) -> D {
        random_density(RandomSpec::new(seed, 2, 2).unwrap())
    }

    #[test]
    fn helstrom_identical_states() {
        let rho = mixed_qubit(3);
        let priors = PriorPair::new(0.3, 0.7).unwrap();
        let r = helstrom(&rho, &rho, priors).unwrap();
        assert!((r.p_error - 0.3).abs() < 1e-12);
    }

    #[test]
    fn helstrom_orthogonal_pure_states() {
        let zero = pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let one = pure_state(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let r = helstrom(&zero, &one, PriorPair::uniform()).unwrap();
        assert!(r.p_error.abs() < 1e-14);
        assert_eq!(r.e1_rank(), 1);
    }

    #[test]
    fn helstrom_diagonal_example() {
        let rho0 = diag_state(&[0.75, 0.25]);
        let rho1 = diag_state(&[0.25, 0.75]);
        let r = helstrom(&rho0, &rho1, PriorPair::uniform()).unwrap();
        assert!((r.p_error - 0.25).abs() < 1e-12);
        // achievability identity, explicitly
        let gamma = rho1.operator().scale_re(0.5).sub(&rho0.operator().scale_re(0.5));
        let achieved = 0.5 - r.e1.matrix().trace_product(gamma.matrix()).re;
        assert!((achieved - r.p_error).abs() < 1e-10);
    }

    #[test]
    fn q_s_equal_states_is_one() {
        let rho = mixed_qubit(11);
        for s in [0.0, 0.25, 0.5, 0.9, 1.0] {
            assert!((q_s(&rho, &rho, s).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn q_s_commuting_is_bhattacharyya_at_half() {
        let p = diag_state(&[0.9, 0.1]);
        let q = diag_state(&[0.1, 0.9]);
        let expected = (0.9f64 * 0.1).sqrt() + (0.1f64 * 0.9).sqrt();
        assert!((q_s(&p, &q, 0.5).unwrap() - expected).abs() < 1e-12);
    }

    /// Analytic 2x2 Hermitian eigendecomposition, independent of the
    /// Householder/QL solver, for cross-checking q_s.
    fn analytic_eig_2x2(m: &M) -> (Vec<f64>, Vec<[Complex64; 2]>) {
        let a = m.get(0, 0).re;
        let d = m.get(1, 1).re;
        let b = m.get(0, 1);
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let lams = vec![mid - rad, mid + rad];
        let mut vecs = Vec::new();
        for &lam in &lams {
            let v = if b.norm() > 1e-300 {
                [b, Complex64::new(lam - a, 0.0)]
            } else if lam == a {
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
            } else {
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
            };
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            vecs.push([v[0] / norm, v[1] / norm]);
        }
        (lams, vecs)
    }

    #[test]
    fn q_s_matches_independent_eigensolver() {
        for seed in 0..25 {
            let rho = mixed_qubit(seed);
            let sigma = mixed_qubit(seed + 500);
            let s = 0.3;
            let got = q_s(&rho, &sigma, s).unwrap();

            let (la, va) = analytic_eig_2x2(rho.matrix());
            let (lb, vb) = analytic_eig_2x2(sigma.matrix());
            let mut expected = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    let overlap = (va[i][0].conj() * vb[j][0] + va[i][1].conj() * vb[j][1])
                        .norm_sqr();
                    expected += la[i].max(0.0).powf(s) * lb[j].max(0.0).powf(1.0 - s) * overlap;
                }
            }
            assert!(
                (got - expected).abs() < 1e-12,
                "seed {seed}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn chernoff_equal_states() {
        let rho = mixed_qubit(5);
        let r = chernoff(&rho, &rho).unwrap();
        assert!((r.q_value - 1.0).abs() < 1e-12);
        assert_eq!(r.exponent.finite(), Some(0.0));
        assert!(r.flat_minimum);
        assert!((r.s_star - 0.5).abs() < 1e-15);
    }

    #[test]
    fn chernoff_pure_rho_minimizes_at_zero() {
        for seed in 0..10 {
            let psi = random_density(RandomSpec::new(seed, 2, 1).unwrap());
            let sigma = mixed_qubit(seed + 40);
            let r = chernoff(&psi, &sigma).unwrap();
            let expected = psi.matrix().trace_product(sigma.matrix()).re;
            assert!(r.s_star <= 1e-6, "seed {seed}: s* = {}", r.s_star);
            assert!((r.q_value - expected).abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn chernoff_symmetric_classical_pair() {
        let p = diag_state(&[0.9, 0.1]);
        let q = diag_state(&[0.1, 0.9]);
        let r = chernoff(&p, &q).unwrap();
        assert!((r.q_value - 0.6).abs() < 1e-10);
        assert!((r.s_star - 0.5).abs() < 1e-6);
        assert!(!r.flat_minimum);
        assert!(r.evaluations <= 200);
    }

    #[test]
    fn chernoff_orthogonal_states() {
        let zero = pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let one = pure_state(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let r = chernoff(&zero, &one).unwrap();
        assert_eq!(r.q_value, 0.0);
        assert!(r.exponent.is_infinite());
        assert!(r.flat_minimum);
    }

    #[test]
    fn classical_chernoff_cases() {
        let p = ClassicalDistribution::new(vec![0.9f64, 0.1]).unwrap();
        let q = ClassicalDistribution::new(vec![0.1f64, 0.9]).unwrap();
        let r = classical_chernoff(&p, &q).unwrap();
        assert!((r.q_value - 0.6).abs() < 1e-10);
        assert!((r.s_star - 0.5).abs() < 1e-6);

        let same = classical_chernoff(&p, &p).unwrap();
        assert!((same.q_value - 1.0).abs() < 1e-12);
        assert!(same.exponent.finite().unwrap() < 1e-12);

        let a = ClassicalDistribution::new(vec![1.0f64, 0.0]).unwrap();
        let b = ClassicalDistribution::new(vec![0.0f64, 1.0]).unwrap();
        let r = classical_chernoff(&a, &b).unwrap();
        assert_eq!(r.q_value, 0.0);
        assert!(r.exponent.is_infinite());
    }

    #[test]
    fn trace_distance_cases() {
        let rho = mixed_qubit(8);
        assert!(trace_distance(&rho, &rho).unwrap() < 1e-14);

        let zero = pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let one = pure_state(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-14);

        let a = diag_state(&[0.75, 0.25]);
        let b = diag_state(&[0.25, 0.75]);
        assert!((trace_distance(&a, &b).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn fidelity_cases() {
        let rho = mixed_qubit(9);
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-10);

        // pure states: F = |<psi|phi>|
        let psi = pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let phi = pure_state(&[
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        ]);
        assert!((fidelity(&psi, &phi).unwrap() - 0.6).abs() < 1e-10);

        // commuting states: Bhattacharyya coefficient
        let p = diag_state(&[0.9, 0.1]);
        let q = diag_state(&[0.1, 0.9]);
        assert!((fidelity(&p, &q).unwrap() - 0.6).abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_cases() {
        let rho = mixed_qubit(10);
        assert_eq!(
            relative_entropy(&rho, &rho).unwrap().finite().map(|v| v < 1e-9),
            Some(true)
        );

        // support violation
        let psi = pure_state(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let sigma = diag_state(&[1.0, 0.0]);
        assert!(relative_entropy(&psi, &sigma).unwrap().is_infinite());

        // diagonal case: classical KL divergence
        let p = diag_state(&[0.7, 0.3]);
        let q = diag_state(&[0.4, 0.6]);
        let expected = 0.7 * (0.7f64 / 0.4).ln() + 0.3 * (0.3f64 / 0.6).ln();
        let got = relative_entropy(&p, &q).unwrap().finite().unwrap();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn hellinger_arc_equal_states() {
        let rho = mixed_qubit(12);
        let point = hellinger_arc(&rho, &rho, 0.37).unwrap();
        let mut eigs = rho.operator().eigenvalues().unwrap();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (nu, lam) in point.spectrum.iter().zip(eigs.iter()) {
            assert!((nu - lam).abs() < 1e-10);
        }
        assert!(point.rel_ent_to_rho.abs() < 1e-9);
        assert!(point.rel_ent_to_sigma.abs() < 1e-9);
    }

    #[test]
    fn hellinger_arc_commuting_case() {
        let p = diag_state(&[0.7, 0.3]);
        let q = diag_state(&[0.2, 0.8]);
        let s = 0.4;
        let point = hellinger_arc(&p, &q, s).unwrap();
        let raw = [
            0.7f64.powf(s) * 0.2f64.powf(1.0 - s),
            0.3f64.powf(s) * 0.8f64.powf(1.0 - s),
        ];
        let total: f64 = raw.iter().sum();
        let mut expected = [raw[0] / total, raw[1] / total];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (nu, e) in point.spectrum.iter().zip(expected.iter()) {
            assert!((nu - e).abs() < 1e-12);
        }
    }

    #[test]
    fn hellinger_arc_rejects_rank_deficient() {
        let psi = pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let sigma = mixed_qubit(13);
        assert!(matches!(
            hellinger_arc(&psi, &sigma, 0.5),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn relative_entropies_balance_at_s_star() {
        for seed in 0..15 {
            let rho = mixed_qubit(seed);
            let sigma = mixed_qubit(seed + 77);
            let r = chernoff(&rho, &sigma).unwrap();
            if r.s_star <= 1e-3 || r.s_star >= 1.0 - 1e-3 {
                continue;
            }
            let arc = hellinger_arc(&rho, &sigma, r.s_star).unwrap();
            assert!(
                (arc.rel_ent_to_rho - arc.rel_ent_to_sigma).abs() < 1e-6,
                "seed {seed}: imbalance {}",
                (arc.rel_ent_to_rho - arc.rel_ent_to_sigma).abs()
            );
        }
    }

    #[test]
    fn metric_zero_perturbation() {
        let rho = mixed_qubit(14);
        let zero = Perturbation::from_matrix(M::zeros(2, 2)).unwrap();
        assert_eq!(chernoff_metric(&rho, &zero).unwrap(), 0.0);
    }

    #[test]
    fn metric_maximally_mixed_pauli_x() {
        let rho = diag_state(&[0.5, 0.5]);
        let eps = 1e-3;
        let mut m = M::zeros(2, 2);
        m.set(0, 1, Complex64::new(eps, 0.0));
        m.set(1, 0, Complex64::new(eps, 0.0));
        let drho = Perturbation::from_matrix(m).unwrap();
        let ds2 = chernoff_metric(&rho, &drho).unwrap();
        assert!((ds2 - eps * eps / 2.0).abs() < 1e-18);
    }

    #[test]
    fn metric_rejects_rank_deficient_state() {
        let psi = pure_state(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let p = random_perturbation::<f64>(1, 2, 1e-3).unwrap();
        assert!(matches!(
            chernoff_metric(&psi, &p),
            Err(Error::SingularMetric)
        ));
    }

    #[test]
    fn metric_matches_finite_difference() {
        // Mix toward the maximally mixed state so eigenvalues stay well away
        // from zero and ρ - dρ remains a state.
        for seed in 0..10 {
            let raw = mixed_qubit(seed);
            let m = raw.matrix().scale_re(0.8).add(&M::identity(2).scale_re(0.1));
            let rho = D::from_matrix(m).unwrap();
            let drho = random_perturbation::<f64>(seed + 300, 2, 1e-3).unwrap();
            let ds2 = chernoff_metric(&rho, &drho).unwrap();
            let shifted = D::from_matrix(rho.matrix().sub(drho.operator().matrix())).unwrap();
            let fd = 1.0 - chernoff(&rho, &shifted).unwrap().q_value;
            assert!(
                (ds2 - fd).abs() <= 5e-2 * ds2,
                "seed {seed}: ds2 {ds2} vs fd {fd}"
            );
        }
    }

    #[test]
    fn q_s_rejects_out_of_range_exponent() {
        let rho = mixed_qubit(15);
        assert!(q_s(&rho, &rho, 1.5).is_err());
        assert!(q_s(&rho, &rho, -0.1).is_err());
    }

    #[test]
    fn extended_display() {
        assert_eq!(Extended::Finite(0.5f64).to_string(), "0.5");
        assert_eq!(Extended::<f64>::Infinite.to_string(), "infinite");
    }
}
