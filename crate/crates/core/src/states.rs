//! Density matrices, priors, perturbations, classical distributions and the
//! seeded random ensembles the property suites run on.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::scalar::{real, Scalar};

pub mod rng;

use rng::SeededRng;

/// Positive-semidefinite, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    op: HermitianOperator<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates and wraps a raw matrix: Hermitian within tolerance (then
    /// symmetrized), positive semidefinite after eigenvalue clipping, and
    /// unit trace within tolerance. Each failure is a distinct error kind.
    pub fn from_matrix(m: ComplexMatrix<T>) -> Result<Self> {
        let op = HermitianOperator::new(m)?;
        Self::from_hermitian(op)
    }

    pub fn from_hermitian(op: HermitianOperator<T>) -> Result<Self> {
        let vals = op.eigenvalues()?;
        let top = vals.last().copied().unwrap_or_else(T::zero);
        let clip = T::CLIP_REL * if top > T::zero() { top } else { T::zero() };
        let min = vals.first().copied().unwrap_or_else(T::zero);
        if min < -clip {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
            });
        }
        let trace = op.trace_re();
        if (trace - T::one()).abs() > T::VALIDATE_TOL {
            return Err(Error::TraceNotOne {
                trace: trace.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { op })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator<T> {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        self.op.matrix()
    }

    /// Tr[ρ²].
    pub fn purity(&self) -> T {
        self.matrix().trace_product(self.matrix()).re
    }
}

/// Strictly positive prior pair summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorPair<T> {
    pi0: T,
    pi1: T,
}

impl<T: Scalar> PriorPair<T> {
    pub fn new(pi0: T, pi1: T) -> Result<Self> {
        let bad = !(pi0 > T::zero())
            || !(pi1 > T::zero())
            || (pi0 + pi1 - T::one()).abs() > T::TIGHT_TOL;
        if bad {
            return Err(Error::InvalidPriors {
                pi0: pi0.to_f64().unwrap_or(f64::NAN),
                pi1: pi1.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { pi0, pi1 })
    }

    pub fn uniform() -> Self {
        let half = real::<T>(0.5);
        Self { pi0: half, pi1: half }
    }

    pub fn pi0(&self) -> T {
        self.pi0
    }

    pub fn pi1(&self) -> T {
        self.pi1
    }
}

/// Traceless Hermitian perturbation dρ.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation<T> {
    drho: HermitianOperator<T>,
}

impl<T: Scalar> Perturbation<T> {
    pub fn from_matrix(m: ComplexMatrix<T>) -> Result<Self> {
        let op = HermitianOperator::new(m)?;
        let tr = op.trace_re().abs();
        if tr > T::TIGHT_TOL {
            return Err(Error::NotTraceless {
                trace_abs: tr.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { drho: op })
    }

    pub fn dim(&self) -> usize {
        self.drho.dim()
    }

    pub fn operator(&self) -> &HermitianOperator<T> {
        &self.drho
    }
}

/// Classical probability distribution: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDistribution<T> {
    probs: Vec<T>,
}

impl<T: Scalar> ClassicalDistribution<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution {
                detail: "empty distribution".into(),
            });
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= T::zero()) || !p.is_finite()) {
            return Err(Error::InvalidDistribution {
                detail: format!("negative or non-finite entry {}", p.to_f64().unwrap_or(f64::NAN)),
            });
        }
        let sum: T = probs.iter().copied().sum();
        if (sum - T::one()).abs() > T::TIGHT_TOL {
            return Err(Error::InvalidDistribution {
                detail: format!("entries sum to {}, expected 1", sum.to_f64().unwrap_or(f64::NAN)),
            });
        }
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }
}

/// Parameters of a seeded random density matrix draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub dim: usize,
    pub rank: usize,
}

impl RandomSpec {
    pub fn new(seed: u64, dim: usize, rank: usize) -> Result<Self> {
        if dim == 0 || rank == 0 || rank > dim {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= rank <= dim, got dim {dim}, rank {rank}"
            )));
        }
        Ok(Self { seed, dim, rank })
    }
}

/// Matrix of independent complex Gaussians (real and imaginary parts are
/// independent standard normals).
pub fn ginibre<T: Scalar>(rng: &mut SeededRng, rows: usize, cols: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let (re, im) = rng.normal_pair();
        Complex::new(real(re), real(im))
    })
}

/// Rank-`r` random density matrix `G G† / Tr[G G†]` with `G` a `dim x rank`
/// complex Gaussian matrix drawn from the seeded generator. Deterministic
/// given the spec.
pub fn random_density<T: Scalar>(spec: RandomSpec) -> DensityMatrix<T> {
    let mut rng = SeededRng::new(spec.seed);
    let g = ginibre::<T>(&mut rng, spec.dim, spec.rank);
    let gram = g.matmul(&g.dagger());
    let trace = gram.trace().re;
    let op = HermitianOperator::symmetrize(gram.scale_re(trace.recip()));
    DensityMatrix::from_hermitian(op).expect("Gaussian construction yields a valid state")
}

/// Random unitary: modified Gram-Schmidt orthonormalization of a seeded
/// complex Gaussian matrix, each column phase-fixed so its
/// largest-magnitude component is real positive.
pub fn random_unitary<T: Scalar>(seed: u64, dim: usize) -> ComplexMatrix<T> {
    let mut rng = SeededRng::new(seed);
    let mut g = ginibre::<T>(&mut rng, dim, dim);
    for j in 0..dim {
        for prev in 0..j {
            let mut overlap = Complex::new(T::zero(), T::zero());
            for i in 0..dim {
                overlap += g.get(i, prev).conj() * g.get(i, j);
            }
            for i in 0..dim {
                let v = g.get(i, j) - g.get(i, prev) * overlap;
                g.set(i, j, v);
            }
        }
        let norm = (0..dim)
            .map(|i| g.get(i, j).norm_sqr())
            .sum::<T>()
            .sqrt();
        let inv = norm.recip();
        let mut pivot = Complex::new(T::zero(), T::zero());
        let mut best = T::zero();
        for i in 0..dim {
            let v = g.get(i, j) * inv;
            g.set(i, j, v);
            if v.norm_sqr() > best {
                best = v.norm_sqr();
                pivot = v;
            }
        }
        let phase = pivot.conj() / pivot.norm();
        for i in 0..dim {
            let v = g.get(i, j) * phase;
            g.set(i, j, v);
        }
    }
    g
}

/// Random traceless Hermitian perturbation rescaled to `max|dρ| = eps`.
pub fn random_perturbation<T: Scalar>(seed: u64, dim: usize, eps: T) -> Result<Perturbation<T>> {
    if !(eps > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation scale must be positive, got {}",
            eps.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let mut rng = SeededRng::new(seed);
    let g = ginibre::<T>(&mut rng, dim, dim);
    let herm = HermitianOperator::symmetrize(g.add(&g.dagger()).scale_re(real(0.5)));
    let shift = herm.trace_re() / real(dim as f64);
    let mut m = herm.into_matrix();
    for i in 0..dim {
        let v = m.get(i, i) - Complex::new(shift, T::zero());
        m.set(i, i, v);
    }
    let max = m.max_abs();
    let m = m.scale_re(eps / max);
    Ok(Perturbation {
        drho: HermitianOperator::symmetrize(m),
    })
}

/// JSON wire format for a complex matrix: row-major `[re, im]` pairs.
/// Square matrices carry `dim`; rectangular ones (Kraus operators) carry
/// `rows`/`cols` instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cols: Option<usize>,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix<T: Scalar>(m: &ComplexMatrix<T>) -> Self {
        let entries = m
            .entries()
            .iter()
            .map(|z| {
                [
                    z.re.to_f64().unwrap_or(f64::NAN),
                    z.im.to_f64().unwrap_or(f64::NAN),
                ]
            })
            .collect();
        if m.is_square() {
            Self { dim: Some(m.rows()), rows: None, cols: None, entries }
        } else {
            Self {
                dim: None,
                rows: Some(m.rows()),
                cols: Some(m.cols()),
                entries,
            }
        }
    }

    /// Decodes into a matrix, rejecting NaN/infinite entries.
    pub fn to_matrix<T: Scalar>(&self) -> Result<ComplexMatrix<T>> {
        let (rows, cols) = match (self.dim, self.rows, self.cols) {
            (Some(d), None, None) => (d, d),
            (None, Some(r), Some(c)) => (r, c),
            _ => {
                return Err(Error::InvalidArgument(
                    "matrix JSON needs either \"dim\" or both \"rows\" and \"cols\"".into(),
                ))
            }
        };
        if self.entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix JSON declares {rows}x{cols} but carries {} entries",
                self.entries.len()
            )));
        }
        let mut out = Vec::with_capacity(self.entries.len());
        for (idx, [re, im]) in self.entries.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::NonFiniteEntry { row: idx / cols, col: idx % cols });
            }
            out.push(Complex::new(real::<T>(*re), real::<T>(*im)));
        }
        ComplexMatrix::from_entries(rows, cols, out)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("matrix JSON serialization cannot fail")
    }
}
