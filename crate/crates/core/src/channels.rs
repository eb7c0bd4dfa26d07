//! CPTP maps in Kraus form, for monotonicity experiments: channel
//! application, random channel generation via Stinespring isometries,
//! partial trace, and ancilla attachment.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, HermitianOperator};
use crate::scalar::Scalar;
use crate::states::rng::SeededRng;
use crate::states::{ginibre, DensityMatrix, MatrixJson};

/// Completely positive trace-preserving map `ρ ↦ Σ_k K_k ρ K_k†`, with
/// Kraus operators mapping a `din`-dimensional space to `dout` dimensions.
#[derive(Debug, Clone)]
pub struct QuantumChannel<T> {
    kraus: Vec<ComplexMatrix<T>>,
    din: usize,
    dout: usize,
}

/// Which tensor factor [`partial_trace`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

impl<T: Scalar> QuantumChannel<T> {
    /// Validates shapes and trace preservation `Σ_k K_k† K_k = I`.
    pub fn new(kraus: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| {
            Error::InvalidArgument("a channel needs at least one Kraus operator".into())
        })?;
        let (dout, din) = (first.rows(), first.cols());
        for k in &kraus {
            if k.rows() != dout || k.cols() != din {
                return Err(Error::DimensionMismatch { left: k.rows(), right: dout });
            }
        }
        let mut completeness = ComplexMatrix::zeros(din, din);
        for k in &kraus {
            completeness = completeness.add(&k.dagger().matmul(k));
        }
        let residual = completeness.sub(&ComplexMatrix::identity(din)).max_abs();
        if residual > T::VALIDATE_TOL {
            return Err(Error::NotTracePreserving {
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { kraus, din, dout })
    }

    pub fn din(&self) -> usize {
        self.din
    }

    pub fn dout(&self) -> usize {
        self.dout
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    /// JSON wire form `{din, dout, kraus: [matrix, ...]}` using the shared
    /// matrix encoding.
    pub fn to_json(&self) -> ChannelJson {
        ChannelJson {
            din: self.din,
            dout: self.dout,
            kraus: self.kraus.iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn from_json(json: &ChannelJson) -> Result<Self> {
        let kraus = json
            .kraus
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()?;
        let ch = Self::new(kraus)?;
        if ch.din != json.din || ch.dout != json.dout {
            return Err(Error::InvalidArgument(format!(
                "channel JSON declares {}->{} but Kraus operators are {}->{}",
                json.din, json.dout, ch.din, ch.dout
            )));
        }
        Ok(ch)
    }
}

/// Serialized channel.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelJson {
    pub din: usize,
    pub dout: usize,
    pub kraus: Vec<MatrixJson>,
}

/// Applies the channel and revalidates the output state.
pub fn apply_channel<T: Scalar>(
    ch: &QuantumChannel<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    if ch.din != rho.dim() {
        return Err(Error::DimensionMismatch { left: ch.din, right: rho.dim() });
    }
    let mut out = ComplexMatrix::zeros(ch.dout, ch.dout);
    for k in &ch.kraus {
        out = out.add(&k.matmul(rho.matrix()).matmul(&k.dagger()));
    }
    DensityMatrix::from_hermitian(HermitianOperator::symmetrize(out))
}

/// Random channel from a seeded Stinespring isometry: the Kraus operators
/// are the `env_dim` blocks of an orthonormalized complex Gaussian
/// `(dout * env_dim) x din` matrix.
pub fn random_channel<T: Scalar>(
    seed: u64,
    din: usize,
    dout: usize,
    env_dim: usize,
) -> Result<QuantumChannel<T>> {
    if din == 0 || dout == 0 || env_dim == 0 {
        return Err(Error::InvalidArgument("channel dimensions must be positive".into()));
    }
    let total = dout * env_dim;
    if total < din {
        return Err(Error::InvalidArgument(format!(
            "no isometry from dimension {din} into {dout}x{env_dim}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut v = ginibre::<T>(&mut rng, total, din);
    // Modified Gram-Schmidt: columns become orthonormal, so Σ K†K = V†V = I.
    for j in 0..din {
        for prev in 0..j {
            let mut overlap = Complex::new(T::zero(), T::zero());
            for i in 0..total {
                overlap += v.get(i, prev).conj() * v.get(i, j);
            }
            for i in 0..total {
                let val = v.get(i, j) - v.get(i, prev) * overlap;
                v.set(i, j, val);
            }
        }
        let norm = (0..total).map(|i| v.get(i, j).norm_sqr()).sum::<T>().sqrt();
        let inv = norm.recip();
        for i in 0..total {
            let val = v.get(i, j) * inv;
            v.set(i, j, val);
        }
    }
    let kraus = (0..env_dim)
        .map(|e| ComplexMatrix::from_fn(dout, din, |i, j| v.get(e * dout + i, j)))
        .collect();
    QuantumChannel::new(kraus)
}

/// Partial trace of a state on a `dA x dB` tensor product, in the row-major
/// Kronecker layout (composite index `a * dB + b`).
pub fn partial_trace<T: Scalar>(
    rho: &DensityMatrix<T>,
    dims: (usize, usize),
    keep: Keep,
) -> Result<DensityMatrix<T>> {
    let (da, db) = dims;
    if da * db != rho.dim() {
        return Err(Error::DimensionMismatch { left: da * db, right: rho.dim() });
    }
    let m = rho.matrix();
    let out = match keep {
        Keep::A => ComplexMatrix::from_fn(da, da, |a, a2| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for b in 0..db {
                acc += m.get(a * db + b, a2 * db + b);
            }
            acc
        }),
        Keep::B => ComplexMatrix::from_fn(db, db, |b, b2| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for a in 0..da {
                acc += m.get(a * db + b, a * db + b2);
            }
            acc
        }),
    };
    DensityMatrix::from_hermitian(HermitianOperator::symmetrize(out))
}

/// `ρ ⊗ τ`, the state with an ancilla attached.
pub fn attach_ancilla<T: Scalar>(
    rho: &DensityMatrix<T>,
    tau: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    let joint = kron(rho.operator(), tau.operator())?;
    DensityMatrix::from_hermitian(joint)
}
