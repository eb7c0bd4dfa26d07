//! Dense complex linear algebra: matrices, Hermitian operators, spectral
//! decompositions, matrix functions, Jordan splits, norms and tensor
//! products.

mod eig;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on matrix dimension for tensor products. Qubit pairs can be
/// tensored to 12 copies, qutrits to 7.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Dense complex matrix in row-major order. Square in almost all uses;
/// rectangular storage exists for Kraus operators mapping between spaces of
/// different dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Diagonal matrix from real entries.
    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = Complex::new(v, T::zero());
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix. Panics on rectangular input; all
    /// callers in this crate hold squareness by construction.
    #[inline]
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| *a + *b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| *a - *b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        let entries = self.entries.iter().map(|a| *a * factor).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale_re(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    /// Matrix product, accumulated row-wise so the inner loop is contiguous.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let (n, k_dim, m) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(n, m);
        for i in 0..n {
            for k in 0..k_dim {
                let aik = self.entries[i * k_dim + k];
                if aik.re == T::zero() && aik.im == T::zero() {
                    continue;
                }
                let brow = &other.entries[k * m..(k + 1) * m];
                let crow = &mut out.entries[i * m..(i + 1) * m];
                for j in 0..m {
                    crow[j] += aik * brow[j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        debug_assert!(self.is_square());
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.rows {
            t += self.entries[i * self.cols + i];
        }
        t
    }

    /// Tr[self * other] without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut t = Complex::new(T::zero(), T::zero());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t += self.entries[i * self.cols + j] * other.entries[j * other.cols + i];
            }
        }
        t
    }

    /// Max-entry norm: max of |entry|.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// max|M - M†|, the Hermiticity defect.
    pub fn hermiticity_defect(&self) -> T {
        debug_assert!(self.is_square());
        let n = self.rows;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Kronecker product in the standard row-major block layout:
    /// `(A ⊗ B)[(i1*rb + i2), (j1*cb + j2)] = A[i1,j1] * B[i2,j2]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Self::zeros(ra * rb, ca * cb);
        let oc = ca * cb;
        for i1 in 0..ra {
            for j1 in 0..ca {
                let a = self.entries[i1 * ca + j1];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for i2 in 0..rb {
                    let brow = &other.entries[i2 * cb..(i2 + 1) * cb];
                    let orow = &mut out.entries[(i1 * rb + i2) * oc + j1 * cb..];
                    for j2 in 0..cb {
                        orow[j2] = a * brow[j2];
                    }
                }
            }
        }
        out
    }

    /// All entries finite?
    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Hermitian operator: a square complex matrix validated to be self-adjoint
/// within tolerance and stored symmetrized, so downstream eigensolves are
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T> {
    m: ComplexMatrix<T>,
}

impl<T: Scalar> HermitianOperator<T> {
    /// Validates Hermiticity (`max|M - M†| <= HERMITICITY_TOL * max(1, max|M|)`)
    /// and symmetrizes.
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { left: m.rows, right: m.cols });
        }
        let defect = m.hermiticity_defect();
        let scale = m.max_abs();
        let tol = T::HERMITICITY_TOL * if scale > T::one() { scale } else { T::one() };
        if defect > tol {
            return Err(Error::NotHermitian {
                defect: defect.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrizes without a tolerance gate. For matrices Hermitian by
    /// construction (reconstructions, sums of Hermitian terms).
    pub(crate) fn symmetrize(m: ComplexMatrix<T>) -> Self {
        debug_assert!(m.is_square());
        let n = m.rows;
        let half = T::from(0.5).unwrap();
        let mut out = m;
        for i in 0..n {
            let dii = out.entries[i * n + i];
            out.entries[i * n + i] = Complex::new(dii.re, T::zero());
            for j in i + 1..n {
                let upper = out.entries[i * n + j];
                let lower = out.entries[j * n + i];
                let avg = (upper + lower.conj()) * half;
                out.entries[i * n + j] = avg;
                out.entries[j * n + i] = avg.conj();
            }
        }
        Self { m: out }
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.m
    }

    pub fn trace_re(&self) -> T {
        self.m.trace().re
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { m: self.m.add(&other.m) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { m: self.m.sub(&other.m) }
    }

    pub fn scale_re(&self, factor: T) -> Self {
        Self { m: self.m.scale_re(factor) }
    }

    /// Full spectral decomposition, eigenvalues ascending.
    pub fn eig(&self) -> Result<SpectralDecomposition<T>> {
        eig_hermitian(self)
    }

    /// Eigenvalues only (ascending); skips all eigenvector work.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        eig::eigenvalues(self.m.entries(), self.m.dim())
    }
}

/// Result of a Hermitian eigendecomposition: ascending real eigenvalues and
/// the unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T> {
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues.last().copied().unwrap_or_else(T::zero)
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues.first().copied().unwrap_or_else(T::zero)
    }

    /// Clip threshold for this spectrum: `CLIP_REL * max(lambda_max, 0)`.
    pub fn clip_threshold(&self) -> T {
        let top = self.max_eigenvalue();
        T::CLIP_REL * if top > T::zero() { top } else { T::zero() }
    }

    /// Reconstructs `U f(Λ) U†`.
    pub fn map(&self, f: impl Fn(T) -> T) -> HermitianOperator<T> {
        let n = self.dim();
        let u = &self.eigenvectors;
        // B = U diag(f), then B U†; both products have contiguous inner loops.
        let mut b = u.clone();
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let fk = f(lam);
            for i in 0..n {
                let idx = i * n + k;
                b.entries[idx] = b.entries[idx] * fk;
            }
        }
        HermitianOperator::symmetrize(b.matmul(&u.dagger()))
    }
}

/// Spectral decomposition of a Hermitian operator; eigenvalues ascending,
/// eigenvector phases fixed by making each column's largest-magnitude
/// component real positive.
pub fn eig_hermitian<T: Scalar>(m: &HermitianOperator<T>) -> Result<SpectralDecomposition<T>> {
    let n = m.dim();
    let (eigenvalues, u) = eig::decompose(m.matrix().entries(), n)?;
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_entries(n, n, u)?,
    })
}

/// Fractional power `M^p` for `p` in [0, 1] of a positive-semidefinite
/// operator. Eigenvalues inside the clip band count as zero; `0^p = 0` for
/// `p > 0`, and `p = 0` yields the support projector. An eigenvalue below
/// the negative clip band is a positivity error.
pub fn frac_power<T: Scalar>(m: &HermitianOperator<T>, p: T) -> Result<HermitianOperator<T>> {
    if p < T::zero() || p > T::one() {
        return Err(Error::InvalidArgument(format!(
            "fractional power exponent must lie in [0, 1], got {}",
            p.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let dec = m.eig()?;
    let clip = dec.clip_threshold();
    let min = dec.min_eigenvalue();
    if min < -clip {
        return Err(Error::NotPositive {
            min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(dec.map(|lam| scalar_frac_power(lam, p, clip)))
}

/// Scalar counterpart of [`frac_power`] with the same clip and endpoint
/// conventions. Shared with the overlap-based Chernoff evaluations so both
/// routes agree exactly.
#[inline]
pub(crate) fn scalar_frac_power<T: Scalar>(lam: T, p: T, clip: T) -> T {
    if lam <= clip {
        T::zero()
    } else if p == T::zero() {
        T::one()
    } else if p == T::one() {
        lam
    } else {
        lam.powf(p)
    }
}

/// Projector onto the clipped-positive eigenspace.
pub fn support_projector<T: Scalar>(m: &HermitianOperator<T>) -> Result<HermitianOperator<T>> {
    frac_power(m, T::zero())
}

/// Jordan decomposition `H = H₊ - H₋` plus the projector `P` onto the range
/// of `H₊`. Eigenvalues must exceed the clip band to count as positive, so
/// numerical zeros never enter `P`.
pub fn jordan_positive_part<T: Scalar>(
    h: &HermitianOperator<T>,
) -> Result<(HermitianOperator<T>, HermitianOperator<T>, HermitianOperator<T>)> {
    let dec = h.eig()?;
    let clip = dec.clip_threshold();
    let plus = dec.map(|lam| if lam > T::zero() { lam } else { T::zero() });
    let minus = dec.map(|lam| if lam < T::zero() { -lam } else { T::zero() });
    let projector = dec.map(|lam| if lam > clip { T::one() } else { T::zero() });
    Ok((plus, minus, projector))
}

/// Trace norm (sum of singular values). Hermitian inputs take the
/// eigenvalue route `Σ|λᵢ|`; anything else goes through the singular
/// values, obtained as square roots of the eigenvalues of `M†M`.
pub fn trace_norm<T: Scalar>(m: &ComplexMatrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { left: m.rows, right: m.cols });
    }
    let scale = m.max_abs();
    let tol = T::HERMITICITY_TOL * if scale > T::one() { scale } else { T::one() };
    if m.hermiticity_defect() <= tol {
        let h = HermitianOperator::symmetrize(m.clone());
        let vals = h.eigenvalues()?;
        Ok(vals.into_iter().map(|v| v.abs()).sum())
    } else {
        let gram = HermitianOperator::symmetrize(m.dagger().matmul(m));
        let vals = gram.eigenvalues()?;
        Ok(vals
            .into_iter()
            .map(|v| if v > T::zero() { v.sqrt() } else { T::zero() })
            .sum())
    }
}

/// Kronecker product of Hermitian operators under the default dimension cap.
pub fn kron<T: Scalar>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
) -> Result<HermitianOperator<T>> {
    kron_with_cap(a, b, DEFAULT_DIM_CAP)
}

/// Kronecker product with an explicit dimension cap.
pub fn kron_with_cap<T: Scalar>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
    cap: usize,
) -> Result<HermitianOperator<T>> {
    let dim = a.dim() * b.dim();
    if dim > cap {
        return Err(Error::SizeCapExceeded { dim, cap });
    }
    Ok(HermitianOperator::symmetrize(a.matrix().kron(b.matrix())))
}

/// Matrix logarithm restricted to the support: eigenvalues above the clip
/// band map to `ln λ`, kernel eigenvalues map to 0.
pub fn matrix_log_on_support<T: Scalar>(m: &HermitianOperator<T>) -> Result<HermitianOperator<T>> {
    let dec = m.eig()?;
    let clip = dec.clip_threshold();
    Ok(dec.map(|lam| if lam > clip { lam.ln() } else { T::zero() }))
}
