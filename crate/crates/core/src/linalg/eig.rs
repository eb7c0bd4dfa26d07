//! Dense complex Hermitian eigensolver.
//!
//! Two-stage classic scheme: unitary Householder reduction to a real
//! symmetric tridiagonal matrix, followed by the implicit-shift QL
//! iteration. The reduction works on full rows so the hot loops run over
//! contiguous memory; a values-only entry point skips every piece of
//! eigenvector bookkeeping, which matters for the large tensor-power
//! matrices produced by multi-copy scans.

use num_complex::Complex;

use crate::error::Error;
use crate::scalar::Scalar;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_QL_ITERS: usize = 50;

/// Eigenvalues of a Hermitian matrix given as a row-major `n x n` slice.
/// Returned ascending. The input is only read.
pub(crate) fn eigenvalues<T: Scalar>(entries: &[Complex<T>], n: usize) -> Result<Vec<T>, Error> {
    let mut work = entries.to_vec();
    let (mut d, mut e, _) = tridiagonalize(&mut work, n, None);
    ql_implicit::<T>(&mut d, &mut e, None, n)?;
    d.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(d)
}

/// Full decomposition: ascending eigenvalues and the unitary of column
/// eigenvectors, phase-fixed so each column's largest-magnitude component
/// is real and positive.
pub(crate) fn decompose<T: Scalar>(
    entries: &[Complex<T>],
    n: usize,
) -> Result<(Vec<T>, Vec<Complex<T>>), Error> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());

    let mut work = entries.to_vec();
    let mut reflectors: Vec<(usize, Vec<Complex<T>>)> = Vec::new();
    let (mut d, mut e, phases) = tridiagonalize(&mut work, n, Some(&mut reflectors));

    // Q = G_0 G_1 ... G_last accumulated back to front, then columns scaled
    // by the phases that made the subdiagonal real.
    let mut u = vec![zero; n * n];
    for i in 0..n {
        u[i * n + i] = one;
    }
    for (k, v) in reflectors.iter().rev() {
        apply_reflector(&mut u, n, *k, v);
    }
    for (j, phase) in phases.iter().enumerate() {
        for i in 0..n {
            u[i * n + j] = u[i * n + j] * *phase;
        }
    }

    ql_implicit::<T>(&mut d, &mut e, Some(&mut u), n)?;

    // Sort ascending, permuting columns accordingly.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    let sorted_d: Vec<T> = order.iter().map(|&j| d[j]).collect();
    let mut sorted_u = vec![zero; n * n];
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            sorted_u[i * n + new_j] = u[i * n + old_j];
        }
    }

    // Deterministic phase: largest-magnitude component real positive.
    for j in 0..n {
        let mut best = T::zero();
        let mut pivot = zero;
        for i in 0..n {
            let mag = sorted_u[i * n + j].norm_sqr();
            if mag > best {
                best = mag;
                pivot = sorted_u[i * n + j];
            }
        }
        if best > T::zero() {
            let phase = pivot.conj() / pivot.norm();
            for i in 0..n {
                sorted_u[i * n + j] = sorted_u[i * n + j] * phase;
            }
        }
    }

    Ok((sorted_d, sorted_u))
}

/// Householder reduction to real tridiagonal form.
///
/// Returns `(d, e, phases)` where `d` is the diagonal, `e[i]` the real
/// coupling between sites `i` and `i+1` (with `e[n-1]` unused), and
/// `phases` the diagonal unitary that realified the subdiagonal. When
/// `reflectors` is provided the normalized Householder vectors are recorded
/// for later accumulation of the similarity transform.
fn tridiagonalize<T: Scalar>(
    a: &mut [Complex<T>],
    n: usize,
    mut reflectors: Option<&mut Vec<(usize, Vec<Complex<T>>)>>,
) -> (Vec<T>, Vec<T>, Vec<Complex<T>>) {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let two = T::one() + T::one();

    let mut sub = vec![zero; n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;

        // Scale guard against under/overflow in the column norm.
        let mut scale = T::zero();
        for i in k + 1..n {
            let z = a[i * n + k];
            scale += z.re.abs() + z.im.abs();
        }
        if scale == T::zero() {
            sub[k] = zero;
            continue;
        }
        let inv_scale = scale.recip();
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| a[i * n + k] * inv_scale).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();

        // alpha = -phase(x0) * |x|: reflector v = x - alpha e0 has no
        // cancellation in its leading component.
        let x0 = v[0];
        let phase = if x0.norm_sqr() > T::zero() {
            x0 / x0.norm()
        } else {
            one
        };
        let alpha = -phase * xnorm;
        v[0] = x0 - alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        let inv_vnorm = vnorm.recip();
        for z in v.iter_mut() {
            *z = *z * inv_vnorm;
        }

        // p = A_sub v over the trailing block, rows are contiguous.
        let mut p = vec![zero; m];
        for i in 0..m {
            let row = &a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            let mut acc = zero;
            for (aij, vj) in row.iter().zip(v.iter()) {
                acc += *aij * *vj;
            }
            p[i] = acc;
        }

        // s = v† A v is real for Hermitian A.
        let mut s = T::zero();
        for i in 0..m {
            s += (v[i].conj() * p[i]).re;
        }

        // Rank-2 update A <- A - v w† - w v† with w = 2(p - s v).
        let w: Vec<Complex<T>> = p
            .iter()
            .zip(v.iter())
            .map(|(pi, vi)| (*pi - *vi * s) * two)
            .collect();
        let wc: Vec<Complex<T>> = w.iter().map(|z| z.conj()).collect();
        let vc: Vec<Complex<T>> = v.iter().map(|z| z.conj()).collect();
        for i in 0..m {
            let vi = v[i];
            let wi = w[i];
            let row = &mut a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            for j in 0..m {
                row[j] = row[j] - vi * wc[j] - wi * vc[j];
            }
        }

        sub[k] = alpha * scale;
        if let Some(refs) = reflectors.as_deref_mut() {
            refs.push((k, v));
        }
    }
    if n >= 2 {
        sub[n - 2] = a[(n - 1) * n + n - 2];
    }

    let d: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();

    // Diagonal phase similarity turning the complex subdiagonal real.
    let mut phases = vec![one; n];
    let mut e = vec![T::zero(); n];
    for k in 0..n.saturating_sub(1) {
        let beta = sub[k];
        let mag = beta.norm();
        e[k] = mag;
        phases[k + 1] = if mag > T::zero() {
            phases[k] * (beta / mag)
        } else {
            phases[k]
        };
    }

    (d, e, phases)
}

/// Applies `I - 2 v v†` to rows `k+1..` of the row-major `n x n` matrix `u`.
fn apply_reflector<T: Scalar>(u: &mut [Complex<T>], n: usize, k: usize, v: &[Complex<T>]) {
    let zero = Complex::new(T::zero(), T::zero());
    let two = T::one() + T::one();
    let m = v.len();
    let mut y = vec![zero; n];
    for i in 0..m {
        let vc = v[i].conj();
        let row = &u[(k + 1 + i) * n..(k + 2 + i) * n];
        for j in 0..n {
            y[j] += vc * row[j];
        }
    }
    for i in 0..m {
        let vi = v[i] * two;
        let row = &mut u[(k + 1 + i) * n..(k + 2 + i) * n];
        for j in 0..n {
            row[j] = row[j] - vi * y[j];
        }
    }
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix.
/// `e[i]` couples sites `i` and `i+1`. When `u` is given, the accumulated
/// Givens rotations are applied to its columns.
fn ql_implicit<T: Scalar>(
    d: &mut [T],
    e: &mut [T],
    mut u: Option<&mut Vec<Complex<T>>>,
    n: usize,
) -> Result<(), Error> {
    if n <= 1 {
        return Ok(());
    }
    let eps = T::epsilon();
    let two = T::one() + T::one();
    let floor = T::min_positive_value();

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd + floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERS {
                return Err(Error::EigenFailed {
                    dim: n,
                    off_diagonal: e[l].to_f64().unwrap_or(f64::NAN),
                });
            }

            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            let sign_r = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;

            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                if let Some(z) = u.as_deref_mut() {
                    for row in z.chunks_exact_mut(n) {
                        let f2 = row[i + 1];
                        row[i + 1] = f2 * c + row[i] * s;
                        row[i] = row[i] * c - f2 * s;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
