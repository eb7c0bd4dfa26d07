//! n-copy discrimination experiments: tensor powers, the exact minimum
//! error probability on n copies, and the per-copy rate column that
//! converges to the Chernoff exponent.

use crate::error::{Error, Result};
use crate::linalg::{kron_with_cap, HermitianOperator};
use crate::measures::{chernoff, Extended};
use crate::scalar::{real, Scalar};
use crate::states::{DensityMatrix, PriorPair};

/// One row of a copy scan.
#[derive(Debug, Clone, Copy)]
pub struct CopyScanRow<T> {
    pub n: usize,
    /// Exact minimum error probability on `n` copies.
    pub p_err: T,
    /// `-ln(p_err) / n`; infinite when `p_err` is exactly zero.
    pub rate: Extended<T>,
    /// Single-copy Chernoff data turned into a per-n upper bound:
    /// `π₀^s* π₁^(1-s*) Q^n`. Valid for every `n` because the underlying
    /// trace inequality holds for every `s`.
    pub theorem1_bound: T,
}

/// Result of scanning `n = 1..=n_max`.
#[derive(Debug, Clone)]
pub struct CopyScanResult<T> {
    pub rows: Vec<CopyScanRow<T>>,
    /// Single-copy Chernoff exponent, the limit of the rate column.
    pub xi_qcb: Extended<T>,
    pub priors: PriorPair<T>,
}

impl<T: Scalar> CopyScanResult<T> {
    /// CSV per the scan contract: header `n,p_err,rate,theorem1_bound`,
    /// 17-significant-digit floats, `inf` for infinite rates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p_err,rate,theorem1_bound\n");
        for row in &self.rows {
            let rate = match row.rate {
                Extended::Finite(r) => format!("{r:.16e}"),
                Extended::Infinite => "inf".to_string(),
            };
            out.push_str(&format!(
                "{},{:.16e},{},{:.16e}\n",
                row.n, row.p_err, rate, row.theorem1_bound
            ));
        }
        out
    }
}

/// `ρ^(⊗n)` under the dimension cap.
pub fn tensor_power<T: Scalar>(
    rho: &DensityMatrix<T>,
    n: usize,
    cap: usize,
) -> Result<DensityMatrix<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("tensor power needs n >= 1".into()));
    }
    let mut power = rho.operator().clone();
    for _ in 1..n {
        power = kron_with_cap(&power, rho.operator(), cap)?;
    }
    DensityMatrix::from_hermitian(power)
}

/// Trace-norm route to the minimum error probability for a weighted
/// difference of (already tensored) states. Eigenvalues only, no
/// eigenvector work.
fn p_err_from_powers<T: Scalar>(
    pow0: &HermitianOperator<T>,
    pow1: &HermitianOperator<T>,
    priors: PriorPair<T>,
) -> Result<T> {
    let gamma = pow1.scale_re(priors.pi1()).sub(&pow0.scale_re(priors.pi0()));
    let tn: T = gamma.eigenvalues()?.into_iter().map(|v| v.abs()).sum();
    Ok(((T::one() - tn) * real::<T>(0.5)).max(T::zero()))
}

/// Exact `P_{e,min,n}`: Helstrom error probability on the n-fold tensor
/// powers, by full eigensolve of the weighted difference (no sampling).
pub fn p_err_n<T: Scalar>(
    rho0: &DensityMatrix<T>,
    rho1: &DensityMatrix<T>,
    priors: PriorPair<T>,
    n: usize,
    cap: usize,
) -> Result<T> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch { left: rho0.dim(), right: rho1.dim() });
    }
    let pow0 = tensor_power(rho0, n, cap)?;
    let pow1 = tensor_power(rho1, n, cap)?;
    p_err_from_powers(pow0.operator(), pow1.operator(), priors)
}

/// Scans `n = 1..=n_max`, reusing the previous tensor power at each step.
pub fn copy_scan<T: Scalar>(
    rho0: &DensityMatrix<T>,
    rho1: &DensityMatrix<T>,
    priors: PriorPair<T>,
    n_max: usize,
    cap: usize,
) -> Result<CopyScanResult<T>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("copy scan needs n_max >= 1".into()));
    }
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch { left: rho0.dim(), right: rho1.dim() });
    }

    let single = chernoff(rho0, rho1)?;
    let prior_factor = priors.pi0().powf(single.s_star) * priors.pi1().powf(T::one() - single.s_star);

    let mut rows = Vec::with_capacity(n_max);
    let mut pow0 = rho0.operator().clone();
    let mut pow1 = rho1.operator().clone();
    let mut q_pow = T::one();
    for n in 1..=n_max {
        if n > 1 {
            pow0 = kron_with_cap(&pow0, rho0.operator(), cap)?;
            pow1 = kron_with_cap(&pow1, rho1.operator(), cap)?;
        }
        q_pow *= single.q_value;
        let p_err = p_err_from_powers(&pow0, &pow1, priors)?;
        let rate = if p_err <= T::POSITIVITY_FLOOR {
            Extended::Infinite
        } else {
            Extended::Finite(-p_err.ln() / real::<T>(n as f64))
        };
        let theorem1_bound = prior_factor * q_pow;
        debug_assert!(
            p_err <= theorem1_bound + T::TIGHT_TOL,
            "per-n bound violated at n = {n}"
        );
        rows.push(CopyScanRow { n, p_err, rate, theorem1_bound });
    }

    Ok(CopyScanResult { rows, xi_qcb: single.exponent, priors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexMatrix, DEFAULT_DIM_CAP};
    use crate::measures::helstrom;
    use crate::states::{random_density, RandomSpec};

    type M = ComplexMatrix<f64>;
    type D = DensityMatrix<f64>;

    fn diag_state(values: &[f64]) -> D {
        D::from_matrix(M::diag(values)).unwrap()
    }

    fn qubit(seed: u64) -> D {
        random_density(RandomSpec::new(seed, 2, 2).unwrap())
    }

    #[test]
    fn tensor_power_base_cases() {
        let rho = qubit(1);
        let p1 = tensor_power(&rho, 1, DEFAULT_DIM_CAP).unwrap();
        assert!(p1.matrix().sub(rho.matrix()).max_abs() < 1e-15);

        let p = diag_state(&[0.75, 0.25]);
        let p2 = tensor_power(&p, 2, DEFAULT_DIM_CAP).unwrap();
        let expected = M::diag(&[0.5625, 0.1875, 0.1875, 0.0625]);
        assert!(p2.matrix().sub(&expected).max_abs() < 1e-15);
    }

    #[test]
    fn tensor_power_purity_is_multiplicative() {
        let rho = qubit(2);
        let squared = tensor_power(&rho, 2, DEFAULT_DIM_CAP).unwrap();
        let p = rho.purity();
        assert!((squared.purity() - p * p).abs() < 1e-12);
    }

    #[test]
    fn tensor_power_respects_cap() {
        let rho = qubit(3);
        assert!(matches!(
            tensor_power(&rho, 4, 8),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn p_err_one_copy_equals_helstrom() {
        let rho0 = qubit(4);
        let rho1 = qubit(5);
        let priors = PriorPair::new(0.3, 0.7).unwrap();
        let direct = helstrom(&rho0, &rho1, priors).unwrap().p_error;
        let via_scan = p_err_n(&rho0, &rho1, priors, 1, DEFAULT_DIM_CAP).unwrap();
        assert!((direct - via_scan).abs() < 1e-13);
    }

    #[test]
    fn p_err_identical_states_is_min_prior() {
        let rho = qubit(6);
        let priors = PriorPair::new(0.2, 0.8).unwrap();
        for n in 1..=3 {
            let p = p_err_n(&rho, &rho, priors, n, DEFAULT_DIM_CAP).unwrap();
            assert!((p - 0.2).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn p_err_two_copies_diagonal_closed_form() {
        // Weighted difference of diag(0.75,0.25)^⊗2 and diag(0.25,0.75)^⊗2 at
        // equal priors: diagonal entries (±0.25, 0, 0, ∓0.25)/... trace norm
        // 0.5, so the error probability stays 0.25 at n = 2.
        let rho0 = diag_state(&[0.75, 0.25]);
        let rho1 = diag_state(&[0.25, 0.75]);
        let p = p_err_n(&rho0, &rho1, PriorPair::uniform(), 2, DEFAULT_DIM_CAP).unwrap();
        assert!((p - 0.25).abs() < 1e-14);
    }

    #[test]
    fn copy_scan_degenerate_pair() {
        let rho = qubit(7);
        let priors = PriorPair::new(0.4, 0.6).unwrap();
        let scan = copy_scan(&rho, &rho, priors, 4, DEFAULT_DIM_CAP).unwrap();
        assert!(scan.xi_qcb.finite().unwrap() < 1e-12);
        let mut last_rate = f64::INFINITY;
        for row in &scan.rows {
            assert!((row.p_err - 0.4).abs() < 1e-11);
            assert!(row.p_err <= row.theorem1_bound + 1e-12);
            let rate = row.rate.finite().unwrap();
            assert!(rate <= last_rate);
            last_rate = rate;
        }
    }

    #[test]
    fn copy_scan_orthogonal_pure_states() {
        let zero = diag_state(&[1.0, 0.0]);
        let one = diag_state(&[0.0, 1.0]);
        let scan = copy_scan(&zero, &one, PriorPair::uniform(), 3, DEFAULT_DIM_CAP).unwrap();
        assert!(scan.xi_qcb.is_infinite());
        for row in &scan.rows {
            assert!(row.p_err.abs() < 1e-15);
            assert!(row.rate.is_infinite());
        }
    }

    #[test]
    fn copy_scan_rate_converges_from_above() {
        let rho0 = qubit(8);
        let rho1 = qubit(9);
        let scan = copy_scan(&rho0, &rho1, PriorPair::uniform(), 6, DEFAULT_DIM_CAP).unwrap();
        let xi = scan.xi_qcb.finite().unwrap();
        let gap = |row: &CopyScanRow<f64>| row.rate.finite().unwrap() - xi;
        for row in &scan.rows {
            assert!(row.p_err <= row.theorem1_bound + 1e-12, "n = {}", row.n);
            // Theorem-1 certificate: rate(n) >= xi + |ln(prior factor)|/n > xi
            assert!(gap(row) > 0.0, "n = {}", row.n);
        }
        assert!(gap(&scan.rows[5]) < gap(&scan.rows[1]));
    }

    #[test]
    fn csv_format() {
        let rho0 = diag_state(&[0.75, 0.25]);
        let rho1 = diag_state(&[0.25, 0.75]);
        let scan = copy_scan(&rho0, &rho1, PriorPair::uniform(), 2, DEFAULT_DIM_CAP).unwrap();
        let csv = scan.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,p_err,rate,theorem1_bound"));
        let row1 = lines.next().unwrap();
        assert!(row1.starts_with("1,2.5000000000000000e-1,"));
        assert_eq!(lines.count(), 1);

        let orth = copy_scan(
            &diag_state(&[1.0, 0.0]),
            &diag_state(&[0.0, 1.0]),
            PriorPair::uniform(),
            1,
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        assert!(orth.to_csv().lines().nth(1).unwrap().contains(",inf,"));
    }

    #[test]
    fn multiplicativity_of_q_under_tensor_powers() {
        for seed in 0..10 {
            let rho = qubit(seed);
            let sigma = qubit(seed + 50);
            let q1 = chernoff(&rho, &sigma).unwrap().q_value;
            let rho2 = tensor_power(&rho, 2, DEFAULT_DIM_CAP).unwrap();
            let sigma2 = tensor_power(&sigma, 2, DEFAULT_DIM_CAP).unwrap();
            let q2 = chernoff(&rho2, &sigma2).unwrap().q_value;
            assert!((q2 - q1 * q1).abs() < 1e-8, "seed {seed}");
        }
    }

    #[test]
    fn bell_diagonal_check() {
        // Purity of an n = 2 power built by scan matches direct tensor_power.
        let rho = qubit(11);
        let direct = tensor_power(&rho, 2, DEFAULT_DIM_CAP).unwrap();
        let scan = copy_scan(&rho, &qubit(12), PriorPair::uniform(), 2, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(scan.rows.len(), 2);
        assert_eq!(direct.dim(), 4);
    }
}
