//! Hermitian eigendecomposition by cyclic Jacobi with complex rotations,
//! and the spectral calculus built on it (fractional powers, eigenspace
//! projections).
//!
//! Rotations are applied pairwise in cyclic order until the off-diagonal
//! Frobenius mass drops below `TOL_OFF * ||M||_F`. The solver is
//! deterministic for a fixed input, which the rest of the crate relies on
//! for reproducible reports.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::matrix::ComplexMatrix;
use crate::tol;

/// Eigenvalues (real, nonincreasing) and orthonormal eigenvectors of a
/// Hermitian matrix.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

/// One eigenspace after grouping nearly equal eigenvalues: the
/// representative value and the orthogonal projection onto the space.
#[derive(Clone, Debug)]
pub struct EigenGroup {
    pub value: f64,
    pub projection: ComplexMatrix,
}

impl SpectralDecomposition {
    /// Eigenvalues sorted nonincreasing, ties broken by original index.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, in the same
    /// order as `eigenvalues`.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// V f(Λ) V*, the spectral function calculus.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let flam = f(lam);
            if flam == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * flam;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// V Λ V*, which must match the input to `hermitian_eig` within
    /// `TOL_RECON`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|x| x)
    }

    /// Group eigenvalues within `tol` of each other (walking the sorted
    /// list) and return one projection per group.
    pub fn group_projections(&self, tol: f64) -> Vec<EigenGroup> {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut groups = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && (self.eigenvalues[end - 1] - self.eigenvalues[end]).abs() <= tol {
                end += 1;
            }
            let value =
                self.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
            let mut projection = ComplexMatrix::zeros(n);
            for k in start..end {
                for i in 0..n {
                    let vik = v[(i, k)];
                    for j in 0..n {
                        projection[(i, j)] += vik * v[(j, k)].conj();
                    }
                }
            }
            groups.push(EigenGroup { value, projection });
            start = end;
        }
        groups
    }
}

fn off_diagonal_mass(w: &ComplexMatrix) -> f64 {
    let n = w.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += w[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as (M + M*)/2 before decomposing; inputs whose
/// Hermitian defect exceeds `TOL_HERM` (relative) are rejected.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    m.check_finite()?;
    let scale = 1.0 + m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > tol::TOL_HERM * scale {
        return Err(Error::NotHermitian { defect });
    }

    let n = m.dim();
    let mut w = m.symmetrize();
    let mut v = ComplexMatrix::identity(n);
    let norm = w.frobenius_norm();
    let target = tol::JACOBI_OFF * norm;

    let mut sweeps = 0;
    while off_diagonal_mass(&w) > target {
        if sweeps >= tol::MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off_diagonal_mass(&w),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let a = w[(p, q)];
                let mag = a.norm();
                if mag <= target / (n * n) as f64 {
                    continue;
                }
                // Unitary rotation J (identity outside the p,q block) with
                //   J[p][p] = c, J[p][q] = s·f, J[q][p] = −s·conj(f),
                //   J[q][q] = c, f = a/|a|,
                // chosen so that (J* W J)[p][q] = 0.
                let f = a / mag;
                let theta = (w[(q, q)].re - w[(p, p)].re) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // W <- W J (column update)
                for k in 0..n {
                    let wkp = w[(k, p)];
                    let wkq = w[(k, q)];
                    w[(k, p)] = wkp * c - wkq * (s * f.conj());
                    w[(k, q)] = wkp * (s * f) + wkq * c;
                }
                // W <- J* W (row update)
                for k in 0..n {
                    let wpk = w[(p, k)];
                    let wqk = w[(q, k)];
                    w[(p, k)] = wpk * c - wqk * (s * f);
                    w[(q, k)] = wpk * (s * f.conj()) + wqk * c;
                }
                w[(p, q)] = Complex64::new(0.0, 0.0);
                w[(q, p)] = Complex64::new(0.0, 0.0);
                w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
                w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);

                // V <- V J (accumulate eigenvectors)
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * (s * f.conj());
                    v[(k, q)] = vkp * (s * f) + vkq * c;
                }
            }
        }
        sweeps += 1;
    }

    // Sort nonincreasing, ties broken by original index (stable sort).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(j, j)].re.partial_cmp(&w[(i, i)].re).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&k| w[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, dst)] = v[(i, src)];
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Fractional power M^α of a Hermitian PSD matrix via the spectral
/// calculus, with the conventions 0^α = 0 for α > 0 and 0^0 = 1
/// (so M^0 = I).
///
/// Eigenvalues slightly negative from roundoff (within `TOL_PSD`,
/// relative) are clamped to zero; anything more negative is rejected.
pub fn psd_power(m: &ComplexMatrix, alpha: f64) -> Result<ComplexMatrix> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "power exponent must be nonnegative, got {alpha}"
        )));
    }
    let eig = hermitian_eig(m)?;
    let max_abs = eig
        .eigenvalues()
        .iter()
        .fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    let clamp = tol::TOL_PSD * (1.0 + max_abs);
    if let Some(&min) = eig.eigenvalues().last() {
        if min < -clamp {
            return Err(Error::NotPsd(min));
        }
    }
    Ok(eig.apply(|lam| lam.max(0.0).powf(alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{ginibre, random_hermitian};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_unit_eigenvalues() {
        let eig = hermitian_eig(&ComplexMatrix::identity(5)).unwrap();
        for &lam in eig.eigenvalues() {
            assert_eq!(lam, 1.0);
        }
    }

    #[test]
    fn counterexample_gram_matrix_spectrum() {
        // A*A of the integer counterexample matrix.
        let m = ComplexMatrix::from_diag(&[1.0, 1296.0, 2401.0, 1296.0]);
        let eig = hermitian_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues(), &[2401.0, 1296.0, 1296.0, 1.0]);
    }

    #[test]
    fn reconstruction_of_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2, 3, 5, 8, 13] {
            let h = random_hermitian(n, &mut rng);
            let eig = hermitian_eig(&h).unwrap();
            let err = (&eig.reconstruct() - &h).frobenius_norm();
            assert!(
                err <= tol::TOL_RECON * (1.0 + h.frobenius_norm()),
                "n={n}: reconstruction error {err:.3e}"
            );
            let v = eig.eigenvectors();
            let gram = &v.adjoint() * v;
            let orth = (&gram - &ComplexMatrix::identity(n)).frobenius_norm();
            assert!(orth <= tol::TOL_ORTH * (n as f64), "orth defect {orth:.3e}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = ginibre(4, &mut rng);
        assert!(matches!(
            hermitian_eig(&g),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn sorted_nonincreasing_eigenvalues_of_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let g = ginibre(6, &mut rng);
        let m = &g.adjoint() * &g;
        let eig = hermitian_eig(&m).unwrap();
        let alpha = 0.37;
        let pow = psd_power(&m, alpha).unwrap();
        let eig_pow = hermitian_eig(&pow).unwrap();
        // eigenvalues of M^α are exactly {λ_i^α}
        for (a, b) in eig_pow
            .eigenvalues()
            .iter()
            .zip(eig.eigenvalues().iter().map(|&l| l.max(0.0).powf(alpha)))
        {
            assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn psd_power_of_diagonal_squares() {
        let m = ComplexMatrix::from_diag(&[1.0, 1296.0, 2401.0, 1296.0]);
        let half = psd_power(&m, 0.5).unwrap();
        let expected = ComplexMatrix::from_diag(&[1.0, 36.0, 49.0, 36.0]);
        assert!((&half - &expected).frobenius_norm() <= 1e-9 * expected.frobenius_norm());
    }

    #[test]
    fn power_zero_and_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = ginibre(5, &mut rng);
        let m = &(&g.adjoint() * &g) + &ComplexMatrix::identity(5);
        let one = psd_power(&m, 1.0).unwrap();
        assert!((&one - &m).frobenius_norm() <= tol::TOL_RECON * (1.0 + m.frobenius_norm()));
        let zero = psd_power(&m, 0.0).unwrap();
        assert!((&zero - &ComplexMatrix::identity(5)).frobenius_norm() <= tol::TOL_RECON * 10.0);
    }

    #[test]
    fn power_inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = ginibre(5, &mut rng);
        let m = &g.adjoint() * &g;
        let third = psd_power(&m, 1.0 / 3.0).unwrap();
        let back = psd_power(&third, 3.0).unwrap();
        assert!(
            (&back - &m).frobenius_norm() <= tol::TOL_RECON * (1.0 + m.frobenius_norm()) * 10.0
        );
    }

    #[test]
    fn rejects_indefinite_input() {
        let m = ComplexMatrix::from_diag(&[1.0, -0.5]);
        assert!(matches!(psd_power(&m, 0.5), Err(Error::NotPsd(_))));
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        let m = ComplexMatrix::from_diag(&[2.0, 0.0]);
        let zero = psd_power(&m, 0.0).unwrap();
        assert!((&zero - &ComplexMatrix::identity(2)).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn group_projections_resolve_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_hermitian(6, &mut rng);
        let eig = hermitian_eig(&h).unwrap();
        let max_abs = eig.eigenvalues().iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
        let groups = eig.group_projections(tol::TOL_GROUP * max_abs);
        let mut sum = ComplexMatrix::zeros(6);
        for g in &groups {
            sum = &sum + &g.projection;
        }
        assert!((&sum - &ComplexMatrix::identity(6)).frobenius_norm() <= 1e-10);
    }
}
