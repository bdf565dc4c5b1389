//! Polar decomposition A = UP with a full unitary factor.
//!
//! P = (A*A)^{1/2} comes from the Hermitian eigendecomposition of A*A.
//! Range columns of U are A v_i / σ_i, re-orthonormalized by modified
//! Gram–Schmidt; kernel columns are completed deterministically from a
//! caller-supplied candidate list (standard basis vectors in index order
//! for `polar`).

use num_complex::Complex64;

use crate::error::Result;
use crate::matcore::matrix::ComplexMatrix;
use crate::matcore::spectral::hermitian_eig;

/// Singular values below `KERNEL_REL * σ_max` are treated as kernel
/// directions and their U columns are taken from the completion basis.
const KERNEL_REL: f64 = 1e-13;

/// A = U·P with U unitary (full, not merely a partial isometry) and
/// P Hermitian positive semidefinite.
#[derive(Clone, Debug)]
pub struct PolarDecomposition {
    pub unitary: ComplexMatrix,
    pub psd: ComplexMatrix,
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonalize `v` against `fixed` columns twice (re-orthogonalization
/// keeps the result orthonormal to machine precision).
fn orthogonalize(v: &mut [Complex64], fixed: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for u in fixed {
            let c = inner(u, v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= c * ui;
            }
        }
    }
}

/// Polar decomposition with the default kernel completion (standard basis
/// vectors in index order).
pub fn polar(a: &ComplexMatrix) -> Result<PolarDecomposition> {
    let n = a.dim();
    let candidates: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    polar_with_kernel_candidates(a, &candidates)
}

/// Polar decomposition with an explicit candidate list for the kernel
/// completion of U. The transform downstream must not depend on this
/// choice, which is exercised by tests.
pub fn polar_with_kernel_candidates(
    a: &ComplexMatrix,
    candidates: &[Vec<Complex64>],
) -> Result<PolarDecomposition> {
    a.check_finite()?;
    let n = a.dim();
    let gram = &a.adjoint() * a;
    let eig = hermitian_eig(&gram)?;

    let sigmas: Vec<f64> = eig
        .eigenvalues()
        .iter()
        .map(|&mu| mu.max(0.0).sqrt())
        .collect();
    let sigma_max = sigmas.first().copied().unwrap_or(0.0);
    let kernel_cut = sigma_max * KERNEL_REL;

    // Columns of W in eigenvalue order (σ nonincreasing); U = W V*.
    let mut fixed: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut kernel_slots: Vec<usize> = Vec::new();
    let mut columns: Vec<Option<Vec<Complex64>>> = vec![None; n];

    for (k, &sigma) in sigmas.iter().enumerate() {
        if sigma <= kernel_cut {
            kernel_slots.push(k);
            continue;
        }
        let v = eig.eigenvectors().column(k);
        let mut u: Vec<Complex64> = a.mul_vec(&v).iter().map(|z| z / sigma).collect();
        orthogonalize(&mut u, &fixed);
        let nrm = norm(&u);
        if nrm <= 0.5 {
            // Numerically indistinguishable from the span of earlier
            // columns; fall back to completion.
            kernel_slots.push(k);
            continue;
        }
        for x in &mut u {
            *x /= nrm;
        }
        columns[k] = Some(u.clone());
        fixed.push(u);
    }

    // A candidate survives if it keeps a noticeable component outside the
    // span of the fixed columns. Some standard basis vector always has
    // component at least 1/√n along any unit direction of the complement,
    // so half that is a safe cut.
    let keep_cut = 0.5 / (n as f64).sqrt();
    let mut cand_iter = candidates.iter();
    for slot in kernel_slots {
        loop {
            let mut c = cand_iter
                .next()
                .expect("completion candidates exhausted before U was full")
                .clone();
            orthogonalize(&mut c, &fixed);
            let nrm = norm(&c);
            if nrm <= keep_cut {
                continue;
            }
            for x in &mut c {
                *x /= nrm;
            }
            columns[slot] = Some(c.clone());
            fixed.push(c);
            break;
        }
    }

    let mut w = ComplexMatrix::zeros(n);
    for (k, col) in columns.iter().enumerate() {
        w.set_column(k, col.as_ref().expect("all U columns assigned"));
    }

    let unitary = &w * &eig.eigenvectors().adjoint();
    let psd = {
        let v = eig.eigenvectors();
        let mut p = ComplexMatrix::zeros(n);
        for (k, &sigma) in sigmas.iter().enumerate() {
            if sigma == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * sigma;
                for j in 0..n {
                    p[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        p
    };

    Ok(PolarDecomposition { unitary, psd })
}

impl PolarDecomposition {
    /// ‖U*U − I‖_F.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.unitary.dim();
        let gram = &self.unitary.adjoint() * &self.unitary;
        (&gram - &ComplexMatrix::identity(n)).frobenius_norm()
    }

    /// ‖U·P − A‖_F for the original matrix A.
    pub fn reconstruction_error(&self, a: &ComplexMatrix) -> f64 {
        (&(&self.unitary * &self.psd) - a).frobenius_norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::ginibre;
    use crate::tol;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn counterexample_matrix() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 0.0, 36.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 36.0, 0.0, 0.0],
            vec![0.0, 0.0, 49.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn counterexample_matrix_factors() {
        let pd = polar(&counterexample_matrix()).unwrap();
        let u_expected = ComplexMatrix::cyclic_permutation(4);
        let p_expected = ComplexMatrix::from_diag(&[1.0, 36.0, 49.0, 36.0]);
        assert!((&pd.unitary - &u_expected).frobenius_norm() <= 1e-12);
        assert!((&pd.psd - &p_expected).frobenius_norm() <= 1e-9);
    }

    #[test]
    fn unitary_input_gives_identity_psd() {
        let u = ComplexMatrix::cyclic_permutation(5);
        let pd = polar(&u).unwrap();
        assert!((&pd.unitary - &u).frobenius_norm() <= 1e-12);
        assert!((&pd.psd - &ComplexMatrix::identity(5)).frobenius_norm() <= 1e-9);
    }

    #[test]
    fn rank_deficient_diagonal() {
        let a = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let pd = polar(&a).unwrap();
        assert!(pd.unitarity_defect() <= tol::TOL_ORTH);
        assert!(pd.reconstruction_error(&a) <= tol::TOL_RECON * 2.0);
    }

    #[test]
    fn zero_matrix_completes_to_identity() {
        let a = ComplexMatrix::zeros(3);
        let pd = polar(&a).unwrap();
        assert!(pd.unitarity_defect() <= 1e-12);
        assert_eq!(pd.psd.frobenius_norm(), 0.0);
    }

    #[test]
    fn random_reconstruction_including_rank_deficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..200 {
            let n = 2 + trial % 7;
            let mut a = ginibre(n, &mut rng);
            if trial % 3 == 0 && n > 1 {
                // zero the last column to force a kernel
                for i in 0..n {
                    a[(i, n - 1)] = num_complex::Complex64::new(0.0, 0.0);
                }
            }
            let pd = polar(&a).unwrap();
            let scale = 1.0 + a.frobenius_norm();
            assert!(
                pd.reconstruction_error(&a) <= tol::TOL_RECON * scale,
                "trial {trial}: reconstruction {:.3e}",
                pd.reconstruction_error(&a)
            );
            assert!(
                pd.unitarity_defect() <= tol::TOL_ORTH * (n as f64),
                "trial {trial}: unitarity {:.3e}",
                pd.unitarity_defect()
            );
            let defect = pd.psd.hermitian_defect();
            assert!(defect <= tol::TOL_HERM * scale);
        }
    }
}
