//! The λ-Aluthge transform Δ_λ(A) = P^λ U P^{1−λ}, its iteration, and
//! convergence/normality diagnostics.
//!
//! The iterated transform converges for every complex matrix and its
//! limit is normal; the self-commutator Frobenius norm along the way,
//! however, is *not* monotone (see the `family` module and the
//! counterexample in the CLI).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{
    self_commutator, polar, psd_power, ComplexMatrix, PolarDecomposition,
};
use crate::tol;

/// The transform parameter λ, restricted to the open interval (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AluthgeParams {
    lambda: f64,
}

impl AluthgeParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda > 0.0 && lambda < 1.0 {
            Ok(AluthgeParams { lambda })
        } else {
            Err(Error::InvalidParameter(format!(
                "lambda must lie strictly between 0 and 1, got {lambda}"
            )))
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Δ_λ(A) = P^λ U P^{1−λ} where A = UP is the polar decomposition.
///
/// The result has the same eigenvalues (with multiplicity) as A and does
/// not depend on how U was completed on the kernel of P.
pub fn aluthge_transform(a: &ComplexMatrix, p: AluthgeParams) -> Result<ComplexMatrix> {
    let pd = polar(a)?;
    aluthge_from_polar(&pd, p)
}

/// The transform evaluated from an already-computed polar decomposition.
pub fn aluthge_from_polar(pd: &PolarDecomposition, p: AluthgeParams) -> Result<ComplexMatrix> {
    let left = psd_power(&pd.psd, p.lambda())?;
    let right = psd_power(&pd.psd, 1.0 - p.lambda())?;
    Ok(&(&left * &pd.unitary) * &right)
}

/// ‖[A*, A]‖_F, zero exactly when A is normal.
pub fn self_comm_norm(a: &ComplexMatrix) -> f64 {
    self_commutator(a).frobenius_norm()
}

/// ‖[Δ_λ(A)*, Δ_λ(A)]‖_F / ‖[A*, A]‖_F.
///
/// The conjectured bound was 1; it can in fact exceed 1, but never 2.
/// Undefined (error) for normal A.
pub fn contraction_ratio(a: &ComplexMatrix, p: AluthgeParams) -> Result<f64> {
    let denom = self_comm_norm(a);
    let scale = 1.0 + a.frobenius_norm_sq();
    if denom <= tol::TOL_NONNORMAL * scale {
        return Err(Error::NormalInput);
    }
    let transformed = aluthge_transform(a, p)?;
    Ok(self_comm_norm(&transformed) / denom)
}

/// The iterate sequence A, Δ_λ(A), Δ_λ²(A), … with per-step diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct AluthgeTrajectory {
    pub lambda: f64,
    /// [A, Δ_λ(A), Δ_λ²(A), …]; one longer than `step_deltas`.
    pub iterates: Vec<ComplexMatrix>,
    /// ‖[Δ_λ^m(A)*, Δ_λ^m(A)]‖_F at every iterate.
    pub comm_norms: Vec<f64>,
    /// ‖Δ_λ^{m+1}(A) − Δ_λ^m(A)‖_F between consecutive iterates.
    pub step_deltas: Vec<f64>,
    pub converged: bool,
    /// Self-commutator norm of the final iterate.
    pub limit_normality: f64,
}

/// Serializable view of a trajectory; iterate matrices are included only
/// when requested.
#[derive(Serialize)]
pub struct TrajectoryReport<'a> {
    pub lambda: f64,
    pub comm_norms: &'a [f64],
    pub step_deltas: &'a [f64],
    pub converged: bool,
    pub limit_normality: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterates: Option<&'a [ComplexMatrix]>,
}

impl AluthgeTrajectory {
    pub fn report(&self, include_iterates: bool) -> TrajectoryReport<'_> {
        TrajectoryReport {
            lambda: self.lambda,
            comm_norms: &self.comm_norms,
            step_deltas: &self.step_deltas,
            converged: self.converged,
            limit_normality: self.limit_normality,
            iterates: include_iterates.then_some(self.iterates.as_slice()),
        }
    }
}

/// Iterate Δ_λ until consecutive iterates differ by less than `step_tol`
/// in Frobenius norm, or `max_steps` transforms have been applied.
pub fn iterate(
    a: &ComplexMatrix,
    p: AluthgeParams,
    max_steps: usize,
    step_tol: f64,
) -> Result<AluthgeTrajectory> {
    if max_steps < 1 {
        return Err(Error::InvalidParameter(
            "max_steps must be at least 1".into(),
        ));
    }
    let mut iterates = vec![a.clone()];
    let mut comm_norms = vec![self_comm_norm(a)];
    let mut step_deltas = Vec::new();
    let mut converged = false;

    for _ in 0..max_steps {
        let current = iterates.last().unwrap();
        let next = aluthge_transform(current, p)?;
        let delta = (&next - current).frobenius_norm();
        comm_norms.push(self_comm_norm(&next));
        step_deltas.push(delta);
        iterates.push(next);
        if delta < step_tol {
            converged = true;
            break;
        }
    }

    let limit_normality = *comm_norms.last().unwrap();
    Ok(AluthgeTrajectory {
        lambda: p.lambda(),
        iterates,
        comm_norms,
        step_deltas,
        converged,
        limit_normality,
    })
}

/// Coefficients c_1, …, c_n of the characteristic polynomial
/// x^n + c_1 x^{n−1} + … + c_n, by the Faddeev–LeVerrier recurrence.
pub fn char_poly(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut coeffs = Vec::with_capacity(n);
    let mut m = a.clone();
    for k in 1..=n {
        let c = -m.trace() / k as f64;
        coeffs.push(c);
        if k < n {
            let mut shifted = m.clone();
            for i in 0..n {
                shifted[(i, i)] += c;
            }
            m = a * &shifted;
        }
    }
    coeffs
}

/// Max-norm distance between the characteristic-polynomial coefficients
/// of A and of Δ_λ(A). A small value certifies that the spectrum is
/// preserved, without needing a general eigensolver.
pub fn eigenvalue_preservation_check(a: &ComplexMatrix, p: AluthgeParams) -> Result<f64> {
    let transformed = aluthge_transform(a, p)?;
    let ca = char_poly(a);
    let cb = char_poly(&transformed);
    Ok(ca
        .iter()
        .zip(&cb)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::polar_with_kernel_candidates;
    use crate::random::{ginibre, random_normal};
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

    fn half() -> AluthgeParams {
        AluthgeParams::new(0.5).unwrap()
    }

    /// Determinant by LU with partial pivoting; independent oracle for the
    /// characteristic-polynomial route.
    fn det_lu(a: &ComplexMatrix) -> Complex64 {
        let n = a.dim();
        let mut m = a.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| m[(i, col)].norm().partial_cmp(&m[(j, col)].norm()).unwrap())
                .unwrap();
            if m[(pivot, col)].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    let tmp = m[(col, j)];
                    m[(col, j)] = m[(pivot, j)];
                    m[(pivot, j)] = tmp;
                }
                det = -det;
            }
            det *= m[(col, col)];
            for i in (col + 1)..n {
                let f = m[(i, col)] / m[(col, col)];
                for j in col..n {
                    let sub = f * m[(col, j)];
                    m[(i, j)] -= sub;
                }
            }
        }
        det
    }

    #[test]
    fn params_reject_endpoints() {
        assert!(AluthgeParams::new(0.0).is_err());
        assert!(AluthgeParams::new(1.0).is_err());
        assert!(AluthgeParams::new(0.5).is_ok());
    }

    #[test]
    fn counterexample_transform_self_commutator() {
        let a = counterexample_matrix();
        let t = aluthge_transform(&a, half()).unwrap();
        let c = self_commutator(&t);
        let expected = ComplexMatrix::from_diag(&[0.0, 1728.0, 0.0, -1728.0]);
        assert!((&c - &expected).frobenius_norm() <= 1e-6);
        assert!((self_comm_norm(&t).powi(2) - 5_971_968.0).abs() <= 1e-3);
    }

    #[test]
    fn self_comm_norms_of_counterexample() {
        let a = counterexample_matrix();
        assert_eq!(self_comm_norm(&a), 5_796_100.0_f64.sqrt());
        let h = a.symmetrize();
        assert!(self_comm_norm(&h) <= 1e-12 * (1.0 + h.frobenius_norm_sq()));
    }

    #[test]
    fn normal_matrices_are_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let a = random_normal(4, &mut rng);
            let t = aluthge_transform(&a, half()).unwrap();
            let err = (&t - &a).frobenius_norm();
            assert!(err <= 10.0 * tol::TOL_RECON * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn contraction_ratio_of_counterexample() {
        let a = counterexample_matrix();
        let r = contraction_ratio(&a, half()).unwrap();
        let expected = (5_971_968.0_f64 / 5_796_100.0).sqrt();
        assert!((r - expected).abs() <= 1e-9);
        assert!(r > 1.0, "the conjectured contraction fails here");
    }

    #[test]
    fn contraction_ratio_rejects_normal_input() {
        let d = ComplexMatrix::from_diag(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            contraction_ratio(&d, half()),
            Err(Error::NormalInput)
        ));
    }

    #[test]
    fn ratio_stays_in_factor_two_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..100 {
            let n = 2 + trial % 6;
            let a = ginibre(n, &mut rng);
            for lam in [0.1, 0.5, 0.9] {
                let p = AluthgeParams::new(lam).unwrap();
                let r = contraction_ratio(&a, p).unwrap();
                assert!(r > 0.0 && r <= 2.0 + 1e-8, "ratio {r} out of (0, 2]");
            }
        }
    }

    #[test]
    fn iterate_on_normal_input_stops_immediately() {
        let d = ComplexMatrix::from_diag(&[2.0, -1.0, 0.5]);
        let tr = iterate(&d, half(), 50, 1e-10).unwrap();
        assert!(tr.converged);
        assert_eq!(tr.iterates.len(), 2);
        assert_eq!(tr.comm_norms.len(), 2);
        assert_eq!(tr.step_deltas.len(), 1);
    }

    #[test]
    fn iterate_random_matrix_converges_to_normal() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = ginibre(4, &mut rng);
        // the contraction rate here is mild (~0.976 per step), so the
        // budget has to be generous
        let tr = iterate(&a, half(), 2000, 1e-10).unwrap();
        assert!(tr.converged, "took {} steps", tr.step_deltas.len());
        assert!(tr.limit_normality < 1e-6, "limit normality {:.3e}", tr.limit_normality);
    }

    #[test]
    fn counterexample_norm_sequence_is_not_monotone() {
        let tr = iterate(&counterexample_matrix(), half(), 5, 1e-10).unwrap();
        assert!(
            tr.comm_norms[1] > tr.comm_norms[0],
            "{} vs {}",
            tr.comm_norms[1],
            tr.comm_norms[0]
        );
    }

    #[test]
    fn trajectory_report_hides_iterates_unless_verbose() {
        let tr = iterate(&counterexample_matrix(), half(), 2, 1e-10).unwrap();
        let compact = serde_json::to_value(tr.report(false)).unwrap();
        assert!(compact.get("iterates").is_none());
        let verbose = serde_json::to_value(tr.report(true)).unwrap();
        assert!(verbose.get("iterates").is_some());
    }

    #[test]
    fn spectrum_preserved_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for trial in 0..100 {
            let n = 2 + trial % 5;
            let a = ginibre(n, &mut rng);
            for lam in [0.1, 0.25, 0.5, 0.75, 0.9] {
                let p = AluthgeParams::new(lam).unwrap();
                let d = eigenvalue_preservation_check(&a, p).unwrap();
                let bound = 1e-6 * (1.0 + a.frobenius_norm().powi(n as i32));
                assert!(d <= bound, "n={n} lambda={lam}: distance {d:.3e}");
            }
        }
    }

    #[test]
    fn char_poly_constant_term_matches_determinant() {
        let a = counterexample_matrix();
        let coeffs = char_poly(&a);
        // det(xI − A) at x = 0 is (−1)^n det A; with n = 4 the constant
        // coefficient c_4 equals det(−A) = det A.
        let det = det_lu(&a);
        assert!((det.re + 63_504.0).abs() <= 1e-6 && det.im.abs() <= 1e-9);
        assert!((coeffs[3] - det).norm() <= 1e-5);

        let t = aluthge_transform(&a, half()).unwrap();
        let ct = char_poly(&t);
        for (x, y) in coeffs.iter().zip(&ct) {
            assert!((x - y).norm() <= 1e-5);
        }
    }

    #[test]
    fn nilpotent_block_char_poly_is_power() {
        let mut j = ComplexMatrix::zeros(4);
        for i in 0..3 {
            j[(i, i + 1)] = Complex64::new(1.0, 0.0);
        }
        let coeffs = char_poly(&j);
        for c in &coeffs {
            assert!(c.norm() <= 1e-12);
        }
        let d = eigenvalue_preservation_check(&j, half()).unwrap();
        assert!(d <= 1e-10);
    }

    #[test]
    fn transform_independent_of_kernel_completion() {
        // Singular matrix, so U genuinely needs completion.
        let mut a = counterexample_matrix();
        for i in 0..4 {
            a[(i, 3)] = Complex64::new(0.0, 0.0);
        }
        let n = 4;
        let forward: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                let mut e = vec![Complex64::new(0.0, 0.0); n];
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        let mut backward = forward.clone();
        backward.reverse();
        // a complex phase on one candidate, to vary the completion further
        let mut phased = forward.clone();
        for e in &mut phased {
            for x in e.iter_mut() {
                *x *= Complex64::new(0.6, 0.8);
            }
        }

        let p = half();
        let base = aluthge_from_polar(&polar_with_kernel_candidates(&a, &forward).unwrap(), p)
            .unwrap();
        for cands in [backward, phased] {
            let alt =
                aluthge_from_polar(&polar_with_kernel_candidates(&a, &cands).unwrap(), p).unwrap();
            let err = (&alt - &base).frobenius_norm();
            assert!(
                err <= 10.0 * tol::TOL_RECON * (1.0 + a.frobenius_norm()),
                "completion-dependent transform: {err:.3e}"
            );
        }
    }
}
