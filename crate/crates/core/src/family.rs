//! The weighted cyclic-shift family A_{ε,s} = U·diag(ε, 1, s, 1), whose
//! self-commutator norms have closed forms before and after the
//! transform. Optimizing the closed-form ratio produces the sharp
//! lower-bound witnesses √((1+√2)/2) (λ = 1/2, s = 2^{1/4}) and √(3/2)
//! (s = √2, λ → 0⁺), both in the limit ε → 0⁺.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::transform::{aluthge_transform, self_comm_norm, AluthgeParams};

/// One parameter point (ε, s, λ) of the family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilyPoint {
    pub eps: f64,
    pub s: f64,
    pub lambda: f64,
}

impl FamilyPoint {
    pub fn new(eps: f64, s: f64, lambda: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "eps must be a positive finite real, got {eps}"
            )));
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "s must be a positive finite real, got {s}"
            )));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie strictly between 0 and 1, got {lambda}"
            )));
        }
        Ok(FamilyPoint { eps, s, lambda })
    }

    pub fn params(&self) -> AluthgeParams {
        AluthgeParams::new(self.lambda).expect("validated on construction")
    }
}

/// Closed-form and direct (matrix) evaluations at one family point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FamilyEvaluation {
    pub eps: f64,
    pub s: f64,
    pub lambda: f64,
    /// Closed-form ‖[A*, A]‖_F².
    pub den_sq: f64,
    /// Closed-form ‖[Δ_λ(A)*, Δ_λ(A)]‖_F².
    pub num_sq: f64,
    /// √(num_sq / den_sq); `None` at numerically normal points.
    pub ratio: Option<f64>,
    /// Same quantities computed from the explicit 4×4 matrices.
    pub direct_den_sq: f64,
    pub direct_num_sq: f64,
    pub direct_ratio: Option<f64>,
    /// The point is normal (ε = s = 1) and the ratio is undefined there.
    pub degenerate: bool,
}

/// Result of a grid scan: per-point evaluations plus the maximizer.
#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub evaluations: Vec<FamilyEvaluation>,
    pub summary: ScanSummary,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanSummary {
    pub max_ratio: f64,
    pub argmax: FamilyPoint,
}

/// The explicit matrix U·diag(ε, 1, s, 1): invertible, with |A| = diag(ε, 1, s, 1).
pub fn build_family_matrix(pt: &FamilyPoint) -> ComplexMatrix {
    let u = ComplexMatrix::cyclic_permutation(4);
    let p = ComplexMatrix::from_diag(&[pt.eps, 1.0, pt.s, 1.0]);
    &u * &p
}

/// ‖[A*, A]‖_F² = 2(1−ε²)² + 2(s²−1)².
pub fn closed_form_den_sq(pt: &FamilyPoint) -> f64 {
    let e2 = pt.eps * pt.eps;
    let s2 = pt.s * pt.s;
    2.0 * (1.0 - e2).powi(2) + 2.0 * (s2 - 1.0).powi(2)
}

/// ‖[Δ_λ(A)*, Δ_λ(A)]‖_F², the sum of four squared differences of the
/// cyclically shifted squared weights ε^{2−2λ}, s^{2λ}, s^{2−2λ}, ε^{2λ}.
pub fn closed_form_num_sq(pt: &FamilyPoint) -> f64 {
    let l = pt.lambda;
    let e_hi = pt.eps.powf(2.0 - 2.0 * l);
    let e_lo = pt.eps.powf(2.0 * l);
    let s_hi = pt.s.powf(2.0 - 2.0 * l);
    let s_lo = pt.s.powf(2.0 * l);
    (e_hi - e_lo).powi(2) + (s_lo - e_hi).powi(2) + (s_hi - s_lo).powi(2) + (e_lo - s_hi).powi(2)
}

/// φ(x) = x/(x² − 2x + 2), the squared-ratio profile at λ = 1/2 as
/// ε → 0⁺, in the variable x = s². Maximized at x = √2 with value
/// (1+√2)/2.
pub fn ratio_fn_half(x: f64) -> f64 {
    x / (x * x - 2.0 * x + 2.0)
}

/// F_λ(x) = (x^{2λ} + x^{2−2λ} − x)/(x² − 2x + 2), the squared-ratio
/// profile at general λ as ε → 0⁺. Symmetric under λ ↔ 1−λ and bounded
/// by `envelope`.
pub fn ratio_fn_lambda(x: f64, lambda: f64) -> f64 {
    (x.powf(2.0 * lambda) + x.powf(2.0 - 2.0 * lambda) - x) / (x * x - 2.0 * x + 2.0)
}

/// H(x) = (x² − x + 1)/(x² − 2x + 2), the upper envelope of F_λ over
/// λ ∈ (0, 1). Maximized at x = 2 with value 3/2.
pub fn envelope(x: f64) -> f64 {
    (x * x - x + 1.0) / (x * x - 2.0 * x + 2.0)
}

/// Evaluate closed forms and the direct matrix computation at every point
/// of the (λ, s) grid for a fixed ε.
pub fn family_scan(eps: f64, lambdas: &[f64], s_grid: &[f64]) -> Result<ScanResult> {
    if lambdas.is_empty() || s_grid.is_empty() {
        return Err(Error::InvalidParameter("scan grids must be nonempty".into()));
    }
    let mut evaluations = Vec::with_capacity(lambdas.len() * s_grid.len());
    let mut best: Option<(f64, FamilyPoint)> = None;

    for &lambda in lambdas {
        for &s in s_grid {
            let pt = FamilyPoint::new(eps, s, lambda)?;
            let ev = evaluate_point(&pt)?;
            if let Some(r) = ev.ratio {
                if best.map_or(true, |(b, _)| r > b) {
                    best = Some((r, pt));
                }
            }
            evaluations.push(ev);
        }
    }

    let (max_ratio, argmax) = best.ok_or(Error::NormalInput)?;
    Ok(ScanResult {
        evaluations,
        summary: ScanSummary { max_ratio, argmax },
    })
}

/// Evaluate one family point, cross-checking the closed forms against the
/// explicit matrices.
pub fn evaluate_point(pt: &FamilyPoint) -> Result<FamilyEvaluation> {
    let den_sq = closed_form_den_sq(pt);
    let num_sq = closed_form_num_sq(pt);

    let a = build_family_matrix(pt);
    let direct_den_sq = self_comm_norm(&a).powi(2);
    let scale = 1.0 + a.frobenius_norm_sq();
    let degenerate = direct_den_sq.sqrt() <= crate::tol::TOL_NONNORMAL * scale;

    let (direct_num_sq, ratio, direct_ratio) = if degenerate {
        (
            self_comm_norm(&aluthge_transform(&a, pt.params())?).powi(2),
            None,
            None,
        )
    } else {
        let dn = self_comm_norm(&aluthge_transform(&a, pt.params())?).powi(2);
        (
            dn,
            Some((num_sq / den_sq).sqrt()),
            Some((dn / direct_den_sq).sqrt()),
        )
    };

    Ok(FamilyEvaluation {
        eps: pt.eps,
        s: pt.s,
        lambda: pt.lambda,
        den_sq,
        num_sq,
        ratio,
        direct_den_sq,
        direct_num_sq,
        direct_ratio,
        degenerate,
    })
}

/// Default s grid: 401 points, logarithmic from 10⁻¹ to 10¹.
pub fn default_s_grid() -> Vec<f64> {
    logspace(-1.0, 1.0, 401)
}

/// Default λ grid covering both endpoint regimes.
pub fn default_lambda_grid() -> Vec<f64> {
    vec![0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999]
}

/// `count` points 10^t with t equally spaced in [start, stop].
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count)
        .map(|k| {
            let t = start + (stop - start) * k as f64 / (count - 1) as f64;
            10f64.powf(t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::polar;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn point_validation() {
        assert!(FamilyPoint::new(0.0, 1.0, 0.5).is_err());
        assert!(FamilyPoint::new(1.0, -1.0, 0.5).is_err());
        assert!(FamilyPoint::new(1.0, 1.0, 1.0).is_err());
        assert!(FamilyPoint::new(1e-6, 2.0, 0.5).is_ok());
    }

    #[test]
    fn unit_point_is_the_plain_permutation() {
        let pt = FamilyPoint::new(1.0, 1.0, 0.5).unwrap();
        let a = build_family_matrix(&pt);
        let u = ComplexMatrix::cyclic_permutation(4);
        assert_eq!((&a - &u).frobenius_norm(), 0.0);
        assert_eq!(self_comm_norm(&a), 0.0);
    }

    #[test]
    fn polar_factor_is_the_diagonal_weight() {
        let pt = FamilyPoint::new(0.3, 2.0, 0.5).unwrap();
        let a = build_family_matrix(&pt);
        let pd = polar(&a).unwrap();
        let expected = ComplexMatrix::from_diag(&[0.3, 1.0, 2.0, 1.0]);
        assert!((&pd.psd - &expected).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn rescaled_point_reproduces_counterexample_weights() {
        // diag(36, 1, 36, 49)·cyclic is A_{ε,s} with (ε, s) = (1/36, 49/36)
        // scaled by 36; its |A| is the counterexample's P up to a cyclic
        // relabeling of the weights.
        let pt = FamilyPoint::new(1.0 / 36.0, 49.0 / 36.0, 0.5).unwrap();
        let a = build_family_matrix(&pt).scale(36.0);
        let pd = polar(&a).unwrap();
        let expected = ComplexMatrix::from_diag(&[1.0, 36.0, 49.0, 36.0]);
        assert!((&pd.psd - &expected).frobenius_norm() <= 1e-7);
    }

    #[test]
    fn den_closed_form_examples() {
        let pt = FamilyPoint::new(1.0, 1.0, 0.5).unwrap();
        assert_eq!(closed_form_den_sq(&pt), 0.0);

        let pt = FamilyPoint::new(0.5, 2.0, 0.5).unwrap();
        assert!((closed_form_den_sq(&pt) - 19.125).abs() <= 1e-12);

        // ε → 0 limit: 2 + 2(s²−1)²
        let s = 1.7;
        let pt = FamilyPoint::new(1e-9, s, 0.5).unwrap();
        let limit = 2.0 + 2.0 * (s * s - 1.0_f64).powi(2);
        assert!((closed_form_den_sq(&pt) - limit).abs() <= 1e-8);
    }

    #[test]
    fn num_closed_form_examples() {
        // λ = 1/2 simplifies to 2(s − ε)²
        for (eps, s) in [(0.3, 1.9), (0.01, 0.4), (2.0, 5.0)] {
            let pt = FamilyPoint::new(eps, s, 0.5).unwrap();
            let expected = 2.0 * (s - eps) * (s - eps);
            assert!((closed_form_num_sq(&pt) - expected).abs() <= 1e-10 * (1.0 + expected));
        }

        let pt = FamilyPoint::new(1.0, 1.0, 0.3).unwrap();
        assert_eq!(closed_form_num_sq(&pt), 0.0);

        // ε → 0⁺ at general λ: 2(x^{2λ} + x^{2−2λ} − x), x = s²
        let (s, lambda) = (1.5, 0.3);
        let x = s * s;
        let pt = FamilyPoint::new(1e-12, s, lambda).unwrap();
        let limit = 2.0 * (x.powf(2.0 * lambda) + x.powf(2.0 - 2.0 * lambda) - x);
        assert!((closed_form_num_sq(&pt) - limit).abs() <= 1e-6);
    }

    #[test]
    fn closed_forms_match_matrices() {
        // spot sample of the 1000-point acceptance sweep
        let mut state = 123456789u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let eps = 10f64.powf(-3.0 + 6.0 * next());
            let s = 10f64.powf(-3.0 + 6.0 * next());
            let lambda = 0.01 + 0.98 * next();
            let pt = FamilyPoint::new(eps, s, lambda).unwrap();
            let ev = evaluate_point(&pt).unwrap();
            assert!(
                (ev.den_sq - ev.direct_den_sq).abs() <= 1e-8 * (1.0 + ev.den_sq),
                "den mismatch at {pt:?}"
            );
            assert!(
                (ev.num_sq - ev.direct_num_sq).abs() <= 1e-8 * (1.0 + ev.num_sq),
                "num mismatch at {pt:?}: {} vs {}",
                ev.num_sq,
                ev.direct_num_sq
            );
        }
    }

    #[test]
    fn phi_maximum_and_values() {
        assert!((ratio_fn_half(SQRT2) - (1.0 + SQRT2) / 2.0).abs() <= 1e-15);
        assert!((ratio_fn_half(1.0) - 1.0).abs() <= 1e-15);

        // grid-scan oracle for the argmax
        let mut best = (0.0, 0.0);
        let mut x = 1e-4;
        while x <= 10.0 {
            let v = ratio_fn_half(x);
            if v > best.1 {
                best = (x, v);
            }
            x += 1e-4;
        }
        assert!((best.0 - SQRT2).abs() <= 1e-4);
        assert!((best.1 - (1.0 + SQRT2) / 2.0).abs() <= 1e-7);
    }

    #[test]
    fn envelope_maximum_at_two() {
        assert!((envelope(2.0) - 1.5).abs() <= 1e-15);
        for x in [0.5, 1.0, 1.5, 2.5, 4.0, 10.0] {
            assert!(envelope(x) <= 1.5 + 1e-15);
        }
    }

    #[test]
    fn f_half_equals_phi() {
        for x in [0.2, 0.9, 1.4, 2.0, 7.3] {
            assert!((ratio_fn_lambda(x, 0.5) - ratio_fn_half(x)).abs() <= 1e-12);
        }
    }

    #[test]
    fn f_near_endpoints_approaches_envelope_at_two() {
        for lambda in [1e-3, 1.0 - 1e-3] {
            assert!((ratio_fn_lambda(2.0, lambda) - 1.5).abs() <= 1e-2);
        }
    }

    #[test]
    fn f_symmetric_in_lambda() {
        for x in [0.3, 1.1, 2.0, 5.5] {
            for lambda in [0.1, 0.25, 0.4] {
                let a = ratio_fn_lambda(x, lambda);
                let b = ratio_fn_lambda(x, 1.0 - lambda);
                assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn convexity_bound_on_weight_sum() {
        for x in [0.05_f64, 0.4, 1.0, 1.9, 6.0, 40.0] {
            for lambda in [0.0, 0.1, 0.33, 0.5, 0.77, 1.0] {
                let lhs: f64 = x.powf(2.0 * lambda) + x.powf(2.0 - 2.0 * lambda);
                assert!(lhs <= 1.0 + x * x + 1e-12 * (1.0 + x * x));
            }
        }
    }

    #[test]
    fn scan_finds_the_half_lambda_witness() {
        let scan = family_scan(1e-6, &[0.5], &default_s_grid()).unwrap();
        let expected = ((1.0 + SQRT2) / 2.0_f64).sqrt();
        assert!((scan.summary.max_ratio - expected).abs() <= 1e-3);
        assert!((scan.summary.argmax.s - SQRT2.sqrt()).abs() <= 0.02);
    }

    #[test]
    fn scan_flags_normal_points() {
        let scan = family_scan(1.0, &[0.5], &[0.5, 1.0, 2.0]).unwrap();
        let degenerate: Vec<_> = scan.evaluations.iter().filter(|e| e.degenerate).collect();
        assert_eq!(degenerate.len(), 1);
        assert_eq!(degenerate[0].s, 1.0);
        assert!(degenerate[0].ratio.is_none());
        assert!(scan.summary.max_ratio.is_finite());
    }

    #[test]
    fn scan_rejects_bad_grids() {
        assert!(family_scan(1e-6, &[], &[1.0]).is_err());
        assert!(family_scan(-1.0, &[0.5], &[1.0]).is_err());
        assert!(family_scan(1e-6, &[0.5], &[0.0]).is_err());
    }
}
