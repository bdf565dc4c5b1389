//! Reproducible random matrix ensembles.
//!
//! All samplers take an explicit RNG; callers seed a `ChaCha8Rng` so that
//! reports are reproducible across platforms.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matcore::{polar, ComplexMatrix};

fn standard_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / 2.0_f64.sqrt()
}

/// Ginibre ensemble: independent standard complex Gaussian entries.
/// Eigenvalue moduli are almost surely distinct.
pub fn ginibre<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = standard_complex(rng);
        }
    }
    m
}

/// Random Hermitian matrix (G + G*)/2.
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(n, rng).symmetrize()
}

/// Random PSD matrix G*G with G of shape rank×n, so the result has rank
/// at most `rank`.
pub fn random_psd<R: Rng>(n: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for _ in 0..rank {
        let row: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += row[i].conj() * row[j];
            }
        }
    }
    m.symmetrize()
}

/// Random unitary: the polar factor of a Ginibre sample.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    polar(&g).expect("polar of a finite matrix").unitary
}

/// Random normal matrix W·diag(z)·W* with W unitary and complex diagonal.
pub fn random_normal<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let w = random_unitary(n, rng);
    let mut d = ComplexMatrix::zeros(n);
    for i in 0..n {
        d[(i, i)] = standard_complex(rng);
    }
    &(&w * &d) * &w.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_sample() {
        let a = ginibre(4, &mut ChaCha8Rng::seed_from_u64(42));
        let b = ginibre(4, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!((&a - &b).frobenius_norm(), 0.0);
    }

    #[test]
    fn psd_sample_has_requested_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_psd(5, 2, &mut rng);
        let eig = crate::matcore::hermitian_eig(&m).unwrap();
        let vals = eig.eigenvalues();
        assert!(vals[1] > 1e-8);
        assert!(vals[2].abs() <= 1e-10 * (1.0 + vals[0]));
    }

    #[test]
    fn normal_sample_commutes_with_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_normal(4, &mut rng);
        let c = crate::matcore::self_commutator(&m);
        assert!(c.frobenius_norm() <= 1e-10 * (1.0 + m.frobenius_norm()));
    }
}
