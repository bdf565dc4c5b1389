//! Dense complex linear algebra: norms, commutators, Hermitian spectral
//! decomposition, PSD fractional powers, and polar decomposition.

mod matrix;
mod polar;
mod spectral;

pub use matrix::{commutator, self_commutator, ComplexMatrix};
pub use polar::{polar, polar_with_kernel_candidates, PolarDecomposition};
pub use spectral::{hermitian_eig, psd_power, EigenGroup, SpectralDecomposition};
