//! Numerical toolkit for the λ-Aluthge transform Δ_λ(A) = P^λ U P^{1−λ}
//! of a complex square matrix A = UP, and for the behaviour of the
//! self-commutator Frobenius norm ‖[A*, A]‖_F under it.
//!
//! The headline facts the library makes checkable:
//!
//! * the transform is **not** a contraction for the self-commutator norm —
//!   a small integer-weight counterexample exhibits ratio > 1;
//! * a weighted cyclic-shift family with closed-form norms pushes the
//!   ratio up to √((1 + √2)/2) at λ = 1/2 and toward √(3/2) near the
//!   λ endpoints;
//! * a Heinz-type deviation inequality caps the ratio at 2 for every λ.
//!
//! Everything is deterministic: randomized routines take explicit seeds.

pub mod bounds;
pub mod error;
pub mod family;
pub mod matcore;
pub mod random;
pub mod tol;
pub mod transform;

pub use error::{Error, Result};
pub use matcore::{
    commutator, hermitian_eig, polar, psd_power, self_commutator, ComplexMatrix,
    PolarDecomposition, SpectralDecomposition,
};
pub use transform::{
    aluthge_transform, contraction_ratio, iterate, self_comm_norm, AluthgeParams,
    AluthgeTrajectory,
};

/// Compile the guide's code snippets as doc-tests so the book and the
/// library cannot drift apart.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/transform.md")]
    mod transform {}
    #[doc = include_str!("../../../book/src/counterexample.md")]
    mod counterexample {}
    #[doc = include_str!("../../../book/src/family.md")]
    mod family {}
    #[doc = include_str!("../../../book/src/heinz.md")]
    mod heinz {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
}
