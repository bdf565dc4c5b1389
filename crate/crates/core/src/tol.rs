//! Numerical tolerances used throughout the crate.
//!
//! All of these are relative to the Frobenius scale of the matrices
//! involved (via a `1 + ||·||_F` factor at the call site) and leave
//! double-precision headroom above the Jacobi solver residuals.

/// Unitarity checks: ‖U*U − I‖_F.
pub const TOL_ORTH: f64 = 1e-9;

/// Hermitian defect accepted before symmetrizing.
pub const TOL_HERM: f64 = 1e-9;

/// Reconstruction checks (eigendecomposition, polar).
pub const TOL_RECON: f64 = 1e-9;

/// Eigenvalues more negative than this (relative) are rejected as not
/// PSD; less negative ones are clamped to zero.
pub const TOL_PSD: f64 = 1e-10;

/// Eigenvalue grouping width, relative to max |λ|.
pub const TOL_GROUP: f64 = 1e-8;

/// Self-commutator norms below this (relative) mean "numerically normal";
/// contraction ratios are undefined there.
pub const TOL_NONNORMAL: f64 = 1e-12;

/// Jacobi stop rule: off-diagonal Frobenius mass below this times ‖M‖_F.
pub const JACOBI_OFF: f64 = 1e-12;

/// Jacobi sweep limit.
pub const MAX_SWEEPS: usize = 100;
