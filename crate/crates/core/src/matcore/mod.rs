//! Dense complex matrix kernels.
//!
//! Everything downstream (Jordan-Chevalley splitting, modulus flags, matrix
//! exponential asymptotics) is built from the operations in this module:
//! Schur and reordered Schur, Hermitian eigendecomposition, SVD, certified
//! Hermitian/PSD types, overflow-safe powering, and triangular Sylvester
//! solves.

mod graded;
mod hermitian;
mod jacobi;
mod lu;
mod matrix;
mod power;
mod schur;
mod sylvester;

pub(crate) use graded::cluster_line;
pub use graded::{GradedPower, GradedSpectrum};
pub use hermitian::{abs_psd, psd_power, HermitianMatrix, PsdMatrix};
pub use jacobi::{herm_eig, op_norm, svd, HermEig, Svd};
pub use lu::lu_solve;
pub use matrix::{vec_dot, vec_norm, vec_scale, CVector, ComplexMatrix};
pub use power::{scaled_power, scaled_power_n, scaled_power_steps, ScaledPower};
pub use schur::{eigenvalues, ordered_schur, reorder_schur, schur, OrderedSchur, Schur};
pub use sylvester::sylvester_solve;
