#![cfg_attr(not(test), no_std)]
//! Asymptotics of matrix powers.
//!
//! Given a square complex matrix `A`, the powers `|A^n|^(1/n)` converge to a
//! positive semidefinite matrix whose eigenvalues are the moduli of the
//! eigenvalues of `A` and whose eigenspaces are cut out by a nested family of
//! orthogonal projections. This crate computes both sides of that statement:
//!
//! * [`matcore`] supplies the dense complex kernels (Schur, reordered Schur,
//!   Hermitian eigendecomposition, SVD, Sylvester solves, and overflow-safe
//!   repeated squaring).
//! * [`jordan`] splits `A = D + N` into commuting diagonalizable and nilpotent
//!   parts via eigenvalue clustering and oblique spectral projectors.
//! * [`yamamoto`] builds the modulus flag, the closed-form limit, the
//!   finite-`n` iterates, and per-vector growth exponents.
//! * [`expflow`] carries the same analysis through the matrix exponential,
//!   classifying trajectories of `x'(t) = A x(t)` by real parts.
//! * [`oracle`] holds independent inequality checks and a brute-force power
//!   limit used to cross-validate the fast paths.
//!
//! The crate is `no_std` (with `alloc`); float math goes through `libm`.

extern crate alloc;

pub mod expflow;
pub mod jordan;
pub mod matcore;
pub mod oracle;
pub mod tol;
pub mod yamamoto;

mod error;

pub use error::{Error, Result};
