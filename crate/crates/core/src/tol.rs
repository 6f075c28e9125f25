//! Tolerance constants shared across the crate.
//!
//! Every tolerance is relative to the operator norm of the operand unless a
//! comment says otherwise. Construction-time shape checks (Hermitian
//! deviation, PSD floor) measure deviations in the Frobenius norm, which
//! brackets the operator norm within a factor of `sqrt(m)`.

/// Factorization residual bound: `||Q T Q* - A|| <= TOL_FACT * ||A||` and the
/// analogous reconstruction bounds for the SVD and Hermitian decompositions.
pub const TOL_FACT: f64 = 1e-12;

/// Accepted relative deviation from Hermitian symmetry at construction.
pub const HERM_TOL: f64 = 1e-10;

/// Accepted relative dip of the smallest eigenvalue below zero for a matrix
/// certified positive semidefinite; anything in `[-PSD_TOL * scale, 0)` is
/// clamped to zero.
pub const PSD_TOL: f64 = 1e-10;

/// Sylvester separation guard coefficient: a divisor `t11 - t22` smaller than
/// `SEP_COEFF * (||T11|| + ||T22||)` is refused rather than divided by.
pub const SEP_COEFF: f64 = 1e-8;

/// Iteration budget factor: iterative factorizations may spend at most
/// `MAX_SWEEP_FACTOR * m` sweeps on an `m x m` matrix before erroring out.
/// There is no silent partial result.
pub const MAX_SWEEP_FACTOR: usize = 30;

/// Bound on the Jordan-Chevalley invariants: commutator, nilpotency, and
/// partition-of-identity residuals scale with `JC_TOL` times the appropriate
/// power of `||A||`.
pub const JC_TOL: f64 = 1e-8;

/// Bound on the flag invariants: idempotency, nesting, and rank bookkeeping
/// of the modulus and real-part projections.
pub const FLAG_TOL: f64 = 1e-8;

/// Slack for the inequality oracle, relative to the right-hand side (or to 1
/// when the right-hand side is below 1).
pub const CHECK_TOL: f64 = 1e-9;

/// Default shell-membership tolerance, relative to the vector norm.
pub const MEM_TOL: f64 = 1e-6;

/// Default eigenvalue clustering tolerance for a matrix of operator norm
/// `op_norm`. Distinct eigenvalues closer than this merge into one cluster.
pub fn default_cluster_tol(op_norm: f64) -> f64 {
    1e-8 * op_norm.max(1.0)
}
