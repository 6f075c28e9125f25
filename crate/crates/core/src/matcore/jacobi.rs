//! Jacobi-rotation kernels: Hermitian eigendecomposition and SVD.
//!
//! Both factorizations run cyclic sweeps of complex plane rotations. The
//! Hermitian path is the classical two-sided Jacobi; the SVD is the one-sided
//! (Hestenes) variant, which orthogonalizes columns directly and therefore
//! avoids forming `A* A` and the accuracy loss that comes with it. Sweeps are
//! capped at `MAX_SWEEP_FACTOR * m`; hitting the cap is an error, never a
//! silent partial result.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::hermitian::HermitianMatrix;
use super::matrix::{vec_norm, ComplexMatrix};
use crate::tol::MAX_SWEEP_FACTOR;
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Hermitian eigendecomposition `H = V diag(values) V*`.
#[derive(Clone, Debug)]
pub struct HermEig {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Singular value decomposition `A = U diag(s) V*`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    /// Singular values in descending order.
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

/// Largest component magnitude in column `j`; a cheap scale proxy that is
/// within `sqrt(2 rows)` of the column norm.
fn col_peak(w: &ComplexMatrix, j: usize) -> f64 {
    (0..w.rows())
        .map(|r| {
            let z = w[(r, j)];
            libm::fabs(z.re).max(libm::fabs(z.im))
        })
        .fold(0.0f64, f64::max)
}

/// Plane rotation `J = [[c, s], [-conj(s), c]]` (real `c`) chosen so that
/// `J* G J` is diagonal for the Hermitian 2x2 `G = [[a, h], [conj(h), b]]`.
fn jacobi_pair(a: f64, b: f64, h: Complex64) -> (f64, Complex64) {
    let habs = h.norm();
    if habs == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let phase = h / habs;
    let theta = (a - b) / (2.0 * habs);
    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    (c, phase * (t * c))
}

/// Eigendecomposition of a Hermitian matrix by cyclic two-sided Jacobi.
pub fn herm_eig(h: &HermitianMatrix) -> Result<HermEig> {
    let m = h.matrix().order();
    let mut w = h.matrix().clone();
    let mut v = ComplexMatrix::identity(m);

    let max_sweeps = MAX_SWEEP_FACTOR * m.max(1);
    let mut converged = m < 2;
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..m - 1 {
            for q in p + 1..m {
                let off = w[(p, q)];
                let gate = EPS * 0.5 * (libm::fabs(w[(p, p)].re) + libm::fabs(w[(q, q)].re));
                if off.norm() <= gate + 1e-300 {
                    continue;
                }
                rotated = true;
                let (c, s) = jacobi_pair(w[(p, p)].re, w[(q, q)].re, off);
                // W <- J* W J, then restore exact Hermitian symmetry on the
                // touched rows and columns.
                for r in 0..m {
                    let wp = w[(p, r)];
                    let wq = w[(q, r)];
                    w[(p, r)] = c * wp - s * wq;
                    w[(q, r)] = s.conj() * wp + c * wq;
                }
                for r in 0..m {
                    let wp = w[(r, p)];
                    let wq = w[(r, q)];
                    w[(r, p)] = c * wp - s.conj() * wq;
                    w[(r, q)] = s * wp + c * wq;
                }
                w[(p, q)] = Complex64::new(0.0, 0.0);
                w[(q, p)] = Complex64::new(0.0, 0.0);
                w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
                w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);
                for r in 0..m {
                    if r != p && r != q {
                        w[(r, p)] = w[(p, r)].conj();
                        w[(r, q)] = w[(q, r)].conj();
                    }
                }
                for r in 0..m {
                    let vp = v[(r, p)];
                    let vq = v[(r, q)];
                    v[(r, p)] = c * vp - s.conj() * vq;
                    v[(r, q)] = s * vp + c * vq;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            op: "herm_eig",
            iterations: max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| w[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(m, m, |r, j| v[(r, order[j])]);
    Ok(HermEig { values, vectors })
}

/// Singular value decomposition by one-sided Jacobi.
///
/// Rotations are applied to column pairs of a working copy until all columns
/// are mutually orthogonal; singular values are the final column norms.
/// Accepts square and tall shapes (`rows >= cols`); `u` comes back economy
/// sized `rows x cols` with orthonormal columns.
pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    let rows = a.rows();
    let cols = a.cols();
    assert!(rows >= cols, "svd requires rows >= cols");
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(cols);

    let max_sweeps = MAX_SWEEP_FACTOR * cols.max(1);
    let mut converged = cols < 2;
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols - 1 {
            for q in p + 1..cols {
                // per-pair rescaling by the column peaks keeps the gate and
                // the rotation angle accurate for heavily graded columns,
                // where raw squared norms would under- or overflow
                let np = col_peak(&w, p);
                let nq = col_peak(&w, q);
                if np == 0.0 || nq == 0.0 {
                    continue;
                }
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    let x = w[(r, p)] / np;
                    let y = w[(r, q)] / nq;
                    app += x.norm_sqr();
                    aqq += y.norm_sqr();
                    apq += x.conj() * y;
                }
                if apq.norm() <= EPS * libm::sqrt(app * aqq) {
                    continue;
                }
                rotated = true;
                // true Gram data is (np^2 app, nq^2 aqq, np nq apq); theta
                // only needs the ratio, and the phase is scale invariant
                let habs = apq.norm();
                let phase = apq / habs;
                let ratio = nq / np;
                let theta = (app / ratio - ratio * aqq) / (2.0 * habs);
                let t = if libm::fabs(theta) > 1e8 {
                    -1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    -sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = phase * (t * c);
                for r in 0..rows {
                    let wp = w[(r, p)];
                    let wq = w[(r, q)];
                    w[(r, p)] = c * wp - s.conj() * wq;
                    w[(r, q)] = s * wp + c * wq;
                }
                for r in 0..cols {
                    let vp = v[(r, p)];
                    let vq = v[(r, q)];
                    v[(r, p)] = c * vp - s.conj() * vq;
                    v[(r, q)] = s * vp + c * vq;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            op: "svd",
            iterations: max_sweeps,
        });
    }

    let mut s: Vec<f64> = (0..cols)
        .map(|j| {
            let col: Vec<Complex64> = (0..rows).map(|r| w[(r, j)]).collect();
            vec_norm(&col)
        })
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    s = order.iter().map(|&j| s[j]).collect();

    let smax = if s.is_empty() { 0.0 } else { s[0] };
    let mut u = ComplexMatrix::zeros(rows, cols);
    let v_sorted = ComplexMatrix::from_fn(cols, cols, |r, j| v[(r, order[j])]);
    let mut deficient = Vec::new();
    for j in 0..cols {
        if s[j] <= smax * EPS || s[j] == 0.0 {
            deficient.push(j);
            continue;
        }
        let inv = 1.0 / s[j];
        for r in 0..rows {
            u[(r, j)] = w[(r, order[j])] * inv;
        }
    }
    for &j in &deficient {
        fill_orthonormal_column(&mut u, j, &deficient);
    }

    Ok(Svd { u, s, v: v_sorted })
}

/// Writes into column `j` of `u` a unit vector orthogonal to every column
/// that is already populated (columns outside `pending` plus the pending
/// ones filled before `j`).
fn fill_orthonormal_column(u: &mut ComplexMatrix, j: usize, pending: &[usize]) {
    let rows = u.rows();
    let cols = u.cols();
    let filled: Vec<usize> = (0..cols)
        .filter(|&k| k < j || !pending.contains(&k))
        .filter(|&k| k != j)
        .collect();
    for cand in 0..rows {
        let mut x = vec![Complex64::new(0.0, 0.0); rows];
        x[cand] = Complex64::new(1.0, 0.0);
        // Two Gram-Schmidt passes keep the completion orthogonal to working
        // precision even when the candidate is nearly in the current span.
        for _ in 0..2 {
            for &k in &filled {
                let mut proj = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    proj += u[(r, k)].conj() * x[r];
                }
                for r in 0..rows {
                    let col = u[(r, k)];
                    x[r] -= col * proj;
                }
            }
        }
        let n = vec_norm(&x);
        if n > 0.5 {
            let inv = 1.0 / n;
            for r in 0..rows {
                u[(r, j)] = x[r] * inv;
            }
            return;
        }
    }
    unreachable!("orthonormal completion always exists");
}

/// Operator norm (largest singular value).
pub fn op_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    if a.cols() > a.rows() {
        return Ok(svd(&a.adjoint())?.s[0]);
    }
    Ok(svd(a)?.s[0])
}
