//! Complex Schur decomposition `A = Q T Q*` and eigenvalue reordering.
//!
//! The factorization is Householder reduction to upper Hessenberg form
//! followed by explicitly shifted QR with Wilkinson shifts and standard
//! deflation. Reordering bubbles selected eigenvalues to the leading
//! positions with adjacent unitary (Givens) swaps, so the leading columns of
//! `Q` span the invariant subspace of the selected set.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{vec_norm, ComplexMatrix};
use crate::tol::MAX_SWEEP_FACTOR;
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Schur decomposition: `A = Q T Q*` with unitary `Q` and upper-triangular
/// `T`; `diag(T)` is the eigenvalue multiset of `A`.
#[derive(Clone, Debug)]
pub struct Schur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

/// Schur decomposition with the selected eigenvalues moved to the front.
#[derive(Clone, Debug)]
pub struct OrderedSchur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
    /// Number of selected eigenvalues; the leading `selected` columns of `q`
    /// form an orthonormal basis of their invariant subspace.
    pub selected: usize,
}

/// Complex Givens rotation: returns `(c, s)` with real `c >= 0` such that
/// `[[c, s], [-conj(s), c]] * [f, g]^T = [r, 0]^T`.
fn rotg(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fabs = f.norm();
    let gabs = g.norm();
    if gabs == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if fabs == 0.0 {
        return (0.0, g.conj() / gabs);
    }
    let d = libm::hypot(fabs, gabs);
    let fs = f / fabs;
    (fabs / d, fs * g.conj() / d)
}

/// Reduces `h` to upper Hessenberg form in place, accumulating the unitary
/// similarity into `q`.
fn hessenberg(h: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let m = h.order();
    for k in 0..m.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..m).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() > 0.0 {
            alpha / alpha.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        let n = v.len();
        // Left reflector on rows k+1..m.
        for j in k..m {
            let mut d = Complex64::new(0.0, 0.0);
            for r in 0..n {
                d += v[r].conj() * h[(k + 1 + r, j)];
            }
            d *= 2.0;
            for r in 0..n {
                let sub = d * v[r];
                h[(k + 1 + r, j)] -= sub;
            }
        }
        // Right reflector on columns k+1..m of H and Q.
        for i in 0..m {
            let mut d = Complex64::new(0.0, 0.0);
            for r in 0..n {
                d += h[(i, k + 1 + r)] * v[r];
            }
            d *= 2.0;
            for r in 0..n {
                let sub = d * v[r].conj();
                h[(i, k + 1 + r)] -= sub;
            }
        }
        for i in 0..m {
            let mut d = Complex64::new(0.0, 0.0);
            for r in 0..n {
                d += q[(i, k + 1 + r)] * v[r];
            }
            d *= 2.0;
            for r in 0..n {
                let sub = d * v[r].conj();
                q[(i, k + 1 + r)] -= sub;
            }
        }
        // The reflector maps the pivot column to -phase * ||x|| * e1 exactly.
        h[(k + 1, k)] = -(phase * xnorm);
        for i in k + 2..m {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let cc = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let bc = b * cc;
    if bc.norm() == 0.0 {
        return d;
    }
    let delta = (a - d) * 0.5;
    let rad = (delta * delta + bc).sqrt();
    let den = if (delta + rad).norm() >= (delta - rad).norm() {
        delta + rad
    } else {
        delta - rad
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// One explicitly shifted QR step on the active block `lo..=hi`.
fn qr_step(h: &mut ComplexMatrix, q: &mut ComplexMatrix, lo: usize, hi: usize, sigma: Complex64) {
    let m = h.order();
    for i in lo..=hi {
        h[(i, i)] -= sigma;
    }
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let (c, s) = rotg(h[(i, i)], h[(i + 1, i)]);
        for j in i..m {
            let a = h[(i, j)];
            let b = h[(i + 1, j)];
            h[(i, j)] = c * a + s * b;
            h[(i + 1, j)] = -s.conj() * a + c * b;
        }
        h[(i + 1, i)] = Complex64::new(0.0, 0.0);
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let i = lo + idx;
        for r in 0..=i + 1 {
            let a = h[(r, i)];
            let b = h[(r, i + 1)];
            h[(r, i)] = c * a + s.conj() * b;
            h[(r, i + 1)] = -s * a + c * b;
        }
        for r in 0..m {
            let a = q[(r, i)];
            let b = q[(r, i + 1)];
            q[(r, i)] = c * a + s.conj() * b;
            q[(r, i + 1)] = -s * a + c * b;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += sigma;
    }
}

/// Schur decomposition by Hessenberg reduction and shifted QR.
///
/// The iteration budget is `MAX_SWEEP_FACTOR * m` QR steps in total;
/// exhausting it returns an error rather than a partial factorization.
pub fn schur(a: &ComplexMatrix) -> Result<Schur> {
    let m = a.order();
    assert!(m >= 1, "schur requires a nonempty matrix");
    if !a.all_finite() {
        return Err(Error::NonFinite);
    }
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(m);
    if m == 1 {
        return Ok(Schur { q, t: h });
    }
    hessenberg(&mut h, &mut q);

    let max_iter = MAX_SWEEP_FACTOR * m;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = m - 1;
    'outer: loop {
        // Deflate converged trailing eigenvalues and find the active block.
        let lo = loop {
            if hi == 0 {
                break 'outer;
            }
            let mut lo = 0;
            for i in (1..=hi).rev() {
                let gate = EPS * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm());
                if h[(i, i - 1)].norm() <= gate {
                    h[(i, i - 1)] = Complex64::new(0.0, 0.0);
                    lo = i;
                    break;
                }
            }
            if lo == hi {
                hi -= 1;
                since_deflation = 0;
                continue;
            }
            break lo;
        };
        if hi == 0 {
            break;
        }

        if iterations >= max_iter {
            return Err(Error::ConvergenceFailure {
                op: "schur",
                iterations,
            });
        }
        iterations += 1;
        since_deflation += 1;

        let sigma = if since_deflation % 12 == 0 {
            // Exceptional shift to break rare symmetric stagnation.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, &mut q, lo, hi, sigma);
    }

    for i in 0..m {
        for j in 0..i {
            h[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(Schur { q, t: h })
}

/// Swaps the adjacent diagonal pair at `(i, i)`/`(i+1, i+1)` of a Schur form
/// by a single unitary rotation, keeping the form triangular.
fn swap_adjacent(t: &mut ComplexMatrix, q: &mut ComplexMatrix, i: usize) {
    let m = t.order();
    let l1 = t[(i, i)];
    let l2 = t[(i + 1, i + 1)];
    let g = l2 - l1;
    if g.norm() == 0.0 {
        return;
    }
    // Rotate the eigenvector (t12, l2 - l1) of the 2x2 block onto e1.
    let (c, s) = rotg(t[(i, i + 1)], g);
    for j in 0..m {
        let a = t[(i, j)];
        let b = t[(i + 1, j)];
        t[(i, j)] = c * a + s * b;
        t[(i + 1, j)] = -s.conj() * a + c * b;
    }
    for r in 0..m {
        let a = t[(r, i)];
        let b = t[(r, i + 1)];
        t[(r, i)] = c * a + s.conj() * b;
        t[(r, i + 1)] = -s * a + c * b;
    }
    for r in 0..m {
        let a = q[(r, i)];
        let b = q[(r, i + 1)];
        q[(r, i)] = c * a + s.conj() * b;
        q[(r, i + 1)] = -s * a + c * b;
    }
    // The similarity exchanges the pair exactly in exact arithmetic; pin the
    // diagonal to the swapped values so the eigenvalue multiset is preserved
    // bitwise through reordering.
    t[(i, i)] = l2;
    t[(i + 1, i + 1)] = l1;
    t[(i + 1, i)] = Complex64::new(0.0, 0.0);
}

/// Reorders an existing Schur form so eigenvalues satisfying `select` occupy
/// the leading diagonal positions, preserving their relative order.
pub fn reorder_schur(sch: &Schur, mut select: impl FnMut(Complex64) -> bool) -> OrderedSchur {
    let m = sch.t.order();
    let mut t = sch.t.clone();
    let mut q = sch.q.clone();
    let mut flags: Vec<bool> = (0..m).map(|i| select(t[(i, i)])).collect();
    let selected = flags.iter().filter(|&&f| f).count();
    let mut target = 0;
    for i in 0..m {
        if !flags[i] {
            continue;
        }
        let mut pos = i;
        while pos > target {
            swap_adjacent(&mut t, &mut q, pos - 1);
            flags.swap(pos - 1, pos);
            pos -= 1;
        }
        target += 1;
    }
    OrderedSchur { q, t, selected }
}

/// Schur decomposition with eigenvalues satisfying `select` moved to the
/// leading positions.
pub fn ordered_schur(
    a: &ComplexMatrix,
    select: impl FnMut(Complex64) -> bool,
) -> Result<OrderedSchur> {
    Ok(reorder_schur(&schur(a)?, select))
}

/// Eigenvalues of `a` as the diagonal of its Schur form.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let sch = schur(a)?;
    let m = a.order();
    Ok((0..m).map(|i| sch.t[(i, i)]).collect())
}
