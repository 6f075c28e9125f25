//! LU solve with partial pivoting, used by the Pade exponential.

use super::matrix::ComplexMatrix;
use crate::{Error, Result};

/// Solves `A X = B` for square `A` by LU with partial pivoting.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = a.order();
    assert_eq!(b.rows(), m, "rhs row count must match");
    let mut lu = a.clone();
    let mut x = b.clone();

    for k in 0..m {
        let mut piv = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..m {
            let mag = lu[(i, k)].norm();
            if mag > best {
                best = mag;
                piv = i;
            }
        }
        if best < 1e-300 {
            return Err(Error::SingularSystem { op: "lu_solve" });
        }
        if piv != k {
            for j in 0..m {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            for j in 0..x.cols() {
                let tmp = x[(k, j)];
                x[(k, j)] = x[(piv, j)];
                x[(piv, j)] = tmp;
            }
        }
        let pivot = lu[(k, k)];
        for i in k + 1..m {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..m {
                let sub = factor * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
            for j in 0..x.cols() {
                let sub = factor * x[(k, j)];
                x[(i, j)] -= sub;
            }
        }
    }

    for j in 0..x.cols() {
        for i in (0..m).rev() {
            let mut acc = x[(i, j)];
            for k in i + 1..m {
                acc -= lu[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = acc / lu[(i, i)];
        }
    }
    Ok(x)
}
