//! Triangular Sylvester equation `T11 X - X T22 = C`.

use super::jacobi::op_norm;
use super::matrix::ComplexMatrix;
use crate::tol::SEP_COEFF;
use crate::{Error, Result};

/// Solves `T11 X - X T22 = C` for upper-triangular `T11` (r x r) and `T22`
/// (s x s) by back-substitution, rows bottom-up and columns left-to-right.
///
/// Every divisor is `T11[i, i] - T22[j, j]`; a divisor below
/// `SEP_COEFF * (||T11|| + ||T22||)` means the spectra nearly touch and the
/// solve would amplify noise, so it is refused instead.
pub fn sylvester_solve(
    t11: &ComplexMatrix,
    t22: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let r = t11.order();
    let s = t22.order();
    assert_eq!(c.rows(), r, "C must have as many rows as T11");
    assert_eq!(c.cols(), s, "C must have as many columns as T22");

    let sep_tol = SEP_COEFF * (op_norm(t11)? + op_norm(t22)?);
    let mut x = ComplexMatrix::zeros(r, s);
    for i in (0..r).rev() {
        for j in 0..s {
            let mut acc = c[(i, j)];
            for k in i + 1..r {
                acc -= t11[(i, k)] * x[(k, j)];
            }
            for k in 0..j {
                acc += x[(i, k)] * t22[(k, j)];
            }
            let div = t11[(i, i)] - t22[(j, j)];
            if div.norm() < sep_tol {
                return Err(Error::SingularSeparation {
                    t11: t11[(i, i)],
                    t22: t22[(j, j)],
                    sep_tol,
                });
            }
            x[(i, j)] = acc / div;
        }
    }
    Ok(x)
}
