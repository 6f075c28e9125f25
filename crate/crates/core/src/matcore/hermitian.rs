//! Hermitian and positive semidefinite matrices with certified spectra.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::jacobi::{herm_eig, svd};
use super::matrix::{ComplexMatrix, CVector};
use crate::tol::{HERM_TOL, PSD_TOL};
use crate::{Error, Result};

/// A matrix certified Hermitian at construction.
///
/// The stored form is the exact symmetrization `(M + M*) / 2`, so diagonal
/// entries carry zero imaginary part and `H[(i, j)] == conj(H[(j, i)])` holds
/// bitwise, not just approximately.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    mat: ComplexMatrix,
}

impl HermitianMatrix {
    /// Certifies `m` as Hermitian: the deviation `||M - M*||` must stay below
    /// `HERM_TOL * ||M||` (Frobenius norms).
    pub fn new(m: &ComplexMatrix) -> Result<Self> {
        let n = m.order();
        let deviation = m.hermitian_deviation();
        let scale = m.fro_norm();
        if deviation > HERM_TOL * scale {
            return Err(Error::NotHermitian {
                deviation: if scale > 0.0 { deviation / scale } else { deviation },
                tol: HERM_TOL,
            });
        }
        let mat = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn order(&self) -> usize {
        self.mat.order()
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, x: &[Complex64]) -> CVector {
        self.mat.mat_vec(x)
    }
}

/// A positive semidefinite matrix carrying its spectral decomposition.
///
/// Eigenvalues are stored ascending and clamped to zero from below; the
/// canonical matrix equals `basis * diag(eigs) * basis*` whenever clamping
/// fired, and the original Hermitian input otherwise.
#[derive(Clone, Debug)]
pub struct PsdMatrix {
    mat: HermitianMatrix,
    basis: ComplexMatrix,
    eigs: Vec<f64>,
}

impl PsdMatrix {
    /// Certifies a Hermitian matrix as PSD. Eigenvalues in
    /// `[-PSD_TOL * scale, 0)` are clamped to zero; anything lower is an
    /// error.
    pub fn new(h: &HermitianMatrix) -> Result<Self> {
        let e = herm_eig(h)?;
        let scale = h.matrix().fro_norm();
        let floor = -PSD_TOL * scale.max(0.0);
        if e.values[0] < floor {
            return Err(Error::NotPsd {
                min_eig: e.values[0],
                tol: PSD_TOL,
            });
        }
        let clamped: Vec<f64> = e.values.iter().map(|&x| x.max(0.0)).collect();
        if clamped == e.values {
            Ok(Self {
                mat: h.clone(),
                basis: e.vectors,
                eigs: clamped,
            })
        } else {
            Ok(Self::from_spectral(e.vectors, clamped))
        }
    }

    /// Builds a PSD matrix from a unitary basis and ascending nonnegative
    /// eigenvalues. The canonical matrix is resynthesized from the pair.
    pub(crate) fn from_spectral(basis: ComplexMatrix, eigs: Vec<f64>) -> Self {
        let m = basis.order();
        assert_eq!(m, eigs.len());
        debug_assert!(eigs.iter().all(|&x| x >= 0.0));
        debug_assert!(eigs.windows(2).all(|w| w[0] <= w[1]));
        let d = ComplexMatrix::from_diag(
            &eigs.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(),
        );
        let raw = &(&basis * &d) * &basis.adjoint();
        let mat = HermitianMatrix::new(&raw).expect("spectral synthesis is Hermitian");
        Self { mat, basis, eigs }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.mat.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.mat
    }

    pub fn order(&self) -> usize {
        self.mat.order()
    }

    /// Certified eigenvalues, ascending.
    pub fn eigs(&self) -> &[f64] {
        &self.eigs
    }

    /// Unitary eigenbasis matching `eigs`.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Largest certified eigenvalue (the operator norm).
    pub fn spectral_norm(&self) -> f64 {
        self.eigs.last().copied().unwrap_or(0.0)
    }

    pub fn apply(&self, x: &[Complex64]) -> CVector {
        self.mat.apply(x)
    }

    /// Scales by a nonnegative real factor.
    pub fn scale(&self, factor: f64) -> Self {
        assert!(factor >= 0.0 && factor.is_finite());
        Self::from_spectral(
            self.basis.clone(),
            self.eigs.iter().map(|&x| x * factor).collect(),
        )
    }

    /// Orthonormal columns of the eigenbasis whose eigenvalue exceeds
    /// `threshold`; for a projection this is a basis of its range.
    pub fn range_basis(&self, threshold: f64) -> Vec<CVector> {
        let m = self.order();
        (0..m)
            .filter(|&j| self.eigs[j] > threshold)
            .map(|j| (0..m).map(|r| self.basis[(r, j)]).collect())
            .collect()
    }

    /// Trace of the canonical form.
    pub fn trace(&self) -> f64 {
        self.eigs.iter().sum()
    }
}

/// The PSD factor `|A| = (A* A)^(1/2)`, computed as `V diag(s) V*` from the
/// SVD rather than by rooting the squared Gram matrix.
pub fn abs_psd(a: &ComplexMatrix) -> Result<PsdMatrix> {
    let f = svd(a)?;
    let m = a.order();
    // svd returns descending singular values; spectral storage is ascending.
    let eigs: Vec<f64> = f.s.iter().rev().copied().collect();
    let basis = ComplexMatrix::from_fn(m, m, |r, j| f.v[(r, m - 1 - j)]);
    Ok(PsdMatrix::from_spectral(basis, eigs))
}

/// Fractional or integer power of a PSD matrix, `H^p` with `p > 0`, applied
/// eigenvalue by eigenvalue.
pub fn psd_power(h: &PsdMatrix, p: f64) -> Result<PsdMatrix> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain("psd_power requires p in (0, inf)"));
    }
    let eigs: Vec<f64> = h.eigs().iter().map(|&x| libm::pow(x, p)).collect();
    Ok(PsdMatrix::from_spectral(h.basis().clone(), eigs))
}
