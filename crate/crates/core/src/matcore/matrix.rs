//! Dense complex matrices and vectors.
//!
//! Row-major storage over `Complex64`. Construction validates finiteness;
//! arithmetic asserts dimensions (shape mismatches are programming errors,
//! not data errors).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex vector.
pub type CVector = Vec<Complex64>;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix without the finiteness scan. For internal arithmetic
    /// whose inputs are already validated.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of order `m`.
    pub fn identity(m: usize) -> Self {
        let mut a = Self::zeros(m, m);
        for i in 0..m {
            a[(i, i)] = Complex64::new(1.0, 0.0);
        }
        a
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diag(diag: &[Complex64]) -> Self {
        let m = diag.len();
        let mut a = Self::zeros(m, m);
        for (i, &d) in diag.iter().enumerate() {
            a[(i, i)] = d;
        }
        a
    }

    /// Builds an `rows x cols` matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> usize {
        assert!(self.is_square(), "matrix must be square");
        self.rows
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise scaling by a real factor.
    pub fn scale(&self, factor: f64) -> Self {
        let data = self.data.iter().map(|z| z * factor).collect();
        Self::from_raw(self.rows, self.cols, data)
    }

    /// Entrywise scaling by a complex factor.
    pub fn scale_complex(&self, factor: Complex64) -> Self {
        let data = self.data.iter().map(|z| z * factor).collect();
        Self::from_raw(self.rows, self.cols, data)
    }

    /// Matrix-vector product.
    pub fn mat_vec(&self, x: &[Complex64]) -> CVector {
        assert_eq!(self.cols, x.len(), "dimension mismatch in mat_vec");
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Copies the block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// True when every entry is finite.
    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Frobenius deviation from Hermitian symmetry, `||M - M*||_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)].conj();
                acc += d.norm_sqr();
            }
        }
        libm::sqrt(acc)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix::from_raw(self.rows, self.cols, data)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix::from_raw(self.rows, self.cols, data)
    }
}

impl Add<&ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        &self + rhs
    }
}

impl Sub<&ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        &self - rhs
    }
}

impl Mul<&ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        &self * rhs
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mat mul");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    // scale by the largest component so squares cannot underflow or
    // overflow even for vectors far outside the [1e-150, 1e150] band
    let m = x
        .iter()
        .map(|z| libm::fabs(z.re).max(libm::fabs(z.im)))
        .fold(0.0f64, f64::max);
    if m == 0.0 || !m.is_finite() {
        return if m == 0.0 { 0.0 } else { f64::INFINITY };
    }
    let sum: f64 = x
        .iter()
        .map(|z| {
            let re = z.re / m;
            let im = z.im / m;
            re * re + im * im
        })
        .sum();
    m * libm::sqrt(sum)
}

/// Inner product, conjugate-linear in the first argument.
pub fn vec_dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(a, b)| a.conj() * b)
        .fold(Complex64::new(0.0, 0.0), |acc, z| acc + z)
}

/// Scales a vector in place by a real factor.
pub fn vec_scale(x: &mut [Complex64], factor: f64) {
    for z in x {
        *z *= factor;
    }
}
