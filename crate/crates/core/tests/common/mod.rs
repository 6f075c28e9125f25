//! Seeded instance builders shared by the integration suites.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yamamoto_core::matcore::{svd, vec_dot, ComplexMatrix, PsdMatrix};
use yamamoto_core::oracle::gaussian_matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unitary polar factor of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, m: usize) -> ComplexMatrix {
    let dec = svd(&gaussian_matrix(rng, m)).expect("gaussian svd");
    &dec.u * &dec.v.adjoint()
}

/// A similarity `S` with log-spaced singular values spanning `cond`, plus
/// its inverse assembled from the same factors.
pub fn conditioned_similarity(
    rng: &mut ChaCha8Rng,
    m: usize,
    cond: f64,
) -> (ComplexMatrix, ComplexMatrix) {
    let u = random_unitary(rng, m);
    let w = random_unitary(rng, m);
    let span = (m - 1).max(1) as f64;
    let sigma: Vec<f64> = (0..m)
        .map(|j| cond.powf(-(j as f64) / span))
        .collect();
    let s = &(&u * &ComplexMatrix::from_diag(
        &sigma.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(),
    )) * &w.adjoint();
    let inv = &(&w * &ComplexMatrix::from_diag(
        &sigma.iter().map(|&x| Complex64::new(1.0 / x, 0.0)).collect::<Vec<_>>(),
    )) * &u.adjoint();
    (s, inv)
}

/// Upper triangular with eigenvalue moduli `top * ratio^-j` (descending, so
/// adjacent moduli are separated by `ratio - 1` relative), random phases,
/// and Gaussian strict upper couplings of the given size.
pub fn coupled_triangular(
    rng: &mut ChaCha8Rng,
    m: usize,
    top: f64,
    ratio: f64,
    coupling: f64,
) -> ComplexMatrix {
    let couplings = gaussian_matrix(rng, m);
    let phases: Vec<f64> = (0..m)
        .map(|_| 2.0 * core::f64::consts::PI * rng.gen::<f64>())
        .collect();
    ComplexMatrix::from_fn(m, m, |i, j| {
        if i == j {
            let r = top * ratio.powf(-(i as f64));
            Complex64::new(r * phases[i].cos(), r * phases[i].sin())
        } else if j > i {
            couplings[(i, j)] * coupling
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn separated_triangular(
    rng: &mut ChaCha8Rng,
    m: usize,
    top: f64,
    ratio: f64,
) -> ComplexMatrix {
    coupled_triangular(rng, m, top, ratio, 0.5)
}

/// Unitary conjugation of a triangular matrix whose moduli span `spread` in
/// total (largest 1, so the instance arrives prescaled). Plain products of
/// such a matrix keep their small singular values accurate, which is what
/// brute-force comparisons need.
pub fn near_unitary_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    spread: f64,
    coupling: f64,
) -> ComplexMatrix {
    let ratio = spread.powf(1.0 / (m - 1).max(1) as f64);
    let t = coupled_triangular(rng, m, 1.0, ratio, coupling);
    let q = random_unitary(rng, m);
    &(&q * &t) * &q.adjoint()
}

/// Upper triangular with eigenvalue real parts spaced by `step` (so the
/// pairwise separation is at least `step`), random imaginary parts, and
/// Gaussian strict upper couplings.
pub fn re_separated_triangular(rng: &mut ChaCha8Rng, m: usize, step: f64) -> ComplexMatrix {
    let couplings = gaussian_matrix(rng, m);
    let center = (m - 1) as f64 / 2.0;
    let ims: Vec<f64> = (0..m).map(|_| 2.0 * rng.gen::<f64>() - 1.0).collect();
    ComplexMatrix::from_fn(m, m, |i, j| {
        if i == j {
            Complex64::new((i as f64 - center) * step, ims[i])
        } else if j > i {
            couplings[(i, j)] * 0.5
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The acceptance family: `S T S^-1` with separated triangular `T` and a
/// similarity of condition number `cond`.
pub fn spectral_instance(rng: &mut ChaCha8Rng, m: usize, cond: f64) -> ComplexMatrix {
    let t = separated_triangular(rng, m, 1.2, 1.4);
    let (s, inv) = conditioned_similarity(rng, m, cond);
    &(&s * &t) * &inv
}

/// Block-diagonal Jordan matrix (given eigenvalue and size per block)
/// conjugated by a mildly conditioned similarity.
pub fn jordan_structure(
    rng: &mut ChaCha8Rng,
    blocks: &[(Complex64, usize)],
) -> ComplexMatrix {
    let m: usize = blocks.iter().map(|&(_, k)| k).sum();
    let mut j = ComplexMatrix::zeros(m, m);
    let mut at = 0;
    for &(lambda, k) in blocks {
        for i in 0..k {
            j[(at + i, at + i)] = lambda;
            if i + 1 < k {
                j[(at + i, at + i + 1)] = Complex64::new(1.0, 0.0);
            }
        }
        at += k;
    }
    let (s, inv) = conditioned_similarity(rng, m, 10.0);
    &(&s * &j) * &inv
}

/// Largest principal angle between the ranges of two projections.
pub fn principal_angle_max(p: &PsdMatrix, q: &PsdMatrix) -> f64 {
    let bp = p.range_basis(0.5);
    let bq = q.range_basis(0.5);
    assert_eq!(bp.len(), bq.len(), "ranges must have equal dimension");
    if bp.is_empty() {
        return 0.0;
    }
    let g = ComplexMatrix::from_fn(bp.len(), bq.len(), |i, j| vec_dot(&bp[i], &bq[j]));
    svd(&g)
        .expect("gram svd")
        .s
        .iter()
        .map(|&c| c.clamp(0.0, 1.0).acos())
        .fold(0.0, f64::max)
}

/// Random unit vector with Gaussian direction.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, m: usize) -> Vec<Complex64> {
    let g = gaussian_matrix(rng, m);
    let mut x: Vec<Complex64> = (0..m).map(|i| g[(i, 0)]).collect();
    let norm = yamamoto_core::matcore::vec_norm(&x);
    for z in &mut x {
        *z /= norm;
    }
    x
}
