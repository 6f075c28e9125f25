//! Brute-force ground truth: trace and singular-value inequality checkers,
//! the diagonal-scaling conjugation, and a plain-multiplication limit
//! pipeline.
//!
//! Everything here is deliberately naive. The checkers evaluate both sides
//! of each inequality directly from singular values and Schur diagonals,
//! and `brute_force_limit` forms `A^n` by repeated products with no
//! renormalization, so agreement with the scaled-squaring pipeline is
//! evidence, not tautology. `run_check_suite` drives the checkers over
//! seeded complex Gaussian instances; each checker family draws from its
//! own substream, so the instance list for one family does not depend on
//! how many others ran.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matcore::{
    abs_psd, op_norm, psd_power, scaled_power_n, schur, svd, vec_norm, vec_scale,
    ComplexMatrix, HermitianMatrix, PsdMatrix,
};
use crate::tol::CHECK_TOL;
use crate::{Error, Result};

/// Slack allowed when validating that Hölder exponents are conjugate.
const EXPONENT_TOL: f64 = 1e-12;

/// Entry-magnitude ceiling for the plain-product pipeline.
const BRUTE_RANGE_MAX: f64 = 1e150;

/// Outcome of one inequality check: `lhs <= rhs` up to relative slack.
#[derive(Clone, Debug)]
pub struct CheckResult {
    /// Which inequality was checked.
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative slack beyond tolerance means failure.
    pub slack: f64,
    pub passed: bool,
    /// Operand shapes and parameters, for reproducing a failure.
    pub context: String,
}

fn verdict(name: &'static str, lhs: f64, rhs: f64, context: String) -> CheckResult {
    // slack is relative to the rhs magnitude, floored at one so inequalities
    // between tiny quantities are not judged at absolute scale
    let scale = libm::fabs(rhs).max(1.0);
    CheckResult {
        name,
        lhs,
        rhs,
        slack: rhs - lhs,
        passed: lhs <= rhs + CHECK_TOL * scale,
        context,
    }
}

fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.s)
}

/// Weyl's perturbation bound: `max_j |s_j(H1) - s_j(H2)| <= ||H1 - H2||`.
pub fn check_weyl_perturbation(
    h1: &HermitianMatrix,
    h2: &HermitianMatrix,
) -> Result<CheckResult> {
    let m = h1.matrix().order();
    assert_eq!(m, h2.matrix().order(), "dimension mismatch in weyl check");
    let s1 = singular_values(h1.matrix())?;
    let s2 = singular_values(h2.matrix())?;
    let lhs = s1
        .iter()
        .zip(&s2)
        .map(|(a, b)| libm::fabs(a - b))
        .fold(0.0, f64::max);
    let rhs = op_norm(&(h1.matrix() - h2.matrix()))?;
    Ok(verdict(
        "weyl_perturbation",
        lhs,
        rhs,
        format!("hermitian pair, dim {m}"),
    ))
}

/// Eigenvalue-vs-trace dominance: `sum |lambda_i|^p <= tr(|A|^p)`.
pub fn check_eig_trace_dominance(a: &ComplexMatrix, p: f64) -> Result<CheckResult> {
    if !(p > 0.0) {
        return Err(Error::Domain("dominance check requires p > 0"));
    }
    let sch = schur(a)?;
    let m = a.order();
    let lhs: f64 = (0..m).map(|i| libm::pow(sch.t[(i, i)].norm(), p)).sum();
    let rhs: f64 = singular_values(a)?.iter().map(|&s| libm::pow(s, p)).sum();
    Ok(verdict(
        "eig_trace_dominance",
        lhs,
        rhs,
        format!("dim {m}, p {p}"),
    ))
}

/// Generalized Hölder trace inequality:
/// `tr(|prod A_i|^r)^(1/r) <= prod tr(|A_i|^(p_i))^(1/p_i)` when
/// `sum 1/p_i = 1/r`.
pub fn check_holder_trace(
    factors: &[ComplexMatrix],
    exponents: &[f64],
    r: f64,
) -> Result<CheckResult> {
    if factors.is_empty() || factors.len() != exponents.len() {
        return Err(Error::Domain("one exponent is required per factor"));
    }
    if !(r > 0.0) || exponents.iter().any(|&p| !(p > 0.0)) {
        return Err(Error::Domain("Hölder exponents must be positive"));
    }
    let inv_sum: f64 = exponents.iter().map(|p| 1.0 / p).sum();
    if libm::fabs(inv_sum - 1.0 / r) > EXPONENT_TOL {
        return Err(Error::Domain("Hölder exponents must satisfy sum 1/p_i = 1/r"));
    }
    let m = factors[0].order();
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = &prod * f;
    }
    let trace_r: f64 = singular_values(&prod)?.iter().map(|&s| libm::pow(s, r)).sum();
    let lhs = libm::pow(trace_r, 1.0 / r);
    let mut rhs = 1.0;
    for (f, &p) in factors.iter().zip(exponents) {
        let t: f64 = singular_values(f)?.iter().map(|&s| libm::pow(s, p)).sum();
        rhs *= libm::pow(t, 1.0 / p);
    }
    Ok(verdict(
        "holder_trace",
        lhs,
        rhs,
        format!("{} factors, dim {m}, r {r}", factors.len()),
    ))
}

/// Outer-factor absorption: `tr(|ABC|^p) <= ||A||^p ||C||^p tr(|B|^p)`.
pub fn check_three_factor(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    p: f64,
) -> Result<CheckResult> {
    if !(p > 0.0) {
        return Err(Error::Domain("three-factor check requires p > 0"));
    }
    let prod = &(a * b) * c;
    let lhs: f64 = singular_values(&prod)?.iter().map(|&s| libm::pow(s, p)).sum();
    let trace_b: f64 = singular_values(b)?.iter().map(|&s| libm::pow(s, p)).sum();
    let rhs = libm::pow(op_norm(a)?, p) * libm::pow(op_norm(c)?, p) * trace_b;
    Ok(verdict(
        "three_factor",
        lhs,
        rhs,
        format!("dim {}, p {p}", a.order()),
    ))
}

/// Power-trace monotonicity: `tr(|A^n|^(p/n)) <= tr(|A|^p)`.
pub fn check_power_trace_monotone(a: &ComplexMatrix, p: f64, n: u64) -> Result<CheckResult> {
    if !(p > 0.0) {
        return Err(Error::Domain("power-trace check requires p > 0"));
    }
    assert!(n >= 1, "power-trace check requires n >= 1");
    let sp = scaled_power_n(a, n)?;
    let lhs = if sp.is_zero() {
        0.0
    } else {
        // eigenvalues of |A^n|^(p/n) are exp((p/n)(log_scale + ln s_j(base)))
        singular_values(&sp.base)?
            .iter()
            .filter(|&&s| s > 0.0)
            .map(|&s| libm::exp(p / n as f64 * (sp.log_scale + libm::log(s))))
            .sum()
    };
    let rhs: f64 = singular_values(a)?.iter().map(|&s| libm::pow(s, p)).sum();
    Ok(verdict(
        "power_trace_monotone",
        lhs,
        rhs,
        format!("dim {}, p {p}, n {n}", a.order()),
    ))
}

/// Jensen bound along a unit vector: `|| |A^n|^alpha x || <= ||A^n x||^alpha`.
pub fn check_jensen_vector(
    a: &ComplexMatrix,
    x: &[Complex64],
    alpha: f64,
    n: u64,
) -> Result<CheckResult> {
    if libm::fabs(vec_norm(x) - 1.0) > EXPONENT_TOL {
        return Err(Error::Domain("Jensen check requires a unit vector"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain("Jensen exponent must lie in [0, 1]"));
    }
    assert!(n >= 1, "Jensen check requires n >= 1");
    let mut pn = a.clone();
    for _ in 1..n {
        pn = &pn * a;
    }
    let lhs = if alpha == 0.0 {
        // the zeroth power is the identity, outside psd_power's domain
        vec_norm(x)
    } else {
        vec_norm(&psd_power(&abs_psd(&pn)?, alpha)?.apply(x))
    };
    let rhs = libm::pow(vec_norm(&pn.mat_vec(x)), alpha);
    Ok(verdict(
        "jensen_vector",
        lhs,
        rhs,
        format!("dim {}, alpha {alpha}, n {n}", a.order()),
    ))
}

/// Conjugation by `W_n = diag(1, n, n^2, ...)`: entry `(i, j)` of a
/// triangular `T` is divided by `n^(j-i)`, which crushes the strict upper
/// part while fixing the diagonal exactly. Non-triangular input is reduced
/// to its Schur factor first.
pub fn graded_conjugation(a: &ComplexMatrix, n: u64) -> Result<ComplexMatrix> {
    assert!(n >= 1, "graded_conjugation requires n >= 1");
    let m = a.order();
    let zero = Complex64::new(0.0, 0.0);
    let triangular = (1..m).all(|i| (0..i).all(|j| a[(i, j)] == zero));
    let t = if triangular { a.clone() } else { schur(a)?.t };
    Ok(ComplexMatrix::from_fn(m, m, |i, j| {
        if j < i {
            zero
        } else if j == i {
            t[(i, j)]
        } else {
            t[(i, j)] / libm::pow(n as f64, (j - i) as f64)
        }
    }))
}

/// `|A^n|^(1/n)` computed the slow way: `n - 1` plain matrix products, one
/// operator absolute value, one fractional power. No squaring shortcut and
/// no renormalization, so this is an independent witness for the scaled
/// pipeline at small `n`. Inputs must be prescaled; any product entry above
/// `1e150` aborts with a range error.
pub fn brute_force_limit(a: &ComplexMatrix, n: u64) -> Result<PsdMatrix> {
    if !(1..=512).contains(&n) {
        return Err(Error::Domain("brute-force exponent must lie in 1..=512"));
    }
    let mut p = a.clone();
    for _ in 1..n {
        p = &p * a;
        for r in 0..p.rows() {
            for c in 0..p.cols() {
                let mag = p[(r, c)].norm();
                if mag > BRUTE_RANGE_MAX {
                    return Err(Error::RangeOverflow {
                        magnitude: mag,
                        limit: BRUTE_RANGE_MAX,
                    });
                }
            }
        }
    }
    psd_power(&abs_psd(&p)?, 1.0 / n as f64)
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gauss_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let t = 2.0 * core::f64::consts::PI * u2;
    (r * libm::cos(t), r * libm::sin(t))
}

/// Entrywise standard complex Gaussian matrix (`E|z|^2 = 1`).
pub fn gaussian_matrix(rng: &mut ChaCha8Rng, m: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m, m, |_, _| {
        let (re, im) = gauss_pair(rng);
        Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
    })
}

fn random_hermitian(rng: &mut ChaCha8Rng, m: usize) -> Result<HermitianMatrix> {
    let g = gaussian_matrix(rng, m);
    HermitianMatrix::new(&(&g + &g.adjoint()).scale(0.5))
}

fn random_unit_vector(rng: &mut ChaCha8Rng, m: usize) -> Vec<Complex64> {
    let mut x: Vec<Complex64> = (0..m)
        .map(|_| {
            let (re, im) = gauss_pair(rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm = vec_norm(&x);
    vec_scale(&mut x, 1.0 / norm);
    x
}

/// Runs every checker family over `instances` seeded Gaussian instances,
/// cycling matrix dimension through `dims` and the per-family parameters
/// through their stated grids. Each family uses its own ChaCha substream of
/// `seed`, so instances are reproducible per family regardless of suite
/// composition.
pub fn run_check_suite(
    seed: u64,
    dims: RangeInclusive<usize>,
    instances: usize,
) -> Result<Vec<CheckResult>> {
    let lo = *dims.start();
    let hi = *dims.end();
    if lo < 2 || hi < lo {
        return Err(Error::Domain("suite dimensions must start at 2 or above"));
    }
    let dim_at = |i: usize| lo + i % (hi - lo + 1);
    const PS: [f64; 3] = [0.5, 1.0, 2.0];
    const NS: [u64; 3] = [2, 4, 8];
    const ALPHAS: [f64; 4] = [0.0, 0.3, 0.7, 1.0];
    let mut out = Vec::with_capacity(6 * instances);

    let mut rng = stream(seed, 0);
    for i in 0..instances {
        let m = dim_at(i);
        let h1 = random_hermitian(&mut rng, m)?;
        let h2 = random_hermitian(&mut rng, m)?;
        out.push(check_weyl_perturbation(&h1, &h2)?);
    }

    let mut rng = stream(seed, 1);
    for i in 0..instances {
        let a = gaussian_matrix(&mut rng, dim_at(i));
        out.push(check_eig_trace_dominance(&a, PS[i % PS.len()])?);
    }

    let mut rng = stream(seed, 2);
    for i in 0..instances {
        let m = dim_at(i);
        if i % 2 == 0 {
            let f = [gaussian_matrix(&mut rng, m), gaussian_matrix(&mut rng, m)];
            out.push(check_holder_trace(&f, &[2.0, 2.0], 1.0)?);
        } else {
            let f = [
                gaussian_matrix(&mut rng, m),
                gaussian_matrix(&mut rng, m),
                gaussian_matrix(&mut rng, m),
            ];
            out.push(check_holder_trace(&f, &[3.0, 3.0, 3.0], 1.0)?);
        }
    }

    let mut rng = stream(seed, 3);
    for i in 0..instances {
        let m = dim_at(i);
        let a = gaussian_matrix(&mut rng, m);
        let b = gaussian_matrix(&mut rng, m);
        let c = gaussian_matrix(&mut rng, m);
        out.push(check_three_factor(&a, &b, &c, PS[i % PS.len()])?);
    }

    let mut rng = stream(seed, 4);
    for i in 0..instances {
        let a = gaussian_matrix(&mut rng, dim_at(i));
        out.push(check_power_trace_monotone(
            &a,
            PS[(i / NS.len()) % PS.len()],
            NS[i % NS.len()],
        )?);
    }

    let mut rng = stream(seed, 5);
    for i in 0..instances {
        let m = dim_at(i);
        let a = gaussian_matrix(&mut rng, m);
        let x = random_unit_vector(&mut rng, m);
        out.push(check_jensen_vector(&a, &x, ALPHAS[i % ALPHAS.len()], 4)?);
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yamamoto::iterate_limit;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample3() -> HermitianMatrix {
        HermitianMatrix::new(
            &ComplexMatrix::new(
                3,
                3,
                vec![
                    c(2.0, 0.0),
                    c(0.5, 0.3),
                    c(-1.0, 0.0),
                    c(0.5, -0.3),
                    c(-1.0, 0.0),
                    c(0.0, 0.7),
                    c(-1.0, 0.0),
                    c(0.0, -0.7),
                    c(0.5, 0.0),
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn weyl_of_equal_pair_has_zero_slack() {
        let h = sample3();
        let r = check_weyl_perturbation(&h, &h).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.rhs, 0.0);
    }

    #[test]
    fn weyl_shift_of_psd_is_tight() {
        let h1 = HermitianMatrix::new(&ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]))
            .unwrap();
        let shifted = &h1.matrix().clone() + &ComplexMatrix::identity(2).scale(0.5);
        let h2 = HermitianMatrix::new(&shifted).unwrap();
        let r = check_weyl_perturbation(&h1, &h2).unwrap();
        assert!(r.passed);
        assert!((r.lhs - r.rhs).abs() < 1e-12);
        assert!((r.rhs - 0.5).abs() < 1e-12);
    }

    #[test]
    fn weyl_on_a_generic_pair() {
        let h1 = sample3();
        let h2 = HermitianMatrix::new(
            &(h1.matrix() - &ComplexMatrix::from_diag(&[c(0.3, 0.0), c(-0.2, 0.0), c(1.1, 0.0)])),
        )
        .unwrap();
        assert!(check_weyl_perturbation(&h1, &h2).unwrap().passed);
    }

    #[test]
    fn dominance_is_equality_for_normal_input() {
        let a = ComplexMatrix::from_diag(&[c(2.0, 1.0), c(0.0, -3.0), c(0.5, 0.0)]);
        for p in [0.5, 1.0, 2.0] {
            let r = check_eig_trace_dominance(&a, p).unwrap();
            assert!(r.passed);
            assert!((r.lhs - r.rhs).abs() < 1e-12 * r.rhs);
        }
    }

    #[test]
    fn dominance_gap_for_nilpotent() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let r = check_eig_trace_dominance(&a, 1.0).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, 0.0);
        assert!((r.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dominance_rejects_nonpositive_exponent() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(
            check_eig_trace_dominance(&a, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn holder_identity_factors_are_tight() {
        let id = ComplexMatrix::identity(3);
        let r = check_holder_trace(&[id.clone(), id], &[2.0, 2.0], 1.0).unwrap();
        assert!(r.passed);
        assert!((r.lhs - 3.0).abs() < 1e-12);
        assert!((r.rhs - 3.0).abs() < 1e-12);
    }

    #[test]
    fn holder_on_generic_factors() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.5), c(-0.3, 0.0), c(0.2, -1.0), c(0.0, 0.8)],
        )
        .unwrap();
        let b = ComplexMatrix::new(
            2,
            2,
            vec![c(0.4, 0.0), c(1.1, -0.2), c(-0.7, 0.3), c(0.5, 0.0)],
        )
        .unwrap();
        let d = ComplexMatrix::new(
            2,
            2,
            vec![c(-0.1, 0.9), c(0.6, 0.0), c(0.0, -0.4), c(1.2, 0.1)],
        )
        .unwrap();
        assert!(check_holder_trace(&[a.clone(), b.clone()], &[2.0, 2.0], 1.0)
            .unwrap()
            .passed);
        assert!(check_holder_trace(&[a, b, d], &[3.0, 3.0, 3.0], 1.0)
            .unwrap()
            .passed);
    }

    #[test]
    fn holder_rejects_nonconjugate_exponents() {
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            check_holder_trace(&[id.clone(), id], &[2.0, 3.0], 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn three_factor_identity_outer_is_tight() {
        let b = sample3();
        let id = ComplexMatrix::identity(3);
        let r = check_three_factor(&id, b.matrix(), &id, 2.0).unwrap();
        assert!(r.passed);
        assert!((r.lhs - r.rhs).abs() < 1e-12 * r.rhs);
    }

    #[test]
    fn three_factor_unitary_outer_is_tight() {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::new(2, 2, vec![c(r, 0.0), c(-r, 0.0), c(r, 0.0), c(r, 0.0)])
            .unwrap();
        let v = ComplexMatrix::from_diag(&[c(0.0, 1.0), c(r, -r)]);
        let b = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.2), c(0.4, 0.0), c(0.0, -0.9), c(-0.6, 0.3)],
        )
        .unwrap();
        let res = check_three_factor(&u, &b, &v, 1.5).unwrap();
        assert!(res.passed);
        assert!((res.lhs - res.rhs).abs() < 1e-10 * res.rhs.max(1.0));
    }

    #[test]
    fn power_trace_equality_cases() {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::new(2, 2, vec![c(r, 0.0), c(-r, 0.0), c(r, 0.0), c(r, 0.0)])
            .unwrap();
        let res = check_power_trace_monotone(&u, 2.0, 4).unwrap();
        assert!(res.passed);
        assert!((res.lhs - 2.0).abs() < 1e-10);
        assert!((res.rhs - 2.0).abs() < 1e-12);

        let a = sample3();
        let res = check_power_trace_monotone(a.matrix(), 1.5, 1).unwrap();
        assert!(res.passed);
        assert!((res.lhs - res.rhs).abs() < 1e-10 * res.rhs);
    }

    #[test]
    fn power_trace_strictly_decreases_for_jordan_block() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        let mut last = f64::INFINITY;
        for n in [2u64, 4, 8] {
            let r = check_power_trace_monotone(&a, 2.0, n).unwrap();
            assert!(r.passed);
            assert!((r.rhs - 3.0).abs() < 1e-12);
            assert!(r.lhs < last);
            last = r.lhs;
        }
    }

    #[test]
    fn jensen_boundary_exponents_are_tight() {
        let a = sample3();
        let x = [c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)];
        let r1 = check_jensen_vector(a.matrix(), &x, 1.0, 1).unwrap();
        assert!(r1.passed);
        assert!((r1.lhs - r1.rhs).abs() < 1e-10 * r1.rhs.max(1.0));
        let r0 = check_jensen_vector(a.matrix(), &x, 0.0, 3).unwrap();
        assert!(r0.passed);
        assert!((r0.lhs - 1.0).abs() < 1e-10 && (r0.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jensen_on_generic_data() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(0.9, 0.1), c(-0.4, 0.7), c(0.3, 0.0), c(0.2, -0.5)],
        )
        .unwrap();
        let x = [c(0.6, 0.0), c(-0.8, 0.0)];
        assert!(check_jensen_vector(&a, &x, 0.5, 4).unwrap().passed);
    }

    #[test]
    fn jensen_rejects_bad_preconditions() {
        let a = ComplexMatrix::identity(2);
        let long = [c(2.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            check_jensen_vector(&a, &long, 0.5, 1),
            Err(Error::Domain(_))
        ));
        let unit = [c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            check_jensen_vector(&a, &unit, 1.5, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn conjugation_crushes_the_superdiagonal() {
        let t = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        )
        .unwrap();
        let w = graded_conjugation(&t, 10).unwrap();
        assert_eq!(w[(0, 0)], c(1.0, 0.0));
        assert_eq!(w[(1, 1)], c(2.0, 0.0));
        assert!((w[(0, 1)] - c(0.1, 0.0)).norm() < 1e-16);
        assert_eq!(w[(1, 0)], c(0.0, 0.0));
    }

    #[test]
    fn conjugation_fixes_diagonals_exactly() {
        let d = ComplexMatrix::from_diag(&[c(0.3, -0.4), c(-2.0, 1.0), c(5.0, 0.0)]);
        let w = graded_conjugation(&d, 1000).unwrap();
        assert_eq!(&w - &d, ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn conjugation_offdiagonal_mass_shrinks_like_one_over_n() {
        let t = ComplexMatrix::from_fn(4, 4, |i, j| {
            if j < i {
                c(0.0, 0.0)
            } else {
                c(1.0 + i as f64, 0.5 - j as f64)
            }
        });
        let w = graded_conjugation(&t, 1000).unwrap();
        let off = ComplexMatrix::from_fn(4, 4, |i, j| if j > i { w[(i, j)] } else { c(0.0, 0.0) });
        assert!(off.fro_norm() <= t.fro_norm() / 1000.0);
    }

    #[test]
    fn conjugation_reduces_nontriangular_input_first() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let w = graded_conjugation(&a, 100).unwrap();
        assert_eq!(w[(1, 0)], c(0.0, 0.0));
        // eigenvalues +-i sqrt(2) survive on the diagonal
        let s2 = libm::sqrt(2.0);
        let mut mags = [w[(0, 0)].norm(), w[(1, 1)].norm()];
        mags.sort_by(f64::total_cmp);
        assert!((mags[0] - s2).abs() < 1e-10 && (mags[1] - s2).abs() < 1e-10);
    }

    #[test]
    fn brute_force_at_one_is_the_absolute_value() {
        let a = sample3();
        let direct = abs_psd(a.matrix()).unwrap();
        let brute = brute_force_limit(a.matrix(), 1).unwrap();
        assert!((direct.matrix() - brute.matrix()).fro_norm() < 1e-12);
    }

    #[test]
    fn brute_force_of_unitary_is_identity() {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::new(2, 2, vec![c(r, 0.0), c(-r, 0.0), c(r, 0.0), c(r, 0.0)])
            .unwrap();
        let brute = brute_force_limit(&u, 64).unwrap();
        assert!((brute.matrix() - &ComplexMatrix::identity(2)).fro_norm() < 1e-10);
    }

    #[test]
    fn brute_force_matches_scaled_pipeline() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        let brute = brute_force_limit(&a, 64).unwrap();
        let scaled = iterate_limit(&a, 6).unwrap();
        let diff = (brute.matrix() - scaled.matrix()).fro_norm();
        assert!(diff < 1e-9 * scaled.matrix().fro_norm());
    }

    #[test]
    fn brute_force_range_guard() {
        assert!(matches!(
            brute_force_limit(&ComplexMatrix::identity(2), 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            brute_force_limit(&ComplexMatrix::identity(2), 513),
            Err(Error::Domain(_))
        ));
        let big = ComplexMatrix::identity(2).scale(10.0);
        assert!(matches!(
            brute_force_limit(&big, 512),
            Err(Error::RangeOverflow { .. })
        ));
    }

    #[test]
    fn suite_passes_and_is_deterministic() {
        let first = run_check_suite(7, 2..=4, 6).unwrap();
        let second = run_check_suite(7, 2..=4, 6).unwrap();
        assert_eq!(first.len(), 36);
        assert_eq!(first.len(), second.len());
        for (a, b) in first.iter().zip(&second) {
            assert!(a.passed, "{} failed: {} vs {}", a.name, a.lhs, a.rhs);
            assert_eq!(a.lhs.to_bits(), b.lhs.to_bits());
            assert_eq!(a.rhs.to_bits(), b.rhs.to_bits());
        }
    }

    #[test]
    fn suite_rejects_degenerate_dimension_range() {
        assert!(matches!(
            run_check_suite(1, 1..=4, 2),
            Err(Error::Domain(_))
        ));
    }
}
