//! Acceptance gate: one test per stated criterion, each printing a single
//! PASS/FAIL line for the harness before asserting.

mod common;

use std::time::Instant;

use common::*;
use num_complex::Complex64;
use yamamoto_core::expflow::{exp_iterate_limit, exp_limit_matrix, expm, realpart_flag};
use yamamoto_core::jordan::jordan_chevalley;
use yamamoto_core::matcore::{eigenvalues, op_norm, ComplexMatrix};
use yamamoto_core::oracle::{brute_force_limit, run_check_suite};
use yamamoto_core::tol::{default_cluster_tol, MEM_TOL};
use yamamoto_core::yamamoto::{
    growth_exponent_exact, growth_exponent_iterative, iterate_limit, limit_matrix,
    modulus_flag, shell_invariance_check, singular_value_limits, trace_convergence,
};

fn conclude(criterion: u32, violations: Vec<String>) {
    if violations.is_empty() {
        println!("criterion {criterion}: PASS");
    } else {
        println!("criterion {criterion}: FAIL");
    }
    assert!(violations.is_empty(), "criterion {criterion}:\n{}", violations.join("\n"));
}

/// The shared acceptance family: 6x6 `S T S^-1`, triangular `T` with
/// moduli separated 0.4 relative, `cond(S) = 100`.
fn family(count: usize) -> Vec<ComplexMatrix> {
    let mut r = rng(0x59414d41);
    (0..count).map(|_| spectral_instance(&mut r, 6, 100.0)).collect()
}

fn sorted_moduli(a: &ComplexMatrix) -> Vec<f64> {
    let mut mods: Vec<f64> = eigenvalues(a).unwrap().iter().map(|z| z.norm()).collect();
    mods.sort_by(f64::total_cmp);
    mods
}

#[test]
fn criterion_01_iterate_agrees_with_closed_form() {
    let started = Instant::now();
    let mut violations = Vec::new();
    for (i, a) in family(50).iter().enumerate() {
        let tol = default_cluster_tol(op_norm(a).unwrap());
        let closed = limit_matrix(a, tol).unwrap();
        let iterated = iterate_limit(a, 20).unwrap();
        let scale = op_norm(closed.h.matrix()).unwrap();
        let diff = op_norm(&(iterated.matrix() - closed.h.matrix())).unwrap();
        if diff > 1e-2 * scale {
            violations.push(format!("instance {i}: |H_20 - H| = {diff:e} > 1e-2 * {scale:e}"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 10.0 {
        violations.push(format!("runtime {elapsed:?} exceeded 10 s"));
    }
    conclude(1, violations);
}

#[test]
fn criterion_02_limit_spectrum_is_eigenvalue_moduli() {
    let mut violations = Vec::new();
    for (i, a) in family(50).iter().enumerate() {
        let mods = sorted_moduli(a);
        let tol = default_cluster_tol(op_norm(a).unwrap());
        let closed = limit_matrix(a, tol).unwrap();
        for (j, (have, want)) in closed.h.eigs().iter().zip(&mods).enumerate() {
            if (have - want).abs() > 1e-8 {
                violations.push(format!(
                    "instance {i} closed path, eig {j}: {have} vs modulus {want}"
                ));
            }
        }
        let iterated = iterate_limit(a, 20).unwrap();
        for (j, (have, want)) in iterated.eigs().iter().zip(&mods).enumerate() {
            if (have - want).abs() > 1e-2 {
                violations.push(format!(
                    "instance {i} iterative path, eig {j}: {have} vs modulus {want}"
                ));
            }
        }
    }
    conclude(2, violations);
}

#[test]
fn criterion_03_singular_value_roots_reach_moduli() {
    let mut violations = Vec::new();
    for (i, a) in family(50).iter().enumerate() {
        let tol = default_cluster_tol(op_norm(a).unwrap());
        let lims = singular_value_limits(a, tol, 20).unwrap();
        let scale = lims.limits[0].max(1.0);
        for (j, series) in lims.series.iter().enumerate() {
            let have = series.last().unwrap().1;
            let want = lims.limits[j];
            if (have - want).abs() > 1e-2 * scale {
                violations.push(format!(
                    "instance {i}, s_{}: {have} vs {want} (scale {scale})",
                    j + 1
                ));
            }
        }
    }
    conclude(3, violations);
}

#[test]
fn criterion_04_trace_series_converges_from_above() {
    let mut violations = Vec::new();
    for (i, a) in family(50).iter().enumerate() {
        let mods = sorted_moduli(a);
        for p in [0.5, 1.0, 2.0] {
            let target: f64 = mods.iter().map(|&m| m.powf(p)).sum();
            let series = trace_convergence(a, p, 20).unwrap();
            let last = series.last().unwrap().1;
            if (last - target).abs() > 1e-2 {
                violations.push(format!(
                    "instance {i}, p {p}: final {last} vs sum of moduli^p {target}"
                ));
            }
            for &(n, value) in &series {
                if value < target - 1e-9 {
                    violations.push(format!(
                        "instance {i}, p {p}, n {n}: {value} dips below {target}"
                    ));
                }
            }
        }
    }
    conclude(4, violations);
}

#[test]
fn criterion_05_inequality_suite_is_clean() {
    let started = Instant::now();
    let mut violations = Vec::new();
    let results = run_check_suite(42, 2..=8, 200).unwrap();
    for r in &results {
        if !r.passed {
            violations.push(format!(
                "{} failed: lhs {} rhs {} ({})",
                r.name, r.lhs, r.rhs, r.context
            ));
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        violations.push(format!("runtime {elapsed:?} exceeded 30 s"));
    }
    conclude(5, violations);
}

#[test]
fn criterion_06_jordan_chevalley_invariants() {
    let mut violations = Vec::new();
    let structures: Vec<Vec<(Complex64, usize)>> = vec![
        vec![
            (Complex64::new(2.0, 0.0), 1),
            (Complex64::new(-1.0, 0.0), 1),
            (Complex64::new(0.0, 1.0), 1),
        ],
        vec![
            (Complex64::new(1.5, 0.0), 3),
            (Complex64::new(-0.5, 0.8), 2),
        ],
        vec![
            (Complex64::new(0.9, -0.4), 2),
            (Complex64::new(2.2, 0.0), 3),
            (Complex64::new(-1.1, 1.0), 3),
        ],
        vec![
            (Complex64::new(0.0, 0.5), 3),
            (Complex64::new(1.0, 0.0), 1),
            (Complex64::new(-2.0, 0.0), 2),
            (Complex64::new(3.0, 0.5), 2),
        ],
    ];
    let mut r = rng(0x4a43);
    for (i, blocks) in structures.iter().enumerate() {
        let a = jordan_structure(&mut r, blocks);
        let m = a.order();
        let norm_a = op_norm(&a).unwrap();
        let jc = jordan_chevalley(&a, 1e-3).unwrap();

        let resid = (&(&a - &jc.d) - &jc.n).fro_norm();
        if resid != 0.0 {
            violations.push(format!("structure {i}: A - D - N has norm {resid:e}"));
        }
        let comm = op_norm(&(&(&jc.d * &jc.n) - &(&jc.n * &jc.d))).unwrap();
        if comm > 1e-8 * norm_a * norm_a {
            violations.push(format!("structure {i}: |DN - ND| = {comm:e}"));
        }
        let mut pow = jc.n.clone();
        for _ in 1..m {
            pow = &pow * &jc.n;
        }
        let nil = op_norm(&pow).unwrap();
        if nil > 1e-8 * norm_a.powi(m as i32) {
            violations.push(format!("structure {i}: |N^{m}| = {nil:e}"));
        }
        let mut sum = ComplexMatrix::zeros(m, m);
        for p in &jc.projectors {
            sum = sum + p;
        }
        let part = op_norm(&(&sum - &ComplexMatrix::identity(m))).unwrap();
        if part > 1e-8 {
            violations.push(format!("structure {i}: projector sum off by {part:e}"));
        }
    }
    conclude(6, violations);
}

#[test]
fn criterion_07_growth_exponents_and_shell_invariance() {
    let mut violations = Vec::new();
    let mut r = rng(0x47524f57);
    for (i, a) in family(5).iter().enumerate() {
        let tol = default_cluster_tol(op_norm(a).unwrap());
        let flag = modulus_flag(a, tol).unwrap();
        let top = flag.spectral_radius();
        let scale = top.max(1.0);
        for v in 0..20 {
            let x = random_unit_vector(&mut r, 6);
            let exact = growth_exponent_exact(&flag, &x, MEM_TOL).unwrap();
            let iter = growth_exponent_iterative(a, &x, 20).unwrap();
            if (exact.exponent - iter.value).abs() > 1e-2 * scale {
                violations.push(format!(
                    "instance {i} vector {v}: exact {} vs iterative {}",
                    exact.exponent, iter.value
                ));
            }
            let orbit = shell_invariance_check(a, &flag, &x, 5).unwrap();
            if !orbit.invariant {
                violations.push(format!(
                    "instance {i} vector {v}: orbit left shell {}",
                    orbit.base_shell
                ));
            }
        }
        // also walk orbits that start deeper in the flag
        for (j, e) in flag.projections.iter().enumerate() {
            let g = random_unit_vector(&mut r, 6);
            let mut x = e.apply(&g);
            let n = yamamoto_core::matcore::vec_norm(&x);
            if n < 1e-8 {
                continue;
            }
            yamamoto_core::matcore::vec_scale(&mut x, 1.0 / n);
            let orbit = shell_invariance_check(a, &flag, &x, 5).unwrap();
            if !orbit.invariant {
                violations.push(format!(
                    "instance {i} level {j}: projected orbit left shell {}",
                    orbit.base_shell
                ));
            }
        }
    }
    conclude(7, violations);
}

#[test]
fn criterion_08_exponential_flow_agreement() {
    let mut violations = Vec::new();
    let mut r = rng(0x45585046);
    for i in 0..10 {
        let t = re_separated_triangular(&mut r, 5, 0.4);
        let q = random_unitary(&mut r, 5);
        let a = &(&q * &t) * &q.adjoint();
        let tol = default_cluster_tol(op_norm(&a).unwrap());

        let closed = exp_limit_matrix(&a, tol).unwrap();
        let iterated = exp_iterate_limit(&a, 20).unwrap();
        let scale = op_norm(closed.matrix()).unwrap();
        let diff = op_norm(&(iterated.matrix() - closed.matrix())).unwrap();
        if diff > 1e-2 * scale {
            violations.push(format!("instance {i}: exp limit diff {diff:e} > 1e-2 * {scale:e}"));
        }

        let f = realpart_flag(&a, tol).unwrap();
        let e = modulus_flag(&expm(&a).unwrap(), tol).unwrap();
        if f.levels() != e.levels() {
            violations.push(format!(
                "instance {i}: flag level counts differ ({} vs {})",
                f.levels(),
                e.levels()
            ));
            continue;
        }
        for j in 0..f.levels() {
            let angle = principal_angle_max(&f.projections[j], &e.projections[j]);
            if angle > 1e-6 {
                violations.push(format!("instance {i} level {j}: principal angle {angle:e}"));
            }
        }
    }
    conclude(8, violations);
}

#[test]
fn criterion_09_brute_force_agrees_with_scaled_pipeline() {
    let mut violations = Vec::new();
    let mut r = rng(0x4f524143);
    // tighter modulus spreads at larger n keep the plain-product side
    // accurate; all instances arrive prescaled with top modulus one
    let cases: [(u32, f64, f64); 3] = [(4, 1.4, 0.3), (6, 1.2, 0.15), (8, 1.05, 0.05)];
    for &(k, spread, coupling) in &cases {
        let n = 1u64 << k;
        for i in 0..5 {
            let a = near_unitary_instance(&mut r, 4, spread, coupling);
            let brute = brute_force_limit(&a, n).unwrap();
            let scaled = iterate_limit(&a, k).unwrap();
            let norm = op_norm(scaled.matrix()).unwrap();
            let diff = op_norm(&(brute.matrix() - scaled.matrix())).unwrap();
            if diff > 1e-8 * norm {
                violations.push(format!(
                    "n {n} instance {i}: diff {diff:e} > 1e-8 * {norm:e}"
                ));
            }
        }
    }
    conclude(9, violations);
}
