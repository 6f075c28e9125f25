//! Modulus flag, asymptotic limit of `|A^n|^(1/n)`, and growth exponents.
//!
//! The distinct eigenvalue moduli `a_1 < ... < a_k` of `A` induce a flag of
//! orthogonal projections `E_1, ..., E_k = I`, where `ran(E_j)` is the sum of
//! the generalized eigenspaces for eigenvalues with `|lambda| <= a_j`. The
//! sequence `|A^n|^(1/n)` converges to `H = sum_j a_j (E_j - E_{j-1})`, a
//! nonzero vector `x` grows like `a_j^n` exactly when it sits in
//! `ran(E_j) \ ran(E_{j-1})`, and that shell structure is invariant under
//! powers of `A`. The `singular_value_limits` series recovers
//! `s_j(A^n)^(1/n) -> |lambda_j|` and `trace_convergence` the one-sided
//! approach of `tr(|A^n|^(p/n))` to `sum |lambda_i|^p`.
//!
//! All finite-`n` quantities run through the block-scaled squaring of
//! [`crate::matcore::GradedPower`]. A single-scale renormalized squaring
//! would forget every singular direction whose relative size drops below
//! machine epsilon, which happens within a few hundred doublings for any
//! spectrum with separated moduli; the graded form keeps each level at its
//! own scale, so `n = 2^K` with `K = 20` resolves all of them.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::matcore::{
    cluster_line, op_norm, reorder_schur, schur, vec_norm, vec_scale, CVector,
    ComplexMatrix, GradedPower, HermitianMatrix, PsdMatrix,
};
use crate::tol::{default_cluster_tol, MEM_TOL};
use crate::{Error, Result};

/// The flag of orthogonal projections attached to the eigenvalue moduli.
#[derive(Clone, Debug)]
pub struct ModulusFlag {
    /// Distinct clustered moduli, ascending: `a_1 < ... < a_k`.
    pub moduli: Vec<f64>,
    /// Algebraic multiplicity behind each modulus; sums to the order.
    pub multiplicities: Vec<usize>,
    /// Orthogonal projections `E_1, ..., E_k`; `E_0 = 0` is implicit and
    /// `E_k = I`. `ran(E_j)` is the sum of generalized eigenspaces for
    /// `|lambda| <= a_j`.
    pub projections: Vec<PsdMatrix>,
}

impl ModulusFlag {
    /// Number of distinct moduli `k`.
    pub fn levels(&self) -> usize {
        self.moduli.len()
    }

    /// Order of the underlying matrix.
    pub fn order(&self) -> usize {
        self.projections[0].order()
    }

    /// Largest modulus `a_k`, the spectral radius.
    pub fn spectral_radius(&self) -> f64 {
        *self.moduli.last().expect("flag has at least one level")
    }
}

/// The limit `H` of `|A^n|^(1/n)` together with the flag that builds it.
#[derive(Clone, Debug)]
pub struct AsymptoticLimit {
    /// `H = sum_j a_j (E_j - E_{j-1})`, positive semidefinite.
    pub h: PsdMatrix,
    pub flag: ModulusFlag,
}

/// Shell membership of one vector: `x` in `ran(E_j) \ ran(E_{j-1})` grows
/// like `a_j^n`.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub vector: CVector,
    /// Zero-based index into `moduli` of the first flag level containing
    /// the vector.
    pub shell_index: usize,
    /// The growth exponent `a_j` for that shell.
    pub exponent: f64,
    /// Finite-`n` diagnostics `(n, ||A^n x||^(1/n))` when computed
    /// iteratively; empty for the closed-form path.
    pub series: Vec<(u64, f64)>,
}

/// Finite-`n` estimate of a growth exponent with its doubling series.
#[derive(Clone, Debug)]
pub struct GrowthSeries {
    /// `||A^n x||^(1/n)` at the last stage `n = 2^K`.
    pub value: f64,
    /// All stages `(n, ||A^n x||^(1/n))` for `n = 1, 2, 4, ..., 2^K`.
    pub series: Vec<(u64, f64)>,
}

/// One step of a shell-invariance orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStep {
    /// The iterate lies in this flag shell (zero-based level index).
    Shell(usize),
    /// The iterate became exactly zero; only possible when `a_1 = 0`.
    Degenerate,
}

/// Orbit trace for `x, Ax, A^2 x, ...` against a fixed flag.
#[derive(Clone, Debug)]
pub struct ShellInvariance {
    /// Shell of the starting vector.
    pub base_shell: usize,
    /// Shell of each successive iterate; stops early on a degenerate orbit.
    pub trace: Vec<OrbitStep>,
    /// True when every non-degenerate iterate stayed in the base shell.
    pub invariant: bool,
}

/// Yamamoto limits `s_j(A^n)^(1/n) -> |lambda_j|` with their finite-`n`
/// series.
#[derive(Clone, Debug)]
pub struct SingularValueLimits {
    /// `|lambda_j|(A)` in descending order with multiplicity.
    pub limits: Vec<f64>,
    /// `series[j]` lists `(n, s_{j+1}(A^n)^(1/n))` over the doubling stages.
    pub series: Vec<Vec<(u64, f64)>>,
}

/// Builds the graded projections for an arbitrary real key on the spectrum
/// (modulus here, real part for the exponential flow). Keys are clustered by
/// single-linkage on the line; level `j` selects every eigenvalue whose key
/// lies at or below that cluster. Reordering preserves Schur diagonal values
/// bitwise, so the selection threshold `max member + cluster_tol / 2` splits
/// the inter-cluster gap safely even for chained clusters.
pub(crate) fn graded_projections(
    a: &ComplexMatrix,
    cluster_tol: f64,
    key: impl Fn(Complex64) -> f64,
) -> Result<(Vec<f64>, Vec<usize>, Vec<PsdMatrix>)> {
    let sch = schur(a)?;
    let m = a.order();
    let mut sorted: Vec<f64> = (0..m).map(|i| key(sch.t[(i, i)])).collect();
    sorted.sort_by(f64::total_cmp);
    let ranges = cluster_line(&sorted, cluster_tol);

    let mut values = Vec::with_capacity(ranges.len());
    let mut multiplicities = Vec::with_capacity(ranges.len());
    let mut projections = Vec::with_capacity(ranges.len());
    let mut cumulative = 0usize;
    for &(s, e) in &ranges {
        let level = &sorted[s..e];
        values.push(level.iter().sum::<f64>() / level.len() as f64);
        multiplicities.push(level.len());
        cumulative += level.len();
        let threshold = sorted[e - 1] + 0.5 * cluster_tol;
        let os = reorder_schur(&sch, |z| key(z) <= threshold);
        let r = os.selected;
        if r != cumulative {
            return Err(Error::Domain(
                "clustering produced an inconsistent flag level selection",
            ));
        }
        // eigenvectors for eigenvalue 0 (kernel) first, then the invariant
        // subspace columns for eigenvalue 1, matching ascending eigs
        let basis = ComplexMatrix::from_fn(m, m, |row, col| {
            if col < m - r {
                os.q[(row, r + col)]
            } else {
                os.q[(row, col - (m - r))]
            }
        });
        let mut eigs = vec![0.0; m - r];
        eigs.extend(core::iter::repeat(1.0).take(r));
        projections.push(PsdMatrix::from_spectral(basis, eigs));
    }
    Ok((values, multiplicities, projections))
}

/// The modulus flag of `a`: clustered `|lambda|` values and their nested
/// orthogonal projections.
pub fn modulus_flag(a: &ComplexMatrix, cluster_tol: f64) -> Result<ModulusFlag> {
    let (moduli, multiplicities, projections) =
        graded_projections(a, cluster_tol, |z| z.norm())?;
    Ok(ModulusFlag {
        moduli,
        multiplicities,
        projections,
    })
}

/// Closed-form limit of `|A^n|^(1/n)`: `H = sum_j a_j (E_j - E_{j-1})`.
pub fn limit_matrix(a: &ComplexMatrix, cluster_tol: f64) -> Result<AsymptoticLimit> {
    let flag = modulus_flag(a, cluster_tol)?;
    let m = flag.order();
    let mut h = ComplexMatrix::zeros(m, m);
    let mut prev: Option<&PsdMatrix> = None;
    for (j, e) in flag.projections.iter().enumerate() {
        let diff = match prev {
            Some(p) => e.matrix() - p.matrix(),
            None => e.matrix().clone(),
        };
        h = h + &diff.scale(flag.moduli[j]);
        prev = Some(e);
    }
    let h = PsdMatrix::new(&HermitianMatrix::new(&h)?)?;
    Ok(AsymptoticLimit { h, flag })
}

/// The finite-`n` matrix `|A^n|^(1/n)` at `n = 2^K`, via block-scaled
/// squaring. The zero matrix is its own limit.
pub fn iterate_limit(a: &ComplexMatrix, k: u32) -> Result<PsdMatrix> {
    let mut gp = GradedPower::new(a, default_cluster_tol(op_norm(a)?))?;
    for _ in 0..k {
        gp.square()?;
    }
    let spec = gp.spectrum()?;
    let n = spec.exponent as f64;
    // spectral data comes descending; PSD storage wants ascending
    let m = a.order();
    let eigs: Vec<f64> = spec
        .log_values
        .iter()
        .rev()
        .map(|&lv| {
            if lv == f64::NEG_INFINITY {
                0.0
            } else {
                libm::exp(lv / n)
            }
        })
        .collect();
    let basis = ComplexMatrix::from_fn(m, m, |r, j| spec.vectors[(r, m - 1 - j)]);
    Ok(PsdMatrix::from_spectral(basis, eigs))
}

/// First level of a nested projection family whose projection fixes `x`
/// within `mem_tol` relative deviation; the last level is the fallback since
/// its projection is the identity.
pub(crate) fn flag_shell_index(
    projections: &[PsdMatrix],
    x: &[Complex64],
    mem_tol: f64,
) -> Result<usize> {
    let xnorm = vec_norm(x);
    if xnorm == 0.0 {
        return Err(Error::Domain("shell membership of the zero vector is undefined"));
    }
    let mut shell = projections.len() - 1;
    for (j, e) in projections.iter().enumerate() {
        let px = e.apply(x);
        let dev_sq: f64 = px
            .iter()
            .zip(x)
            .map(|(p, v)| (p - v).norm_sqr())
            .sum();
        if libm::sqrt(dev_sq) <= mem_tol * xnorm {
            shell = j;
            break;
        }
    }
    Ok(shell)
}

/// Shell membership of `x` under the flag: the first level whose projection
/// fixes `x` within `mem_tol` relative deviation. The exponent is that
/// shell's modulus.
pub fn growth_exponent_exact(
    flag: &ModulusFlag,
    x: &[Complex64],
    mem_tol: f64,
) -> Result<GrowthReport> {
    let shell_index = flag_shell_index(&flag.projections, x, mem_tol)?;
    Ok(GrowthReport {
        vector: x.to_vec(),
        shell_index,
        exponent: flag.moduli[shell_index],
        series: Vec::new(),
    })
}

/// `||A^n x||^(1/n)` at `n = 2^K`, with the whole doubling series as
/// diagnostics. Norms stay in the log domain so large `n` cannot overflow.
pub fn growth_exponent_iterative(
    a: &ComplexMatrix,
    x: &[Complex64],
    k: u32,
) -> Result<GrowthSeries> {
    if vec_norm(x) == 0.0 {
        return Err(Error::Domain("growth exponent of the zero vector is undefined"));
    }
    let mut gp = GradedPower::new(a, default_cluster_tol(op_norm(a)?))?;
    let mut series = Vec::with_capacity(k as usize + 1);
    for stage in 0..=k {
        let n = gp.exponent() as f64;
        let ln_norm = gp.log_vector_norm(x);
        let val = if ln_norm == f64::NEG_INFINITY {
            0.0
        } else {
            libm::exp(ln_norm / n)
        };
        series.push((gp.exponent(), val));
        if stage < k {
            gp.square()?;
        }
    }
    let value = series.last().expect("at least one stage").1;
    Ok(GrowthSeries { value, series })
}

/// Follows the orbit `x, Ax, A^2 x, ...` and records the shell of each
/// iterate. Iterates are renormalized, so long orbits cannot overflow; an
/// exactly zero iterate ends the orbit as a degenerate outcome rather than
/// an error.
pub fn shell_invariance_check(
    a: &ComplexMatrix,
    flag: &ModulusFlag,
    x: &[Complex64],
    steps: usize,
) -> Result<ShellInvariance> {
    let base = growth_exponent_exact(flag, x, MEM_TOL)?;
    let mut trace = Vec::with_capacity(steps);
    let mut invariant = true;
    let mut y: CVector = x.to_vec();
    let n0 = vec_norm(&y);
    vec_scale(&mut y, 1.0 / n0);
    for _ in 0..steps {
        y = a.mat_vec(&y);
        let ny = vec_norm(&y);
        if ny == 0.0 {
            trace.push(OrbitStep::Degenerate);
            break;
        }
        vec_scale(&mut y, 1.0 / ny);
        let rep = growth_exponent_exact(flag, &y, MEM_TOL)?;
        if rep.shell_index != base.shell_index {
            invariant = false;
        }
        trace.push(OrbitStep::Shell(rep.shell_index));
    }
    Ok(ShellInvariance {
        base_shell: base.shell_index,
        trace,
        invariant,
    })
}

/// Yamamoto's singular value limits: `s_j(A^n)^(1/n) -> |lambda_j|(A)`
/// descending, with the finite-`n` series for each `j`.
pub fn singular_value_limits(
    a: &ComplexMatrix,
    cluster_tol: f64,
    k: u32,
) -> Result<SingularValueLimits> {
    let flag = modulus_flag(a, cluster_tol)?;
    let m = a.order();
    let mut limits = Vec::with_capacity(m);
    for j in (0..flag.levels()).rev() {
        for _ in 0..flag.multiplicities[j] {
            limits.push(flag.moduli[j]);
        }
    }

    let mut gp = GradedPower::new(a, cluster_tol)?;
    let mut series = vec![Vec::with_capacity(k as usize + 1); m];
    for stage in 0..=k {
        let n = gp.exponent() as f64;
        let lv = gp.log_singular_values()?;
        for (j, col) in series.iter_mut().enumerate() {
            let val = if lv[j] == f64::NEG_INFINITY {
                0.0
            } else {
                libm::exp(lv[j] / n)
            };
            col.push((gp.exponent(), val));
        }
        if stage < k {
            gp.square()?;
        }
    }
    Ok(SingularValueLimits { limits, series })
}

/// The series `tr(|A^n|^(p/n))` over the doubling stages `n = 1, ..., 2^K`.
/// It decreases monotonically to `sum_i |lambda_i|^p` from above.
pub fn trace_convergence(a: &ComplexMatrix, p: f64, k: u32) -> Result<Vec<(u64, f64)>> {
    if !(p > 0.0) {
        return Err(Error::Domain("trace exponent p must be positive"));
    }
    let mut gp = GradedPower::new(a, default_cluster_tol(op_norm(a)?))?;
    let mut out = Vec::with_capacity(k as usize + 1);
    for stage in 0..=k {
        let n = gp.exponent() as f64;
        let tr: f64 = gp
            .log_singular_values()?
            .iter()
            .map(|&lv| {
                if lv == f64::NEG_INFINITY {
                    0.0
                } else {
                    libm::exp(p * lv / n)
                }
            })
            .sum();
        out.push((gp.exponent(), tr));
        if stage < k {
            gp.square()?;
        }
    }
    Ok(out)
}
