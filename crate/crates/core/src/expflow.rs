//! Matrix exponential asymptotics: real-part flag, `|e^{tA}|^{1/t}`, and
//! growth classification of trajectories of `x'(t) = A x(t)`.
//!
//! The eigenvalue real parts `h_1 < ... < h_k` of `A` play the role that
//! moduli play for powers. The nested projections `F_1, ..., F_k = I` onto
//! sums of generalized eigenspaces with `Re lambda <= h_j` give the limit
//! `|e^{tA}|^{1/t} -> sum_j e^{h_j} (F_j - F_{j-1})`, a solution `e^{tA} x`
//! grows like `e^{h_j t}` exactly when `x` lies in shell `j` of that flag,
//! and shells are invariant under the flow. Everything reduces to the power
//! case through `e^A`: the real-part flag of `A` is the modulus flag of
//! `e^A`, with `a_j = e^{h_j}`.
//!
//! Finite-`t` witness samples share the caveat of every deep-shell
//! measurement: once `eps * e^{h_k t}` overtakes `e^{h_j t}`, rounding in the
//! stored initial vector redirects the measured norm toward the top shell.
//! The samples are honest measurements of the floating-point vector, not of
//! the ideal one.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::matcore::{
    lu_solve, op_norm, vec_norm, vec_scale, CVector, ComplexMatrix, GradedPower,
    HermitianMatrix, PsdMatrix,
};
use crate::tol::default_cluster_tol;
use crate::yamamoto::{flag_shell_index, graded_projections, iterate_limit};
use crate::{Error, Result};

/// Coefficients of the degree-13 diagonal rational approximant to the
/// exponential, constant term first.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Operator-norm bound under which the approximant is applied directly;
/// larger inputs are halved until they fit and squared back afterwards.
const EXPM_NORM_MAX: f64 = 0.5;

/// Number of doublings in a trajectory witness grid: `t = 1, 2, ..., 2^8`.
const WITNESS_STAGES: u32 = 8;

/// Half-width factor of the witness exponent bracket around `h_j`.
const BRACKET_FACTOR: f64 = 0.1;

/// The flag of orthogonal projections attached to the eigenvalue real parts.
#[derive(Clone, Debug)]
pub struct RealPartFlag {
    /// Distinct clustered real parts, ascending: `h_1 < ... < h_k`.
    pub realparts: Vec<f64>,
    /// Algebraic multiplicity behind each real part; sums to the order.
    pub multiplicities: Vec<usize>,
    /// Orthogonal projections `F_1, ..., F_k`; `F_0 = 0` is implicit and
    /// `F_k = I`. `ran(F_j)` is the sum of generalized eigenspaces for
    /// `Re lambda <= h_j`.
    pub projections: Vec<PsdMatrix>,
}

impl RealPartFlag {
    /// Number of distinct real parts `k`.
    pub fn levels(&self) -> usize {
        self.realparts.len()
    }

    /// Order of the underlying matrix.
    pub fn order(&self) -> usize {
        self.projections[0].order()
    }

    /// Largest real part `h_k`, the spectral abscissa.
    pub fn spectral_abscissa(&self) -> f64 {
        *self.realparts.last().expect("flag has at least one level")
    }
}

/// Finite-`t` witness that a trajectory stays between `e^{rho t}` and
/// `e^{omega t}` scales.
#[derive(Clone, Debug)]
pub struct BoundWitness {
    /// Lower bracket exponent, strictly below the shell's `h_j`.
    pub rho: f64,
    /// Upper bracket exponent, strictly above the shell's `h_j`.
    pub omega: f64,
    /// `(t, ln ||e^{tA} x0|| / t)` over the geometric grid.
    pub samples: Vec<(f64, f64)>,
}

/// Growth classification of the solution `e^{tA} x0`.
#[derive(Clone, Debug)]
pub struct TrajectoryReport {
    pub initial: CVector,
    /// Zero-based index into the real-part flag of the shell holding `x0`.
    pub shell_index: usize,
    /// `e^{h_j}` for that shell: `||e^{tA} x0||^{1/t}` converges to it.
    pub growth_base: f64,
    pub bound_witness: BoundWitness,
}

/// Shell trace of `e^{sA} x0` across a grid of flow times.
#[derive(Clone, Debug)]
pub struct TrajectoryInvariance {
    /// Shell of the starting vector.
    pub base_shell: usize,
    /// Shell of `e^{sA} x0` for each grid entry, in order.
    pub trace: Vec<usize>,
    /// True when every grid point stayed in the base shell.
    pub invariant: bool,
}

/// `e^A` by scaling and squaring: halve until `||A / 2^s|| <= 0.5`, apply
/// the degree-13 diagonal approximant, square `s` times. For test matrices
/// with a known exponential the relative error stays below `1e-10`.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = a.order();
    for r in 0..m {
        for c in 0..m {
            let z = a[(r, c)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite);
            }
        }
    }
    let norm = op_norm(a)?;
    let s = if norm > EXPM_NORM_MAX {
        libm::ceil(libm::log2(norm / EXPM_NORM_MAX)) as i32
    } else {
        0
    };
    let scaled = a.scale(libm::scalbn(1.0, -s));

    let id = ComplexMatrix::identity(m);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = &PADE13;
    let u_high = &(&a6.scale(b[13]) + &a4.scale(b[11])) + &a2.scale(b[9]);
    let u_low = &(&a6.scale(b[7]) + &a4.scale(b[5])) + &(&a2.scale(b[3]) + &id.scale(b[1]));
    let u = &scaled * &(&(&a6 * &u_high) + &u_low);
    let v_high = &(&a6.scale(b[12]) + &a4.scale(b[10])) + &a2.scale(b[8]);
    let v_low = &(&a6.scale(b[6]) + &a4.scale(b[4])) + &(&a2.scale(b[2]) + &id.scale(b[0]));
    let v = &(&a6 * &v_high) + &v_low;
    // the approximant is (V - U)^{-1} (V + U); with the norm clamped at 0.5
    // the denominator is far from singular, so a solve failure only reports
    // a genuinely broken input
    let mut r = lu_solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

/// The real-part flag of `a`: clustered `Re lambda` values with their nested
/// orthogonal projections. Same construction as the modulus flag, keyed by
/// `Re lambda` instead of `|lambda|`.
pub fn realpart_flag(a: &ComplexMatrix, cluster_tol: f64) -> Result<RealPartFlag> {
    let (realparts, multiplicities, projections) =
        graded_projections(a, cluster_tol, |z| z.re)?;
    Ok(RealPartFlag {
        realparts,
        multiplicities,
        projections,
    })
}

/// Closed-form limit of `|e^{tA}|^{1/t}`: `sum_j e^{h_j} (F_j - F_{j-1})`.
pub fn exp_limit_matrix(a: &ComplexMatrix, cluster_tol: f64) -> Result<PsdMatrix> {
    let flag = realpart_flag(a, cluster_tol)?;
    let m = flag.order();
    let mut h = ComplexMatrix::zeros(m, m);
    let mut prev: Option<&PsdMatrix> = None;
    for (j, f) in flag.projections.iter().enumerate() {
        let diff = match prev {
            Some(p) => f.matrix() - p.matrix(),
            None => f.matrix().clone(),
        };
        h = h + &diff.scale(libm::exp(flag.realparts[j]));
        prev = Some(f);
    }
    PsdMatrix::new(&HermitianMatrix::new(&h)?)
}

/// The finite-`t` matrix `|e^{tA}|^{1/t}` at integer `t = 2^K`, reduced to
/// the power iterates of `e^A`.
pub fn exp_iterate_limit(a: &ComplexMatrix, k: u32) -> Result<PsdMatrix> {
    iterate_limit(&expm(a)?, k)
}

/// Classifies the trajectory `e^{tA} x0`: its flag shell, the growth base
/// `e^{h_j}`, and finite-`t` exponent samples bracketed by `rho < h_j <
/// omega`. The grid runs through `t = 2^i` up to `2^8` via graded squaring
/// of `e^A`, so widely split real parts cannot overflow.
pub fn trajectory_growth(
    a: &ComplexMatrix,
    x0: &[Complex64],
    cluster_tol: f64,
    mem_tol: f64,
) -> Result<TrajectoryReport> {
    let flag = realpart_flag(a, cluster_tol)?;
    let shell_index = flag_shell_index(&flag.projections, x0, mem_tol)?;
    let h = flag.realparts[shell_index];
    let spread = flag.spectral_abscissa() - flag.realparts[0];
    let margin = BRACKET_FACTOR * spread.max(1.0);

    let e = expm(a)?;
    let mut gp = GradedPower::new(&e, default_cluster_tol(op_norm(&e)?))?;
    let mut samples = Vec::with_capacity(WITNESS_STAGES as usize + 1);
    for stage in 0..=WITNESS_STAGES {
        let t = gp.exponent() as f64;
        samples.push((t, gp.log_vector_norm(x0) / t));
        if stage < WITNESS_STAGES {
            gp.square()?;
        }
    }
    Ok(TrajectoryReport {
        initial: x0.to_vec(),
        shell_index,
        growth_base: libm::exp(h),
        bound_witness: BoundWitness {
            rho: h - margin,
            omega: h + margin,
            samples,
        },
    })
}

/// Checks that the shell of `e^{sA} x0` matches the shell of `x0` for every
/// `s` in the grid. Flow times must be nonnegative; the flow is invertible,
/// so orbits never vanish.
pub fn trajectory_shell_invariance(
    a: &ComplexMatrix,
    x0: &[Complex64],
    s_grid: &[f64],
    cluster_tol: f64,
    mem_tol: f64,
) -> Result<TrajectoryInvariance> {
    let flag = realpart_flag(a, cluster_tol)?;
    let base_shell = flag_shell_index(&flag.projections, x0, mem_tol)?;
    let mut trace = Vec::with_capacity(s_grid.len());
    let mut invariant = true;
    for &s in s_grid {
        if !(s >= 0.0) {
            return Err(Error::Domain("flow times in the grid must be nonnegative"));
        }
        let mut y = expm(&a.scale(s))?.mat_vec(x0);
        let ny = vec_norm(&y);
        vec_scale(&mut y, 1.0 / ny);
        let shell = flag_shell_index(&flag.projections, &y, mem_tol)?;
        if shell != base_shell {
            invariant = false;
        }
        trace.push(shell);
    }
    Ok(TrajectoryInvariance {
        base_shell,
        trace,
        invariant,
    })
}
