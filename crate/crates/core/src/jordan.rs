//! Jordan-Chevalley splitting `A = D + N`.
//!
//! Eigenvalues are grouped by single-linkage clustering, each cluster gets an
//! oblique spectral projector built from a reordered Schur form, and the
//! diagonalizable part is assembled as `D = sum_c center_c * P_c`. The
//! nilpotent part is `N = A - D` by definition, so `A = D + N` holds exactly
//! in floating point; the interesting invariants (commutation, nilpotency,
//! partition of identity) hold within `JC_TOL` scaled by powers of `||A||`.
//!
//! Clustering is discontinuous at the tolerance boundary by nature: a
//! defective matrix whose computed eigenvalues scatter wider than
//! `cluster_tol` splits into spurious clusters. The split then either trips
//! the Sylvester separation guard or degenerates visibly: projector norms
//! blow up and the reported eigenstructure is only as accurate as the
//! scatter. Both outcomes are deliberate flags, not defects.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::matcore::{
    op_norm, reorder_schur, schur, sylvester_solve, ComplexMatrix, Schur,
};
use crate::{Error, Result};

/// A cluster of nearby eigenvalues.
#[derive(Clone, Debug)]
pub struct EigCluster {
    /// Arithmetic mean of the members. The mean is as well-conditioned as
    /// the trace of the cluster block, so it stays accurate even when the
    /// individual defective eigenvalues scatter.
    pub center: Complex64,
    /// Member eigenvalues with their positions in the Schur diagonal.
    pub members: Vec<(Complex64, usize)>,
}

impl EigCluster {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    /// True when `z` is one of the member eigenvalues (bitwise, or within a
    /// rounding-level distance). Schur reordering preserves diagonal values
    /// exactly, so eigenvalues of the same matrix match bitwise.
    fn contains(&self, z: Complex64) -> bool {
        self.members
            .iter()
            .any(|&(v, _)| v == z || (v - z).norm() <= 1e-12 * z.norm().max(1.0))
    }
}

/// The splitting `A = D + N` with its clusters and oblique projectors.
#[derive(Clone, Debug)]
pub struct JCDecomp {
    /// Diagonalizable part.
    pub d: ComplexMatrix,
    /// Nilpotent part, stored as the exact difference `A - D`.
    pub n: ComplexMatrix,
    /// Clusters in ascending `|center|` order (ties by ascending argument).
    pub clusters: Vec<EigCluster>,
    /// Oblique spectral projector per cluster, same order as `clusters`.
    pub projectors: Vec<ComplexMatrix>,
}

/// Groups eigenvalues by single-linkage clustering: two eigenvalues share a
/// cluster when a chain of pairwise distances `<= cluster_tol` connects them.
/// Clusters come back sorted by ascending `|center|`, ties broken by
/// ascending argument.
pub fn cluster_eigenvalues(eigs: &[Complex64], cluster_tol: f64) -> Vec<EigCluster> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= cluster_tol {
                let ri = find(&mut parent, i);
                let rj = find(&mut parent, j);
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if group_of[root] == usize::MAX {
            group_of[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[root]].push(i);
    }

    let mut clusters: Vec<EigCluster> = groups
        .into_iter()
        .map(|idx| {
            let sum: Complex64 = idx.iter().map(|&i| eigs[i]).sum();
            let center = sum / idx.len() as f64;
            EigCluster {
                center,
                members: idx.into_iter().map(|i| (eigs[i], i)).collect(),
            }
        })
        .collect();
    clusters.sort_by(|a, b| {
        a.center
            .norm()
            .total_cmp(&b.center.norm())
            .then(a.center.arg().total_cmp(&b.center.arg()))
    });
    clusters
}

/// Projector from an existing Schur form: the cluster is moved to the front,
/// the coupling block is removed by a Sylvester solve, and
/// `P = Q [[I, X], [0, 0]] Q*`.
fn projector_from_schur(sch: &Schur, cluster: &EigCluster) -> Result<ComplexMatrix> {
    let m = sch.t.order();
    let os = reorder_schur(sch, |z| cluster.contains(z));
    let r = os.selected;
    if r != cluster.multiplicity() {
        return Err(Error::Domain(
            "cluster members do not match the spectrum of the matrix",
        ));
    }
    let t11 = os.t.block(0, r, 0, r);
    let t22 = os.t.block(r, m, r, m);
    let t12 = os.t.block(0, r, r, m);
    let x = sylvester_solve(&t11, &t22, &t12).map_err(|e| match e {
        Error::SingularSeparation { t11, t22, sep_tol } => Error::IllConditionedCluster {
            center: cluster.center,
            separation: (t11 - t22).norm(),
            sep_tol,
        },
        other => other,
    })?;
    // inner = [[I, X], [0, 0]] in the reordered basis
    let mut inner = ComplexMatrix::zeros(m, m);
    for i in 0..r {
        inner[(i, i)] = Complex64::new(1.0, 0.0);
        for j in 0..m - r {
            inner[(i, r + j)] = x[(i, j)];
        }
    }
    Ok(&(&os.q * &inner) * &os.q.adjoint())
}

/// Oblique spectral projector of `a` onto the invariant subspace of
/// `cluster`, along the complementary invariant subspace.
pub fn spectral_projector(a: &ComplexMatrix, cluster: &EigCluster) -> Result<ComplexMatrix> {
    projector_from_schur(&schur(a)?, cluster)
}

/// Jordan-Chevalley splitting of `a` at the given clustering tolerance.
pub fn jordan_chevalley(a: &ComplexMatrix, cluster_tol: f64) -> Result<JCDecomp> {
    let sch = schur(a)?;
    let m = a.order();
    let eigs: Vec<Complex64> = (0..m).map(|i| sch.t[(i, i)]).collect();
    let clusters = cluster_eigenvalues(&eigs, cluster_tol);

    let mut projectors = Vec::with_capacity(clusters.len());
    let mut d = ComplexMatrix::zeros(m, m);
    for cluster in &clusters {
        let p = projector_from_schur(&sch, cluster)?;
        d = d + &p.scale_complex(cluster.center);
        projectors.push(p);
    }
    let n = a - &d;
    Ok(JCDecomp {
        d,
        n,
        clusters,
        projectors,
    })
}

/// How far `D` is from acting as a scalar on each cluster range:
/// `max_c ||(D - center_c I) P_c|| / ||D||`. Zero for a well-split decomposition;
/// blows up when clusters were split below the eigenvalue scatter and the
/// projectors degenerate.
pub fn diagonalizability_residual(jc: &JCDecomp) -> Result<f64> {
    let m = jc.d.order();
    let d_norm = op_norm(&jc.d)?;
    if d_norm == 0.0 {
        return Ok(0.0);
    }
    let mut worst: f64 = 0.0;
    for (cluster, p) in jc.clusters.iter().zip(&jc.projectors) {
        let shifted = &jc.d - &ComplexMatrix::identity(m).scale_complex(cluster.center);
        worst = worst.max(op_norm(&(&shifted * p))?);
    }
    Ok(worst / d_norm)
}
