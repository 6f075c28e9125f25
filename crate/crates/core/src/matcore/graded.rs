//! Block-scaled powering that survives huge exponents.
//!
//! Squaring a matrix with a single operator-norm renormalization forgets
//! every singular direction whose relative size falls below machine epsilon,
//! which happens around `n = 150` for eigenvalue moduli separated by 30%.
//! The graded representation avoids that collapse. The matrix is put in
//! ordered Schur form with the eigenvalue moduli clustered into levels and
//! sorted descending; each diagonal block carries its own log scale gamma_j,
//! and the stored triangular factor keeps block row `j` divided by
//! `e^{gamma_j}`. Squaring then combines rows with relative weights
//! `e^{gamma_p - gamma_j} <= 1`, so no intermediate can overflow and a small
//! level never drowns in a large one.
//!
//! Extraction groups the live levels into scale bands whose in-band span
//! stays below [`LN_ASSEMBLE_MAX`] log units. Each band is assembled (up to
//! one log factor) and factored by one-sided Jacobi SVD, which keeps every
//! value at high relative accuracy on graded data; lower bands are deflated
//! against the singular directions already found above them. A band split is
//! always placed at the widest available scale gap, and the coupling such a
//! split neglects is of order `e^{-2 gap}`, far below machine precision for
//! any gap that can force a split.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::matcore::jacobi::svd;
use crate::matcore::matrix::{vec_dot, vec_norm, CVector, ComplexMatrix};
use crate::matcore::op_norm;
use crate::matcore::schur::{reorder_schur, schur, Schur};
use crate::{Error, Result};

/// Largest in-band log-unit scale span the extraction will assemble into one
/// matrix. Entries scaled down by `e^{-600}` stay normalized floats and the
/// rescaled Jacobi rotations tolerate the resulting column grading, while any
/// gap wide enough to force a band split leaves a deflation error far below
/// machine precision.
const LN_ASSEMBLE_MAX: f64 = 600.0;

/// Single-linkage clustering on the real line: consecutive sorted values
/// closer than `tol` share a cluster. Returns half-open index ranges into
/// the sorted input, in ascending value order.
pub(crate) fn cluster_line(sorted: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut ranges = Vec::new();
    let mut start = 0usize;
    for i in 1..sorted.len() {
        if sorted[i] - sorted[i - 1] > tol {
            ranges.push((start, i));
            start = i;
        }
    }
    ranges.push((start, sorted.len()));
    ranges
}

/// Groups live levels, given as `(level index, gamma)` sorted descending by
/// gamma, into bands whose in-band span stays within [`LN_ASSEMBLE_MAX`].
/// When a band has to close, the cut goes to the widest gap inside the run,
/// which keeps the coupling neglected by cross-band deflation smallest.
fn scale_bands(levels: &[(usize, f64)]) -> Vec<Vec<usize>> {
    let mut bands = Vec::new();
    let mut start = 0usize;
    while start < levels.len() {
        let mut end = start + 1;
        while end < levels.len() && levels[start].1 - levels[end].1 <= LN_ASSEMBLE_MAX {
            end += 1;
        }
        if end < levels.len() {
            let mut cut = end;
            let mut widest = levels[end - 1].1 - levels[end].1;
            for i in start + 1..end {
                let gap = levels[i - 1].1 - levels[i].1;
                if gap > widest {
                    widest = gap;
                    cut = i;
                }
            }
            end = cut;
        }
        bands.push(levels[start..end].iter().map(|e| e.0).collect());
        start = end;
    }
    bands
}

/// `A^n` for `n = 2^i` in block-scaled triangular form.
pub struct GradedPower {
    /// Unitary basis: `A^n = q . (scaled triangular) . q*`.
    q: ComplexMatrix,
    /// Upper triangular factor; block row `j` is implicitly scaled by
    /// `e^{gamma[j]}`.
    mat: ComplexMatrix,
    /// Per-level log scales; `-inf` marks a level whose power vanished.
    gamma: Vec<f64>,
    /// Block size per level, descending eigenvalue modulus.
    sizes: Vec<usize>,
    /// Row offset of each level block.
    offsets: Vec<usize>,
    exponent: u64,
}

/// Singular values (in log form) and orthonormal right-singular vectors of
/// the represented power, in the original coordinates.
pub struct GradedSpectrum {
    /// `ln s_j(A^n)` descending; `-inf` encodes an exact zero.
    pub log_values: Vec<f64>,
    /// Columns are the matching eigenvectors of `|A^n|`.
    pub vectors: ComplexMatrix,
    pub exponent: u64,
}

impl GradedPower {
    /// Builds the level-sorted Schur representation of `A` itself
    /// (`exponent = 1`). Levels are eigenvalue moduli clustered by
    /// single-linkage at `cluster_tol`.
    pub fn new(a: &ComplexMatrix, cluster_tol: f64) -> Result<Self> {
        let m = a.order();
        let sch = schur(a)?;
        let mut moduli: Vec<f64> = (0..m).map(|i| sch.t[(i, i)].norm()).collect();
        moduli.sort_by(f64::total_cmp);
        let ranges = cluster_line(&moduli, cluster_tol);

        // lower edge of each level, descending; reorder so that higher
        // levels occupy leading positions (diagonal values move bitwise, so
        // modulus thresholds split levels exactly)
        let mut edges: Vec<f64> = ranges.iter().rev().map(|&(s, _)| moduli[s]).collect();
        let sizes: Vec<usize> = ranges.iter().rev().map(|&(s, e)| e - s).collect();
        let mut cur = Schur {
            q: sch.q,
            t: sch.t,
        };
        for j in 0..edges.len().saturating_sub(1) {
            let thresh = edges[j] - 0.5 * cluster_tol;
            let os = reorder_schur(&cur, |z| z.norm() >= thresh);
            if os.selected != sizes[..=j].iter().sum::<usize>() {
                return Err(Error::Domain(
                    "modulus clustering produced an inconsistent level split",
                ));
            }
            cur = Schur { q: os.q, t: os.t };
        }
        edges.truncate(sizes.len());

        let mut offsets = Vec::with_capacity(sizes.len());
        let mut off = 0usize;
        for &r in &sizes {
            offsets.push(off);
            off += r;
        }

        let mut gamma = Vec::with_capacity(sizes.len());
        let mut mat = cur.t.clone();
        for (j, (&o, &r)) in offsets.iter().zip(&sizes).enumerate() {
            let nu = op_norm(&cur.t.block(o, o + r, o, o + r))?;
            if nu == 0.0 {
                gamma.push(f64::NEG_INFINITY);
                if j + 1 != sizes.len() {
                    // a zero block has modulus level 0, which sorts last
                    return Err(Error::Domain(
                        "vanishing level is not the smallest modulus level",
                    ));
                }
            } else {
                gamma.push(libm::log(nu));
                for row in o..o + r {
                    for col in 0..mat.cols() {
                        mat[(row, col)] = cur.t[(row, col)] / nu;
                    }
                }
            }
        }
        Ok(Self {
            q: cur.q,
            mat,
            gamma,
            sizes,
            offsets,
            exponent: 1,
        })
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> usize {
        self.mat.rows()
    }

    /// True when the represented power is exactly the zero matrix.
    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(|g| *g == f64::NEG_INFINITY)
    }

    fn block_row(&self, j: usize) -> ComplexMatrix {
        let o = self.offsets[j];
        self.mat.block(o, o + self.sizes[j], 0, self.order())
    }

    fn block(&self, j: usize, l: usize) -> ComplexMatrix {
        let (ro, rs) = (self.offsets[j], self.sizes[j]);
        let (co, cs) = (self.offsets[l], self.sizes[l]);
        self.mat.block(ro, ro + rs, co, co + cs)
    }

    /// Doubles the exponent. Block row `j` of the square is
    /// `sum_p e^{gamma_p - gamma_j} M_{jp} M_{pl}` rescaled by the new
    /// diagonal block norm; weights never exceed one and diagonal blocks
    /// square self-contained, so an exactly nilpotent bottom level dies
    /// exactly.
    pub fn square(&mut self) -> Result<()> {
        let k = self.sizes.len();
        let m = self.order();
        let mut new_mat = ComplexMatrix::zeros(m, m);
        let mut new_gamma = self.gamma.clone();
        for j in 0..k {
            if self.gamma[j] == f64::NEG_INFINITY {
                continue;
            }
            // raw blocks of row j at scale e^{2 gamma_j}
            let mut raw: Vec<ComplexMatrix> = Vec::with_capacity(k - j);
            for l in j..k {
                let mut acc = ComplexMatrix::zeros(self.sizes[j], self.sizes[l]);
                for p in j..=l {
                    if self.gamma[p] == f64::NEG_INFINITY {
                        continue;
                    }
                    let w = libm::exp(self.gamma[p] - self.gamma[j]);
                    if w == 0.0 {
                        continue;
                    }
                    acc = acc + &(&self.block(j, p) * &self.block(p, l)).scale(w);
                }
                raw.push(acc);
            }
            let nu = op_norm(&raw[0])?;
            if nu == 0.0 {
                new_gamma[j] = f64::NEG_INFINITY;
                continue;
            }
            new_gamma[j] = 2.0 * self.gamma[j] + libm::log(nu);
            for (l, blk) in (j..k).zip(&raw) {
                let (ro, co) = (self.offsets[j], self.offsets[l]);
                for r in 0..blk.rows() {
                    for c in 0..blk.cols() {
                        new_mat[(ro + r, co + c)] = blk[(r, c)] / nu;
                    }
                }
            }
        }
        self.mat = new_mat;
        self.gamma = new_gamma;
        self.exponent *= 2;
        Ok(())
    }

    fn live_span(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &g in &self.gamma {
            if g != f64::NEG_INFINITY {
                lo = lo.min(g);
                hi = hi.max(g);
            }
        }
        if hi == f64::NEG_INFINITY {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// Singular values and right-singular vectors of the represented power,
    /// still in the Schur coordinates (no `q` applied). Values are logs,
    /// descending. Live levels are processed band by band: the band's block
    /// rows are stacked at a common scale, deflated against everything found
    /// so far, and factored in one SVD of the adjoint (tall by band height).
    fn spectrum_local(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        let m = self.order();
        if self.live_span().is_none() {
            return Ok((vec![f64::NEG_INFINITY; m], ComplexMatrix::identity(m)));
        }
        let mut levels: Vec<(usize, f64)> = (0..self.sizes.len())
            .filter(|&j| self.gamma[j] != f64::NEG_INFINITY)
            .map(|j| (j, self.gamma[j]))
            .collect();
        levels.sort_by(|a, b| b.1.total_cmp(&a.1));

        let mut entries: Vec<(f64, CVector)> = Vec::with_capacity(m);
        // projector onto the orthocomplement of the bands handled so far
        let mut proj = ComplexMatrix::identity(m);
        for band in scale_bands(&levels) {
            let top = self.gamma[band[0]];
            let height: usize = band.iter().map(|&j| self.sizes[j]).sum();
            let mut b = ComplexMatrix::zeros(height, m);
            let mut r0 = 0;
            for &j in &band {
                let w = libm::exp(self.gamma[j] - top);
                let o = self.offsets[j];
                for r in 0..self.sizes[j] {
                    for col in 0..m {
                        b[(r0 + r, col)] = self.mat[(o + r, col)] * w;
                    }
                }
                r0 += self.sizes[j];
            }
            let bp = &b * &proj;
            // B P = V S U* when (B P)* = U S V*; the right-singular vectors
            // come back as the left output of svd((B P)*)
            let dec = svd(&bp.adjoint())?;
            for c in 0..height {
                let s = dec.s[c];
                let lv = if s == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    top + libm::log(s)
                };
                let col: CVector = (0..m).map(|r| dec.u[(r, c)]).collect();
                proj = proj - &outer(&col);
                entries.push((lv, col));
            }
        }
        // remaining directions span the exact kernel
        let found = entries.len();
        if found < m {
            let kernel = orthonormal_range(&proj, m - found);
            for col in kernel {
                entries.push((f64::NEG_INFINITY, col));
            }
        }
        entries.sort_by(|a, b| b.0.total_cmp(&a.0));
        let log_values = entries.iter().map(|e| e.0).collect();
        let mut vectors = ComplexMatrix::zeros(m, m);
        for (c, (_, col)) in entries.iter().enumerate() {
            for r in 0..m {
                vectors[(r, c)] = col[r];
            }
        }
        Ok((log_values, vectors))
    }

    /// Singular values of the power in log form, descending; `-inf` marks
    /// exact zeros.
    pub fn log_singular_values(&self) -> Result<Vec<f64>> {
        Ok(self.spectrum_local()?.0)
    }

    /// Full spectral data of `|A^n|` in the original coordinates.
    pub fn spectrum(&self) -> Result<GradedSpectrum> {
        let (log_values, local) = self.spectrum_local()?;
        Ok(GradedSpectrum {
            log_values,
            vectors: &self.q * &local,
            exponent: self.exponent,
        })
    }

    /// `ln ||A^n x||`, or `-inf` when the image vanishes exactly. Block
    /// contributions combine by log-sum-exp, so widely separated scales
    /// cannot overflow.
    pub fn log_vector_norm(&self, x: &[Complex64]) -> f64 {
        let xt = self.q.adjoint().mat_vec(x);
        let mut terms: Vec<f64> = Vec::with_capacity(self.sizes.len());
        for j in 0..self.sizes.len() {
            if self.gamma[j] == f64::NEG_INFINITY {
                continue;
            }
            let norm = vec_norm(&self.block_row(j).mat_vec(&xt));
            if norm > 0.0 {
                terms.push(self.gamma[j] + libm::log(norm));
            }
        }
        let Some(top) = terms.iter().copied().reduce(f64::max) else {
            return f64::NEG_INFINITY;
        };
        let sum: f64 = terms
            .iter()
            .map(|&t| libm::exp(2.0 * (t - top)))
            .sum();
        top + 0.5 * libm::log(sum)
    }
}

fn outer(col: &[Complex64]) -> ComplexMatrix {
    let m = col.len();
    ComplexMatrix::from_fn(m, m, |r, c| col[r] * col[c].conj())
}

/// Orthonormal basis of the range of a (near-)projector, by projecting
/// coordinate vectors and keeping the well-conditioned ones.
fn orthonormal_range(proj: &ComplexMatrix, count: usize) -> Vec<CVector> {
    let m = proj.rows();
    let mut basis: Vec<CVector> = Vec::with_capacity(count);
    for cand in 0..m {
        if basis.len() == count {
            break;
        }
        let e: CVector = (0..m)
            .map(|r| {
                if r == cand {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let mut w = proj.mat_vec(&e);
        for _ in 0..2 {
            for b in &basis {
                let c = vec_dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = vec_norm(&w);
        if norm > 0.5 {
            for wi in &mut w {
                *wi /= norm;
            }
            basis.push(w);
        }
    }
    basis
}
