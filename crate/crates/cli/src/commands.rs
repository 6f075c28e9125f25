//! Subcommand implementations.
//!
//! Each command loads its inputs, drives the core library, and returns a
//! filled report plus the process exit code. Per-vector problems in `growth`
//! and `exp` become error entries inside the report rather than aborting the
//! run; whole-input problems map to the exit-code contract in `main`.

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use yamamoto_core::expflow;
use yamamoto_core::jordan;
use yamamoto_core::matcore::{op_norm, vec_norm, ComplexMatrix, PsdMatrix};
use yamamoto_core::oracle;
use yamamoto_core::tol::default_cluster_tol;
use yamamoto_core::yamamoto::{self, OrbitStep};

use crate::format::{self, MatrixFile};
use crate::report::{
    AnalysisReport, CheckEntry, ClusterEntry, ExpSection, FlagSummary, GrowthEntry, JcResiduals,
    SingularValueSection, TrajectoryEntry,
};
use crate::{CliError, Globals};

fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn psd_to_file(p: &PsdMatrix) -> MatrixFile {
    format::matrix_to_file(p.matrix())
}

fn vector_pairs(x: &[Complex64]) -> Vec<[f64; 2]> {
    x.iter().map(|z| [z.re, z.im]).collect()
}

/// Reads the matrix and pins the run's clustering tolerance.
fn load_input(
    path: &std::path::Path,
    g: &Globals,
) -> Result<(ComplexMatrix, String, f64), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let digest = digest_bytes(&bytes);
    let a = format::load_matrix(path).map_err(|e| CliError::Input(format!("{e}")))?;
    let cluster_tol = match g.tol_cluster {
        Some(t) => {
            if !(t > 0.0) || !t.is_finite() {
                return Err(CliError::Usage("--tol-cluster must be positive".into()));
            }
            t
        }
        None => default_cluster_tol(op_norm(&a)?),
    };
    Ok((a, digest, cluster_tol))
}

fn write_series_csv(
    path: &std::path::Path,
    series: &[Vec<(u64, f64)>],
) -> Result<(), CliError> {
    let mut out = String::from("n");
    for j in 0..series.len() {
        out.push_str(&format!(",s{}", j + 1));
    }
    out.push('\n');
    for t in 0..series.first().map_or(0, Vec::len) {
        out.push_str(&format!("{}", series[0][t].0));
        for col in series {
            out.push_str(&format!(",{:.16e}", col[t].1));
        }
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn jc_residuals(a: &ComplexMatrix, jc: &jordan::JCDecomp) -> Result<JcResiduals, CliError> {
    let m = a.rows();
    let scale = a.fro_norm().max(1.0);
    let comm = (&(&jc.d * &jc.n) - &(&jc.n * &jc.d)).fro_norm() / (scale * scale);
    let mut power = jc.n.clone();
    for _ in 1..m {
        power = &power * &jc.n;
    }
    let nilpotent_power = power.fro_norm() / scale.powi(m as i32);
    let mut sum = ComplexMatrix::zeros(m, m);
    for p in &jc.projectors {
        sum = &sum + p;
    }
    let partition = (&sum - &ComplexMatrix::identity(m)).fro_norm();
    Ok(JcResiduals {
        commutator: comm,
        nilpotent_power,
        projector_partition: partition,
        nilpotent_part: jordan::diagonalizability_residual(jc)?,
    })
}

fn modulus_flag_summary(flag: &yamamoto::ModulusFlag) -> FlagSummary {
    FlagSummary {
        levels: flag.moduli.clone(),
        multiplicities: flag.multiplicities.clone(),
        projections: flag.projections.iter().map(psd_to_file).collect(),
    }
}

fn exp_section(a: &ComplexMatrix, cluster_tol: f64, g: &Globals) -> Result<ExpSection, CliError> {
    let flag = expflow::realpart_flag(a, cluster_tol)?;
    let closed = expflow::exp_limit_matrix(a, cluster_tol)?;
    let iterative = expflow::exp_iterate_limit(a, g.k)?;
    let trajectories = match &g.vectors {
        None => None,
        Some(path) => {
            let vectors = format::load_vectors(path)
                .map_err(|e| CliError::Input(format!("{e}")))?;
            if vectors.is_empty() {
                return Err(CliError::Usage("the vectors file lists no vectors".into()));
            }
            let mut entries = Vec::with_capacity(vectors.len());
            for x in &vectors {
                entries.push(trajectory_entry(a, x, cluster_tol, g.mem_tol));
            }
            Some(entries)
        }
    };
    Ok(ExpSection {
        flag: FlagSummary {
            levels: flag.realparts.clone(),
            multiplicities: flag.multiplicities.clone(),
            projections: flag.projections.iter().map(psd_to_file).collect(),
        },
        limit_closed: psd_to_file(&closed),
        limit_iterative: psd_to_file(&iterative),
        trajectories,
    })
}

fn trajectory_entry(
    a: &ComplexMatrix,
    x: &[Complex64],
    cluster_tol: f64,
    mem_tol: f64,
) -> TrajectoryEntry {
    let mut entry = TrajectoryEntry {
        vector: vector_pairs(x),
        error: None,
        shell_index: None,
        growth_base: None,
        bracket: None,
        samples: None,
    };
    if x.len() != a.rows() {
        entry.error = Some(format!(
            "vector has {} entries, matrix is {}x{}",
            x.len(),
            a.rows(),
            a.rows()
        ));
        return entry;
    }
    match expflow::trajectory_growth(a, x, cluster_tol, mem_tol) {
        Ok(t) => {
            entry.shell_index = Some(t.shell_index);
            entry.growth_base = Some(t.growth_base);
            entry.bracket = Some([t.bound_witness.rho, t.bound_witness.omega]);
            entry.samples = Some(
                t.bound_witness
                    .samples
                    .iter()
                    .map(|&(time, value)| [time, value])
                    .collect(),
            );
        }
        Err(e) => entry.error = Some(format!("{e}")),
    }
    entry
}

pub fn cmd_analyze(
    path: &std::path::Path,
    g: &Globals,
) -> Result<(AnalysisReport, i32), CliError> {
    let (a, digest, cluster_tol) = load_input(path, g)?;
    let mut report = AnalysisReport::new("analyze", digest, g.k, cluster_tol);
    report.input = Some(format::matrix_to_file(&a));

    let eigs = yamamoto_core::matcore::eigenvalues(&a)?;
    report.eigenvalues = Some(eigs.iter().map(|z| [z.re, z.im]).collect());
    report.clusters = Some(
        jordan::cluster_eigenvalues(&eigs, cluster_tol)
            .iter()
            .map(|c| ClusterEntry {
                center: [c.center.re, c.center.im],
                multiplicity: c.multiplicity(),
                members: c.members.iter().map(|(z, _)| [z.re, z.im]).collect(),
            })
            .collect(),
    );
    let jc = jordan::jordan_chevalley(&a, cluster_tol)?;
    report.jordan_residuals = Some(jc_residuals(&a, &jc)?);

    let limit = yamamoto::limit_matrix(&a, cluster_tol)?;
    report.flag = Some(modulus_flag_summary(&limit.flag));
    report.h_closed = Some(psd_to_file(&limit.h));
    report.h_iterative = Some(psd_to_file(&yamamoto::iterate_limit(&a, g.k)?));

    let sv = yamamoto::singular_value_limits(&a, cluster_tol, g.k)?;
    if let Some(csv) = &g.series {
        write_series_csv(csv, &sv.series)?;
    }
    report.singular_values = Some(SingularValueSection {
        limits: sv.limits,
        finals: sv
            .series
            .iter()
            .map(|col| col.last().map_or(0.0, |&(_, v)| v))
            .collect(),
        series: sv.series,
    });

    if g.exp {
        report.exp = Some(exp_section(&a, cluster_tol, g)?);
    }
    Ok((report, 0))
}

pub fn cmd_growth(
    path: &std::path::Path,
    g: &Globals,
) -> Result<(AnalysisReport, i32), CliError> {
    let vectors_path = g
        .vectors
        .as_ref()
        .ok_or_else(|| CliError::Usage("growth requires --vectors <file>".into()))?;
    let (a, digest, cluster_tol) = load_input(path, g)?;
    let vectors =
        format::load_vectors(vectors_path).map_err(|e| CliError::Input(format!("{e}")))?;
    if vectors.is_empty() {
        return Err(CliError::Usage("the vectors file lists no vectors".into()));
    }

    let flag = yamamoto::modulus_flag(&a, cluster_tol)?;
    let mut report = AnalysisReport::new("growth", digest, g.k, cluster_tol);
    report.input = Some(format::matrix_to_file(&a));
    report.flag = Some(modulus_flag_summary(&flag));

    let mut entries = Vec::with_capacity(vectors.len());
    for x in &vectors {
        entries.push(growth_entry(&a, &flag, x, g));
    }
    report.growth = Some(entries);
    Ok((report, 0))
}

fn growth_entry(
    a: &ComplexMatrix,
    flag: &yamamoto::ModulusFlag,
    x: &[Complex64],
    g: &Globals,
) -> GrowthEntry {
    let mut entry = GrowthEntry {
        vector: vector_pairs(x),
        error: None,
        shell_index: None,
        exponent: None,
        iterative_value: None,
        shell_trace: None,
        invariant: None,
    };
    if x.len() != a.rows() {
        entry.error = Some(format!(
            "vector has {} entries, matrix is {}x{}",
            x.len(),
            a.rows(),
            a.rows()
        ));
        return entry;
    }
    if vec_norm(x) == 0.0 {
        entry.error = Some("the zero vector has no growth exponent".into());
        return entry;
    }
    let exact = match yamamoto::growth_exponent_exact(flag, x, g.mem_tol) {
        Ok(r) => r,
        Err(e) => {
            entry.error = Some(format!("{e}"));
            return entry;
        }
    };
    entry.shell_index = Some(exact.shell_index);
    entry.exponent = Some(exact.exponent);
    match yamamoto::growth_exponent_iterative(a, x, g.k) {
        Ok(series) => entry.iterative_value = Some(series.value),
        Err(e) => entry.error = Some(format!("{e}")),
    }
    match yamamoto::shell_invariance_check(a, flag, x, 5) {
        Ok(inv) => {
            entry.shell_trace = Some(
                inv.trace
                    .iter()
                    .map(|s| match s {
                        OrbitStep::Shell(j) => *j as i64,
                        OrbitStep::Degenerate => -1,
                    })
                    .collect(),
            );
            entry.invariant = Some(inv.invariant);
        }
        Err(e) => entry.error = Some(format!("{e}")),
    }
    entry
}

pub fn cmd_exp(path: &std::path::Path, g: &Globals) -> Result<(AnalysisReport, i32), CliError> {
    let (a, digest, cluster_tol) = load_input(path, g)?;
    let mut report = AnalysisReport::new("exp", digest, g.k, cluster_tol);
    report.input = Some(format::matrix_to_file(&a));
    report.exp = Some(exp_section(&a, cluster_tol, g)?);
    Ok((report, 0))
}

pub struct VerifyOpts {
    pub matrix: Option<std::path::PathBuf>,
    pub dim: usize,
    pub instances: usize,
    pub p: Option<f64>,
    pub inject_violation: bool,
}

pub fn cmd_verify(opts: &VerifyOpts, g: &Globals) -> Result<(AnalysisReport, i32), CliError> {
    if let Some(p) = opts.p {
        if !(p > 0.0) || !p.is_finite() {
            return Err(CliError::Usage(format!(
                "--p must be a positive trace exponent, got {p}"
            )));
        }
    }
    if opts.dim < 2 {
        return Err(CliError::Usage("--dim must be at least 2".into()));
    }
    if opts.instances == 0 {
        return Err(CliError::Usage("--instances must be at least 1".into()));
    }

    let p_eff = opts.p.unwrap_or(2.0);
    let mut checks: Vec<CheckEntry> = Vec::new();
    let mut input_echo = None;
    let digest;
    let cluster_tol = g.tol_cluster.unwrap_or(0.0);

    if let Some(path) = &opts.matrix {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        digest = digest_bytes(&bytes);
        let a = format::load_matrix(path).map_err(|e| CliError::Input(format!("{e}")))?;
        input_echo = Some(format::matrix_to_file(&a));
        let mut e1 = vec![Complex64::new(0.0, 0.0); a.rows()];
        e1[0] = Complex64::new(1.0, 0.0);
        let fixed = [
            oracle::check_eig_trace_dominance(&a, p_eff)?,
            oracle::check_power_trace_monotone(&a, p_eff, 8)?,
            oracle::check_jensen_vector(&a, &e1, 0.5, 4)?,
        ];
        checks.extend(fixed.iter().map(check_entry));
    } else {
        let params = format!(
            "verify seed={} dims=2..={} instances={}",
            g.seed, opts.dim, opts.instances
        );
        digest = digest_bytes(params.as_bytes());
    }

    let suite = oracle::run_check_suite(g.seed, 2..=opts.dim, opts.instances)?;
    checks.extend(suite.iter().map(check_entry));
    if opts.inject_violation {
        checks.push(CheckEntry {
            name: "injected-violation".into(),
            lhs: 1.0,
            rhs: 0.0,
            slack: -1.0,
            passed: false,
            context: "synthetic failure requested on the command line".into(),
        });
    }

    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "check failed: {}",
            crate::report::to_json(c).unwrap_or_else(|_| c.name.clone())
        );
    }

    let mut report = AnalysisReport::new("verify", digest, g.k, cluster_tol);
    report.input = input_echo;
    report.checks = Some(checks);
    report.failed_checks = Some(failed);
    Ok((report, if failed > 0 { 3 } else { 0 }))
}

fn check_entry(c: &oracle::CheckResult) -> CheckEntry {
    CheckEntry {
        name: c.name.to_string(),
        lhs: c.lhs,
        rhs: c.rhs,
        slack: c.slack,
        passed: c.passed,
        context: c.context.clone(),
    }
}
