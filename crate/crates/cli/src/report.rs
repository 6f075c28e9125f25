//! Report serialization.
//!
//! One JSON document per run, on stdout. Floats are written as scientific
//! decimals with 17 significant digits, which round-trips every finite
//! double bit-exactly, so reports are byte-stable across runs and emitted
//! matrices can be fed back in without loss.

use serde::Serialize;

use crate::format::MatrixFile;

/// Writes every float as `{:.16e}`: 17 significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: std::io::Write + ?Sized,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any report piece with the fixed float format.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serializer emits UTF-8"))
}

#[derive(Serialize)]
pub struct ClusterEntry {
    pub center: [f64; 2],
    pub multiplicity: usize,
    pub members: Vec<[f64; 2]>,
}

#[derive(Serialize)]
pub struct JcResiduals {
    /// ||DN - ND|| relative to ||A||^2.
    pub commutator: f64,
    /// ||N^m|| relative to ||A||^m.
    pub nilpotent_power: f64,
    /// ||sum of projectors - I||.
    pub projector_partition: f64,
    /// ||N|| relative to ||A||; zero iff A is diagonalizable at this tolerance.
    pub nilpotent_part: f64,
}

#[derive(Serialize)]
pub struct FlagSummary {
    pub levels: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub projections: Vec<MatrixFile>,
}

#[derive(Serialize)]
pub struct SingularValueSection {
    /// Predicted limits of s_j(A^n)^{1/n}, descending.
    pub limits: Vec<f64>,
    /// Final sampled values at the largest n of the run.
    pub finals: Vec<f64>,
    /// Per-j convergence series as (n, value) pairs.
    pub series: Vec<Vec<(u64, f64)>>,
}

#[derive(Serialize)]
pub struct GrowthEntry {
    pub vector: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shell_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterative_value: Option<f64>,
    /// Shell index per orbit step; -1 marks a degenerate (zero) iterate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shell_trace: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<bool>,
}

#[derive(Serialize)]
pub struct TrajectoryEntry {
    pub vector: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shell_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth_base: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
pub struct ExpSection {
    pub flag: FlagSummary,
    pub limit_closed: MatrixFile,
    pub limit_iterative: MatrixFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectories: Option<Vec<TrajectoryEntry>>,
}

#[derive(Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub passed: bool,
    pub context: String,
}

/// The one report shape every subcommand fills a subset of.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub command: &'static str,
    /// SHA-256 of the raw input file, or of the suite parameters for
    /// standalone verify runs.
    pub input_digest: String,
    /// The parsed input matrix, echoed so reports are self-contained and
    /// the load/save cycle can be checked end to end.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<MatrixFile>,
    pub k: u32,
    pub cluster_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clusters: Option<Vec<ClusterEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan_residuals: Option<JcResiduals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<FlagSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_closed: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_iterative: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_values: Option<SingularValueSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<Vec<GrowthEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exp: Option<ExpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_checks: Option<usize>,
}

impl AnalysisReport {
    pub fn new(command: &'static str, input_digest: String, k: u32, cluster_tol: f64) -> Self {
        AnalysisReport {
            command,
            input_digest,
            input: None,
            k,
            cluster_tol,
            eigenvalues: None,
            clusters: None,
            jordan_residuals: None,
            flag: None,
            h_closed: None,
            h_iterative: None,
            singular_values: None,
            growth: None,
            exp: None,
            checks: None,
            failed_checks: None,
        }
    }
}
