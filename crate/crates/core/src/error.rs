use core::fmt;

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical kernels.
///
/// Dimension mismatches are programming errors and panic; everything that
/// depends on the data (convergence, conditioning, domain restrictions) is
/// reported through this enum instead of being silently patched over.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A matrix or vector entry was NaN or infinite.
    NonFinite,
    /// Input failed the Hermitian deviation check `||M - M*|| <= tol * ||M||`.
    NotHermitian { deviation: f64, tol: f64 },
    /// A Hermitian matrix had an eigenvalue below `-tol * ||M||`.
    NotPsd { min_eig: f64, tol: f64 },
    /// An iteration hit its sweep cap before meeting its residual target.
    ConvergenceFailure { op: &'static str, iterations: usize },
    /// A Sylvester divisor `t11 - t22` fell below the separation guard.
    SingularSeparation {
        t11: Complex64,
        t22: Complex64,
        sep_tol: f64,
    },
    /// A spectral projector could not be built because the cluster is too
    /// close to the rest of the spectrum; retry with a larger `cluster_tol`.
    IllConditionedCluster {
        center: Complex64,
        separation: f64,
        sep_tol: f64,
    },
    /// A linear solve met an exactly singular pivot.
    SingularSystem { op: &'static str },
    /// An intermediate value left the representable range; rescale the input.
    RangeOverflow { magnitude: f64, limit: f64 },
    /// An argument was outside the documented domain.
    Domain(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "non-finite entry in input"),
            Error::NotHermitian { deviation, tol } => write!(
                f,
                "matrix is not Hermitian: relative deviation {deviation:e} exceeds {tol:e}"
            ),
            Error::NotPsd { min_eig, tol } => write!(
                f,
                "matrix is not positive semidefinite: eigenvalue {min_eig:e} below -{tol:e} * scale"
            ),
            Error::ConvergenceFailure { op, iterations } => {
                write!(f, "{op} did not converge within {iterations} iterations")
            }
            Error::SingularSeparation { t11, t22, sep_tol } => write!(
                f,
                "sylvester divisor {t11} - {t22} is below the separation guard {sep_tol:e}"
            ),
            Error::IllConditionedCluster {
                center,
                separation,
                sep_tol,
            } => write!(
                f,
                "cluster at {center} is separated from the rest of the spectrum by only \
                 {separation:e} (guard {sep_tol:e}); retry with a larger cluster tolerance"
            ),
            Error::SingularSystem { op } => write!(f, "{op}: singular linear system"),
            Error::RangeOverflow { magnitude, limit } => write!(
                f,
                "entry magnitude {magnitude:e} exceeds the overflow limit {limit:e}; \
                 prescale the input"
            ),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}
