use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants fall into two groups that the command-line front end maps to
/// different exit codes: violated preconditions (an input that does not
/// satisfy the invariant an operation needs) and inconclusive numerics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(&'static str, &'static str),

    #[error("Laurent coefficients are not conjugate-symmetric at index {0}")]
    NotRealRepresentable(usize),

    #[error("{0} has real zeros (zero-free precondition violated)")]
    NotZeroFree(&'static str),

    #[error("{0} is zero or a unit")]
    Trivial(&'static str),

    #[error("a root lies within {band:e} of the unit circle and could not be paired")]
    BoundaryUndecidable { band: f64 },

    #[error("factorization residual {residual:e} exceeds tolerance {tol:e}")]
    FactorizationFailed { residual: f64, tol: f64 },

    #[error("root finder did not converge")]
    RootsDidNotConverge,

    #[error("CondInv violated: P*P' + P*B + A != 0")]
    NotInvariant,

    #[error("{0} and {1} share an irreducible factor; reduce by the common factor first")]
    NotCoprime(&'static str, &'static str),

    #[error("invariant lines must have degree >= 1 (constant P is the separated-variable case)")]
    ConstantLine,

    #[error("A = 0: separated-variable case, bound not applicable")]
    DegenerateA,

    #[error("the two invariant lines coincide")]
    SameCurve,

    #[error("parameter invariant violated: {0}")]
    InvalidParams(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("not a first integral: {0}")]
    NotFirstIntegral(String),

    #[error("step size underflow at t = {t} (stiff or singular)")]
    StepUnderflow { t: f64 },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that signal a numeric result could not be decided,
    /// as opposed to an input that breaks a precondition.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::Inconclusive(_)
                | Error::BoundaryUndecidable { .. }
                | Error::RootsDidNotConverge
                | Error::FactorizationFailed { .. }
                | Error::StepUnderflow { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
