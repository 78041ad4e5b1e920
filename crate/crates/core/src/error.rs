use thiserror::Error;

use crate::yalgebra::ExponentVector;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotCartan(String),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("matrix is decomposable; opt in to per-block processing")]
    Decomposable,
    #[error("symmetrizer override does not symmetrize the matrix: {0}")]
    OverrideInconsistent(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("B(z) is not symmetric; the standard algebra is not defined for this matrix")]
    NotBzSymmetric,
    #[error("B is not symmetric; the primed algebra is not defined for this matrix")]
    NotBSymmetric,
    #[error("operation unsupported in this mode: {0}")]
    ModeUnsupported(String),
    #[error("shift is undefined on a periodic index set")]
    ShiftInPeriodicContext,
    #[error("root-of-unity order s={s} must exceed 2*rvee={bound}")]
    SmallS { s: u32, bound: i64 },
    #[error("monomial is not dominant: {0}")]
    NotDominant(String),
    #[error("monomial is not dominant in direction {0}")]
    NotIDominant(usize),
    #[error("element is not in the kernel; witness {witness}")]
    NotInKernel { witness: ExponentVector },
    #[error("screening image is computed only at s=0; periodic kernels use Ebar decompositions")]
    PeriodicTorsion,
    #[error("some C_ij*C_ji exceeds 3; pass the override to run anyway")]
    CcExceeds3,
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("inconsistent algorithm state at {witness}")]
    Inconsistent { witness: ExponentVector },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable identifier for machine consumers.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotCartan(_) => "not_cartan",
            Error::NotSymmetrizable => "not_symmetrizable",
            Error::Decomposable => "decomposable",
            Error::OverrideInconsistent(_) => "override_inconsistent",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::NotBzSymmetric => "not_bz_symmetric",
            Error::NotBSymmetric => "not_b_symmetric",
            Error::ModeUnsupported(_) => "mode_unsupported",
            Error::ShiftInPeriodicContext => "shift_in_periodic_context",
            Error::SmallS { .. } => "small_s",
            Error::NotDominant(_) => "not_dominant",
            Error::NotIDominant(_) => "not_i_dominant",
            Error::NotInKernel { .. } => "not_in_kernel",
            Error::PeriodicTorsion => "periodic_torsion",
            Error::CcExceeds3 => "cc_exceeds_3",
            Error::TruncationInsufficient(_) => "truncation_insufficient",
            Error::Inconsistent { .. } => "inconsistent",
            Error::Parse(_) => "parse",
        }
    }
}
