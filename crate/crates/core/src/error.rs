use thiserror::Error;
use urr_poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dimension of the unit ideal is undefined")]
    DimOfUnitIdeal,
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("variety is not smooth at the point (jacobian rank {rank}, expected {expected})")]
    NotSmoothAtPoint { rank: usize, expected: usize },
    #[error("coordinate {coord} is not regular at the point: {verdict}")]
    NotRegularAtPoint { coord: usize, verdict: String },
    #[error("no generic frame found after {tries} tries: {}", reasons.join("; "))]
    ExhaustedTries { tries: usize, reasons: Vec<String> },
    #[error("property check failed: {0}")]
    PropertyCheckFailed(String),
    #[error("lift limits exceeded; highest (degree, jet order) tried per coordinate: {reached:?}")]
    LiftLimitsExceeded { reached: Vec<(usize, (u32, u32))> },
    #[error("missing or invalid premise certificate: {0}")]
    PremiseCertMissing(String),
    #[error("division does not descend: {0}")]
    DescentFailed(String),
    #[error("composition undefined: {0}")]
    CompositionUndefined(String),
    #[error("unsupported bundle version `{0}`")]
    VersionMismatch(String),
    #[error("{context}:{line}:{col}: {msg}")]
    Parse { context: String, line: usize, col: usize, msg: String },
    #[error("malformed bundle: {0}")]
    Bundle(String),
}

impl Error {
    /// Process exit status for the command-line front end: 2 for
    /// precondition and input errors, 3 for exhausted limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Poly(PolyError::LimitExceeded(_))
            | Error::LimitExceeded(_)
            | Error::ExhaustedTries { .. }
            | Error::LiftLimitsExceeded { .. } => 3,
            Error::PropertyCheckFailed(_) | Error::DescentFailed(_) => 1,
            _ => 2,
        }
    }

    /// Stable variant name for structured error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Poly(PolyError::Syntax { .. } | PolyError::UnknownVariable { .. }) | Error::Parse { .. } => {
                "SyntaxError"
            }
            Error::Poly(PolyError::LimitExceeded(_)) | Error::LimitExceeded(_) => "LimitExceeded",
            Error::Poly(_) => "PolynomialError",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::DimOfUnitIdeal => "DimOfUnitIdeal",
            Error::PointNotOnVariety => "PointNotOnVariety",
            Error::NotSmoothAtPoint { .. } => "NotSmoothAtPoint",
            Error::NotRegularAtPoint { .. } => "NotRegularAtPoint",
            Error::ExhaustedTries { .. } => "ExhaustedTries",
            Error::PropertyCheckFailed(_) => "PropertyCheckFailed",
            Error::LiftLimitsExceeded { .. } => "LiftLimitsExceeded",
            Error::PremiseCertMissing(_) => "PremiseCertMissing",
            Error::DescentFailed(_) => "DescentFailed",
            Error::CompositionUndefined(_) => "CompositionUndefined",
            Error::VersionMismatch(_) => "VersionMismatch",
            Error::Bundle(_) => "MalformedBundle",
        }
    }

    pub fn is_limit(&self) -> bool {
        self.exit_code() == 3
    }
}

pub type Result<T> = std::result::Result<T, Error>;
