use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is not on the boundary: |rho(zeta)| = {residual:e} exceeds tolerance {tol:e}")]
    NotOnBoundary { residual: f64, tol: f64 },

    #[error("defining function has (nearly) vanishing gradient: |grad rho| = {norm:e}")]
    SingularPoint { norm: f64 },

    #[error("defining function is not real-valued: term {term} has no Hermitian partner")]
    NotHermitian { term: String },

    #[error(
        "truncation {requested} is too small; at least {required} is needed to witness every term"
    )]
    TruncationTooSmall { requested: usize, required: usize },

    #[error("contact order unbounded: every jet coefficient vanishes up to degree {truncation}")]
    TypeUnboundedAtSearchDepth { truncation: usize },

    #[error("invalid disc: {0}")]
    InvalidDisc(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("only {found} samples in the tail window, need at least {needed}")]
    TooFewSamples { found: usize, needed: usize },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("curve point at t = {t} is not inside the domain")]
    PointLeftDomain { t: f64 },

    #[error("degenerate slice: |Gamma - gamma| = {tangential:e}")]
    DegenerateSlice { tangential: f64 },

    #[error("curve `{name}` cannot be used for the one-variable check: {reason}")]
    InapplicableCurve { name: String, reason: String },

    #[error("bad scenario: {0}")]
    BadScenario(String),

    #[error("line {line}: field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
