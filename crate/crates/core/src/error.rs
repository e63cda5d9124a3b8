use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("minimal polynomial is reducible; nontrivial factor {factor}")]
    ReducibleMinpoly { factor: String },

    #[error("unsupported field tower: {0}")]
    UnsupportedTower(String),

    #[error("Groebner basis computation exceeded its budget of {budget} reduction steps")]
    BudgetExceeded { budget: u64 },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("polynomial is constant: {0}")]
    ConstantPolynomial(String),

    #[error("singular linear change of coordinates")]
    SingularMatrix,

    #[error("point does not lie on the curve")]
    NotOnCurve,

    #[error("point is singular on the curve")]
    SingularPoint,

    #[error("curve `{name}` is not smooth")]
    NotSmooth { name: String },

    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooSmall { found: usize, required: usize },

    #[error("curves share a common component{0}")]
    CommonComponent(String),

    #[error("configuration matches no supported witness construction: {0}")]
    CaseUnsupported(String),

    #[error("truncation hides the answer: {0}")]
    UncertifiedRegion(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Name of the subsystem that raises this kind of error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::ArityMismatch { .. }
            | Error::ReducibleMinpoly { .. }
            | Error::NotHomogeneous(_)
            | Error::ConstantPolynomial(_)
            | Error::SingularMatrix => "poly_core",
            Error::BudgetExceeded { .. } => "elimination",
            Error::NotSmooth { .. } => "position",
            Error::UnsupportedTower(_)
            | Error::NotOnCurve
            | Error::SingularPoint
            | Error::DegreeTooSmall { .. }
            | Error::CommonComponent(_) => "plane_geometry",
            Error::CaseUnsupported(_) => "witness",
            Error::UncertifiedRegion(_) => "series",
            Error::InvalidInput(_) => "input",
        }
    }
}
