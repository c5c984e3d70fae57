use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("invalid field spec `{0}` (expected `q`, `rational` or `f<p>`)")]
    InvalidFieldSpec(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("generator `{name}` of degree {degree} cannot be {kind} in characteristic {characteristic}")]
    ParityViolation {
        name: String,
        degree: i64,
        kind: &'static str,
        characteristic: u64,
    },
    #[error("generator name `{0}` is already declared")]
    DuplicateName(String),
    #[error("Laurent generator `{name}` must have degree 0, got {degree}")]
    LaurentNonzeroDegree { name: String, degree: i64 },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("basis is not degreewise finite: {0}")]
    InfiniteBasis(String),

    #[error("image of `{0}` is not homogeneous")]
    InhomogeneousImage(String),
    #[error(
        "image of `{generator}` has bidegree ({degree}, {weight}), expected ({expected_degree}, {expected_weight})"
    )]
    WrongBidegree {
        generator: String,
        degree: i64,
        weight: i64,
        expected_degree: i64,
        expected_weight: i64,
    },
    #[error("d(d({0})) is nonzero")]
    NotSquareZero(String),
    #[error("internal degree {requested} needs the page to be complete through {needed}, but it is complete only through {available}")]
    CutoffTooTight {
        requested: i64,
        needed: i64,
        available: i64,
    },
    #[error("inclusion does not commute with the differentials at {0}")]
    NotAChainMap(String),

    #[error("the counting formula only applies to even n, got n = {0}")]
    OddN(u64),
    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, stable for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CompositeCharacteristic(_) => "CompositeCharacteristic",
            Error::InvalidFieldSpec(_) => "InvalidFieldSpec",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::DuplicateName(_) => "DuplicateName",
            Error::LaurentNonzeroDegree { .. } => "LaurentNonzeroDegree",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::InfiniteBasis(_) => "InfiniteBasis",
            Error::InhomogeneousImage(_) => "InhomogeneousImage",
            Error::WrongBidegree { .. } => "WrongBidegree",
            Error::NotSquareZero(_) => "NotSquareZero",
            Error::CutoffTooTight { .. } => "CutoffTooTight",
            Error::NotAChainMap(_) => "NotAChainMap",
            Error::OddN(_) => "OddN",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
