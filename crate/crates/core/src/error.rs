use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient field mismatch")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor in number field: modulus is not irreducible")]
    ZeroDivisor,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("series is not invertible: constant term is zero")]
    NonUnitSeries,
    #[error("polynomial in Chern roots is not symmetric")]
    NotSymmetric,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("virtual structure constants missing for degree {0}")]
    MissingDegree(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent kernel-dimension profile: {0}")]
    InconsistentProfile(String),
    #[error("hypersurface does not contain the line")]
    LineNotOnHypersurface,
    #[error("line parametrization is rank deficient")]
    RankDeficient,
    #[error("pencil has rank one")]
    RankOnePencil,
    #[error("zero pencil")]
    ZeroPencil,
    #[error("zero discriminant triple")]
    ZeroTriple,
    #[error("ramification points coincide")]
    CoincidentPoints,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
