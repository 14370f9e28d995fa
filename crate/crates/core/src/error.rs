//! Error types, one enum per subsystem. The CLI maps these onto its exit
//! codes, so variants distinguish invalid input, infeasible problem sizes and
//! documented unsupported cases.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial must be monic of degree >= {min_degree}")]
    NotMonicOfDegree { min_degree: usize },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("matrix dimension mismatch")]
    DimensionMismatch,
    #[error("singular basis matrix")]
    SingularBasis,
    #[error("invalid decimal string: {0}")]
    BadDecimal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("all coefficients are zero")]
    AllZero,
    #[error("genus must be at least 1")]
    BadGenus,
    #[error("expected {expected} coefficients for genus {n}, got {got}")]
    WrongCoefficientCount { n: usize, expected: usize, got: usize },
    #[error("height bound must be at least 1")]
    BadHeightBound,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("operator matrix has wrong size for genus {n}")]
    WrongSize { n: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("anti-trace is nonzero")]
    NonzeroAntiTrace,
    #[error("polynomial is inseparable (zero discriminant)")]
    Inseparable,
    #[error("polynomial must be monic with zero trace term")]
    NotTraceZeroMonic,
    #[error("nilpotent scale must be nonzero")]
    ZeroScale,
    #[error("weight coordinate ({0}, {1}) is excluded")]
    ExcludedCoordinate(usize, usize),
    #[error("sign pattern must have an odd length and exactly m minus signs")]
    BadSignPattern,
    #[error("sign certification failed at maximum precision")]
    CertificationFailure,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteError {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("polynomial is inseparable mod p")]
    Inseparable,
    #[error("coordinate box of size {0} exceeds the feasibility bound")]
    Infeasible(u128),
    #[error("generator closure has {got} elements, expected {expected}")]
    ClosureMismatch { got: u64, expected: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("p must be prime, got {0}")]
    NotPrime(u64),
    #[error("p = 2 is not supported by this operation")]
    EvenPrime,
    #[error("insufficient p-adic precision: need at least {needed}, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("unsupported deep ramification (valuation budget exhausted)")]
    UnsupportedRamification,
    #[error("ramified input at p = 2 is not supported here")]
    RamifiedAtTwo,
    #[error("polynomial is inseparable over Q")]
    Inseparable,
    #[error("Gram determinant is not a unit of the expected square class")]
    WrongDeterminantClass,
    #[error("no unit coefficient within the series truncation; bound undetermined")]
    NoUnitCoefficient,
    #[error("series truncation too short to certify the bound")]
    TruncationTooShort,
    #[error("curve fails the mod-3 filter; Chabauty bound inapplicable")]
    FilterNotPassed,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescentError {
    #[error("x-coordinates of divisor points must be distinct")]
    RepeatedX,
    #[error("point ({x}, {y}) does not lie on the curve")]
    PointOffCurve { x: String, y: String },
    #[error("Weierstrass points (b = 0) are not supported by the coboundary formula")]
    WeierstrassPoint,
    #[error("divisor has more than n points")]
    TooManyPoints,
    #[error("Mumford R(x) is not integral; input unsupported")]
    NonIntegralR,
    #[error("pair fails the containment I^2 in alpha*R")]
    ContainmentFailed,
    #[error("pair fails the norm condition N(I)^2 = N(alpha)")]
    NormConditionFailed,
    #[error("ideal census index bound {0} too small")]
    IndexBoundTooSmall(usize),
    #[error("ideal census enumeration of size {0} is infeasible")]
    CensusInfeasible(u128),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
