use thiserror::Error;

use crate::Cplx;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("denominator vanishes at the expansion point {0}")]
    PoleAtExpansionPoint(Cplx),
    #[error("linear-fractional transform has an identically zero denominator")]
    DegenerateLft,
    #[error("matrix determinant is not constant (residual {0:e})")]
    NonConstantDeterminant(f64),
    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::MAX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("not a generalized Schur function: |s0| reaches {0} on the unit circle")]
    NotGeneralizedSchur(f64),
    #[error("pole {0} lies on the unit circle")]
    BoundaryPole(Cplx),
    #[error("Cayley transform has a pole at 1")]
    PoleAtOne,

    #[error("kernel diagonal singularity: 1 - z conj(w) vanishes")]
    DiagonalSingularity,
    #[error("point {0} is within the pole clearance of a pole")]
    PoleProximity(Cplx),
    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("pole clearance leaves no admissible sample points")]
    NoAnalyticPoints,

    #[error("invalid interpolation data: {0}")]
    InvalidData(String),
    #[error("the Pick-type matrix P is not Hermitian (residual {0:e})")]
    NonHermitianP(f64),
    #[error("the Pick-type matrix P is numerically singular")]
    SingularP,
    #[error("p(z1) vanishes numerically (|p(z1)| = {0:e})")]
    PVanishesAtZ1(f64),
    #[error("parameter is not admissible: |s1(z1) - tau0| = {0:e}")]
    InadmissibleParameter(f64),
    #[error("solution does not reproduce the prescribed expansion: {0}")]
    ExpansionMismatch(String),
    #[error("round trip through the parametrization failed (residual {0:e})")]
    RoundTripMismatch(f64),

    #[error("|s(z)| = {0} is not below 1")]
    ModulusAtLeastOne(f64),
    #[error("not a Schur function: {0}")]
    NotSchur(String),
    #[error("contact point must be unimodular and different from tau0")]
    InvalidContactPoint,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
