//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(String),
    #[error("pochhammer factor ({0})_n vanishes at or before n={1}")]
    PochhammerSingularity(String, u32),
    #[error("power base must be positive, got {0}")]
    NonPositiveBase(String),
    #[error("jet division by a jet with zero constant term")]
    DivisionByZeroConstantTerm,
    #[error("trig-rational model denominator vanishes at x={0}")]
    PoleAtX(String),
    #[error("trig-rational model denominator vanishes at the expansion center {0}")]
    PoleAtCenter(String),
    #[error("multiplier denominator vanishes at (n,k)=({0},{1})")]
    PoleAtPoint(u32, u32),
    #[error("pair has no companion multiplier; only numeric checks apply")]
    MissingCompanion,
    #[error("ratio test failed for 64 consecutive terms (base {0})")]
    NoConvergence(String),
    #[error("acceleration schemes disagree: |euler - cvz| = {0} exceeds {1}")]
    MethodDisagreement(String, String),
    #[error("summand behaves like n^sigma with sigma near the integer {0}; the regularized tail has a pole")]
    RegularizationPole(i64),
    #[error("Hurwitz zeta pole: s too close to 1")]
    HurwitzZetaPole,
    #[error("catalog schema error: {0}")]
    SchemaError(String),
    #[error("catalog invariant violated in record `{record}`: {field}: {message}")]
    InvariantViolation {
        record: String,
        field: String,
        message: String,
    },
    #[error("unknown record id `{0}`")]
    UnknownId(String),
    #[error("parameter out of domain for `{0}`: {1}")]
    ParameterOutOfDomain(String, String),
    #[error("sample system is rank deficient: {0} usable samples for {1} unknowns")]
    RankDeficient(usize, usize),
    #[error("no small rational multiple found within tolerance")]
    RationalizationFailed,
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
