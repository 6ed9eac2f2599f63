use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational {0:?} (expected -?digits or -?digits/digits)")]
    MalformedRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed Chern vector {0:?} (expected ch0,c1,ch2H,ch3)")]
    MalformedChernVector(String),

    #[error("degree H^3 must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("curve degree must be positive, got {0}")]
    NonPositiveCurveDegree(i64),
    #[error("NonIntegralGeometry: d/6 + c2h/12 = {value} is not an integer (d = {d}, c2h = {c2h})")]
    NonIntegralGeometry { d: u32, c2h: i64, value: String },
    #[error("NegativeLinearSystem: derived dim|H| = {0} is negative")]
    NegativeLinearSystem(i64),
    #[error("dimh = {given} contradicts Riemann-Roch value {derived}")]
    DimHMismatch { given: i64, derived: i64 },
    #[error("unknown preset {0:?} (expected quintic, ci24 or ci223)")]
    UnknownPreset(String),
    #[error("OddDegree: the even-degree hypothesis needs even H^3, got {0}")]
    OddDegree(u32),
    #[error("BetaOutOfRange: curve degree {beta} is outside 1 <= beta < {d}/2")]
    BetaOutOfRange { beta: i64, d: u32 },
    #[error("MissingBeta: no curve bound supplied for beta = {0}")]
    MissingBeta(i64),
    #[error("duplicate curve bound for beta = {0}")]
    DuplicateBeta(i64),

    #[error("NegativeRank: rank {0} is negative")]
    NegativeRank(i64),
    #[error("ZeroRank: the operation needs non-zero rank")]
    ZeroRank,
    #[error("NoPositiveRoot: ch2H/ch0 = {0} is not positive")]
    NoPositiveRoot(String),
    #[error("tilt parameter t must be positive, got {0}")]
    NonPositiveTilt(String),

    #[error("NonpositiveCh2H: ch2H = {0} must be positive")]
    NonpositiveCh2H(String),
    #[error("quotient rank ch0(F) = {0} must be at least 2")]
    QuotientRankTooSmall(i64),
    #[error("inconsistent trace: {0}")]
    InconsistentTrace(String),

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }
}
