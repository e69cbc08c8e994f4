use thiserror::Error;

/// Errors raised by the algebra engine and the experiment layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a supported prime (must be prime and different from 3)")]
    InvalidPrime(u64),

    #[error("invalid precision {0}: need 1 <= N and p^N < 2^63")]
    InvalidPrecision(u32),

    #[error("unsupported coefficient domain for {op}: {domain}")]
    UnsupportedDomain { op: &'static str, domain: String },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("colon by an element that reduces to zero in the quotient")]
    ZeroDivisor,

    #[error("multiplier reduces to zero in the quotient")]
    ZeroMultiplier,

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("element does not lie in the image of the base ring: {0}")]
    NotInImage(String),

    #[error("candidate endomorphism rejected: {0}")]
    CandidateRejected(String),

    #[error("convention violation: {0}")]
    ConventionViolation(String),

    #[error("oracle returned an inconsistent representation at step {step}")]
    OracleInconsistency { step: u32 },

    #[error("digit lifting obstructed at step {step}, digit {digit}")]
    LiftingObstruction { step: u32, digit: u32 },

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("configuration error in `{field}`: {msg}")]
    Config { field: String, msg: String },

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("reports belong to different experiments: `{0}` vs `{1}`")]
    MismatchedExperiment(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
