//! Error types shared across the crate.

use thiserror::Error;

/// Domain failure inside jet arithmetic. Carries the offending operation
/// tag and the value that violated its precondition.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("jet domain error in `{op}`: {reason} (value {value})")]
pub struct JetError {
    pub op: &'static str,
    pub reason: &'static str,
    pub value: f64,
}

impl JetError {
    pub fn new(op: &'static str, reason: &'static str, value: f64) -> Self {
        JetError { op, reason, value }
    }
}

/// Expression parsing failure, with a byte offset into the source text.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{name}` expects {expected} argument(s), got {got} (offset {offset})")]
    WrongArity {
        name: String,
        expected: usize,
        got: usize,
        offset: usize,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::WrongArity { offset, .. } => *offset,
        }
    }
}

/// Invalid curve specification (bad family parameters, empty domain, ...).
#[derive(Debug, Clone, Error, PartialEq)]
#[error("invalid curve spec: {0}")]
pub struct SpecError(pub String);

/// Failures of the Frenet pipeline.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum FrenetError {
    #[error(
        "curvature vanishes at s = {s} (|alpha''| = {norm:.3e} <= {min:.3e}); frame undefined"
    )]
    VanishingCurvature { s: f64, norm: f64, min: f64 },
    #[error("input is not unit-speed at s = {s}: | |alpha'| - 1 | = {deviation:.3e}")]
    NotUnitSpeed { s: f64, deviation: f64 },
    #[error("irregular curve: speed {speed:.3e} underflows 1e-8 at t = {t}")]
    IrregularCurve { t: f64, speed: f64 },
}

/// Failures of the geometric estimators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnalyzeError {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("axis estimate degenerate: two smallest covariance eigenvalues differ by {gap:.3e}")]
    DegenerateAxis { gap: f64 },
    #[error("sphere fit degenerate: normal matrix rank-deficient (pivot ratio {pivot:.3e}); data is coplanar or co-circular")]
    DegenerateSphere { pivot: f64 },
    #[error("sphere fit produced non-positive squared radius {r2:.3e}")]
    BadSphereRadius { r2: f64 },
    #[error("input vector {index} is not unit length (norm {norm})")]
    NotUnit { index: usize, norm: f64 },
}

/// Top-level error for library entry points and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("{context}: {source}")]
    JetIn { context: String, source: JetError },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Frenet(#[from] FrenetError),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error("classification aborted: {failed} of {total} samples failed ({first})")]
    TooManyFailedSamples {
        failed: usize,
        total: usize,
        first: String,
    },
    #[error("invalid integration step: {0}")]
    BadStep(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("curve spec file: {0}")]
    SpecFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Attach the coordinate / sample position to a jet error.
    pub fn jet_at(source: JetError, coord: &str, s: f64) -> Error {
        Error::JetIn {
            context: format!("coordinate {coord} at s = {s}"),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
