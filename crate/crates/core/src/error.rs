//! Error types shared across the crate.

use thiserror::Error;

use crate::exponent::Exponent;

/// Errors from truncated-series arithmetic.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("exponent {0} is at or beyond the truncation order {1}")]
    ExponentBeyondTrunc(Exponent, Exponent),
    #[error("duplicate exponent {0} in term list")]
    DuplicateExponent(Exponent),
    #[error("cannot invert a series whose leading coefficient is zero")]
    SingularInversion,
    #[error("scaling exponent {exponent} by {factor} leaves the (1/24)Z lattice")]
    OffLattice { exponent: Exponent, factor: String },
    #[error("coefficient at {0} requested but the series is only known below {1}")]
    CoefficientOutOfRange(Exponent, Exponent),
    #[error("non-integral coefficient {value} at exponent {exponent}")]
    NonIntegralCoefficient { exponent: Exponent, value: String },
}

/// Errors from constructing named series and loading form data.
#[derive(Error, Debug)]
pub enum FormsError {
    #[error(transparent)]
    Series(#[from] QSeriesError),
    #[error("unsupported parity-function index m = {0} (supported: 7, 15, 23, 63)")]
    UnsupportedParityIndex(i64),
    #[error("cusp-form data unavailable: {0}")]
    DataUnavailable(String),
    #[error("cusp-form data malformed: {0}")]
    MalformedData(String),
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Errors from the McKay-Thompson series registry.
#[derive(Error, Debug)]
pub enum McKayError {
    #[error("unknown conjugacy class name {0:?}")]
    UnknownClass(String),
    #[error("series for 23AB requires the level-23 cusp form data, which is not loaded")]
    CuspDataUnavailable,
    #[error(
        "construction produced a non-integral coefficient at q^{0}; formula transcription is wrong"
    )]
    IntegralityViolation(Exponent),
    #[error(transparent)]
    Series(#[from] QSeriesError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// Errors from parity scanning and Sturm certification.
#[derive(Error, Debug)]
pub enum ParityError {
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error(transparent)]
    Series(#[from] QSeriesError),
    #[error("no Sturm recipe registered for class {0}")]
    NoRecipe(String),
    #[error("recipe for class {class} failed validation: {reason}")]
    RecipeRejected { class: String, reason: String },
    #[error("Sturm bound {bound} exceeds the available truncation order; re-expand the series")]
    InsufficientPrecision { bound: i64 },
    #[error("recipe file malformed: {0}")]
    MalformedRecipeFile(String),
}

/// Errors from character-table ingestion and module decomposition.
#[derive(Error, Debug)]
pub enum M24Error {
    #[error("character table data malformed: {0}")]
    MalformedData(String),
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("orthogonality failure between {kind} {i} and {j}: inner product {value}")]
    OrthogonalityFailure {
        kind: &'static str,
        i: usize,
        j: usize,
        value: String,
    },
    #[error("class sizes sum to {got}, expected the group order {expected}")]
    ClassSizeSum { got: String, expected: String },
    #[error("no conjugate partner found for irreducible {0}")]
    PairingFailure(usize),
    #[error("grade {0} is not supported (need n = -1 or n >= 0)")]
    InvalidGrade(i64),
    #[error("non-integral multiplicity {value} for irreducible {index} at grade {grade}")]
    NonIntegralMultiplicity {
        grade: i64,
        index: usize,
        value: String,
    },
    #[error("irrational residue in an inner product; incompatible table entries")]
    IrrationalResidue,
    #[error(transparent)]
    McKay(#[from] McKayError),
}
