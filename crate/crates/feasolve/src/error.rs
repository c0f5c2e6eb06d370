use core::fmt;

/// Errors raised by solver operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A floating-point value became NaN or infinite.
    NonFinite,
    /// Tolerance must be a finite, nonnegative float.
    InvalidTolerance,
    /// A problem dimension is zero.
    Empty { field: &'static str },
    /// A matrix row has the wrong length.
    RaggedRow { row: usize, expected: usize, found: usize },
    /// Right-hand side length does not match the row count.
    RhsLength { expected: usize, found: usize },
    /// Objective length does not match the column count.
    ObjectiveLength { expected: usize, found: usize },
    /// Solution vector length does not match the column count.
    SolutionLength { expected: usize, found: usize },
    /// A dependent row reduced to `0 = beta` with `beta != 0`; the system
    /// `Ax = b` has no solution at all. Carries the 0-based original row.
    Inconsistent { row: usize },
    /// The requested column set does not form a regular basis matrix.
    SingularBasis,
    /// Pivot entry classified as zero.
    DegeneratePivot { row: usize, col: usize },
    /// The entering column is already basic.
    ColumnAlreadyBasic { col: usize },
    /// An index argument is out of range.
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },
    /// A documented precondition was violated by the caller.
    Contract(&'static str),
    /// The iteration cap was exceeded. Unreachable over exact rationals;
    /// under floats it signals tolerance breakdown.
    AntiCycling { iterations: u64 },
    /// Basis enumeration would exceed the configured limit.
    OracleTooLarge { bases: u64, limit: u64 },
    /// An internal invariant failed; this is a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "non-finite value encountered"),
            Error::InvalidTolerance => write!(f, "tolerance must be finite and nonnegative"),
            Error::Empty { field } => write!(f, "{field} must not be empty"),
            Error::RaggedRow { row, expected, found } => {
                write!(f, "A row {row} has length {found}, expected {expected}")
            }
            Error::RhsLength { expected, found } => {
                write!(f, "b has length {found}, expected {expected}")
            }
            Error::ObjectiveLength { expected, found } => {
                write!(f, "c has length {found}, expected {expected}")
            }
            Error::SolutionLength { expected, found } => {
                write!(f, "x has length {found}, expected {expected}")
            }
            Error::Inconsistent { row } => {
                write!(f, "system is inconsistent: row {row} reduces to 0 = beta, beta != 0")
            }
            Error::SingularBasis => write!(f, "column set is not a regular basis"),
            Error::DegeneratePivot { row, col } => {
                write!(f, "pivot entry at row {row}, column {col} is zero")
            }
            Error::ColumnAlreadyBasic { col } => {
                write!(f, "column {col} is already basic")
            }
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range (bound {bound})")
            }
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::AntiCycling { iterations } => {
                write!(f, "iteration cap exceeded after {iterations} pivots")
            }
            Error::OracleTooLarge { bases, limit } => {
                write!(f, "basis enumeration needs {bases} bases, limit is {limit}")
            }
            Error::Internal(msg) => write!(f, "internal invariant violation: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
