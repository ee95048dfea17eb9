use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// What a single [`Violation`] broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ViolationKind {
    /// Diagonal entry is not exactly 1.
    Diagonal,
    /// `m[j][i] * m[i][j]` differs from 1.
    Reciprocity,
    /// Entry outside `[1/9, 9]`.
    OutOfScale,
}

/// A broken comparison-matrix invariant at `(row, col)`.
///
/// Reciprocity violations are reported once per pair, at the below-diagonal cell.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub kind: ViolationKind,
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::Diagonal => "diagonal entry is not 1",
            ViolationKind::Reciprocity => "reciprocity violated",
            ViolationKind::OutOfScale => "entry outside [1/9, 9]",
        };
        write!(
            f,
            "{what} at ({}, {}) (value {})",
            self.row, self.col, self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Shapes do not line up: non-square matrix, dimension mismatch, n < 2.
    Structural(String),
    /// A value lies outside its allowed domain.
    Domain(String),
    /// A comparison matrix broke one or more of its invariants.
    Invalid(Vec<Violation>),
    /// Power iteration did not settle within the iteration budget.
    Convergence {
        iterations: usize,
        residual: f64,
        last_iterate: Vec<f64>,
    },
    /// No random-index entry for this matrix size.
    UnsupportedDimension(usize),
    /// Evaluation time precedes the generation time.
    TemporalOrdering { generated_at: f64, now: f64 },
    /// Configuration is inconsistent with itself.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Invalid(violations) => {
                write!(f, "invalid comparison matrix:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::Convergence {
                iterations,
                residual,
                ..
            } => write!(
                f,
                "power iteration did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::UnsupportedDimension(n) => {
                write!(f, "no random index available for dimension {n} (supported: 2..=10)")
            }
            Error::TemporalOrdering { generated_at, now } => write!(
                f,
                "evaluation time {now} ms precedes generation time {generated_at} ms"
            ),
            Error::Config(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
