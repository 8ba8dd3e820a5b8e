//! Error types shared by every module in the crate.

use std::fmt;
use std::path::PathBuf;

/// One problem found while validating a row, record, or entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIssue {
    /// 1-based data row (CSV, header excluded) or array index (JSON).
    pub row: Option<usize>,
    /// Field the issue is about, when it is field-specific.
    pub field: Option<String>,
    pub message: String,
}

impl RowIssue {
    pub fn new(row: Option<usize>, field: Option<&str>, message: impl Into<String>) -> Self {
        Self {
            row,
            field: field.map(str::to_owned),
            message: message.into(),
        }
    }
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.row, self.field.as_deref()) {
            (Some(row), Some(field)) => write!(f, "row {row}, field `{field}`: {}", self.message),
            (Some(row), None) => write!(f, "row {row}: {}", self.message),
            (None, Some(field)) => write!(f, "field `{field}`: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

/// All issues found in one input, reported together so a bad file is
/// diagnosed in a single pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// What was being validated (a path or a short label).
    pub source: String,
    pub issues: Vec<RowIssue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} validation error(s) in {}",
            self.issues.len(),
            self.source
        )?;
        for issue in &self.issues {
            write!(f, "\n  {issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown hardware: no entry with id `{id}`")]
    UnknownHardware { id: String },

    #[error("GPU hours must be non-negative, got {hours}")]
    NegativeDuration { hours: f64 },

    #[error("FLOPs per training workload must be positive, got {flops}")]
    NonPositiveFlops { flops: f64 },

    #[error("power draw must be positive, got {watts} W")]
    NonPositivePower { watts: f64 },

    #[error("watt-to-FLOPS ratio must be non-negative, got {ratio}")]
    NegativeRatio { ratio: f64 },

    #[error("invalid emission factors: {reason}")]
    InvalidFactors { reason: String },

    #[error("invalid training schedule: {reason}")]
    InvalidSchedule { reason: String },

    #[error("record `{record}` is missing required field `{field}`")]
    MissingField { record: String, field: &'static str },

    #[error("duplicate model name `{name}` (rows {first_row} and {duplicate_row})")]
    DuplicateName {
        name: String,
        first_row: usize,
        duplicate_row: usize,
    },

    #[error("invalid range: {reason}")]
    InvalidRange { reason: String },

    #[error("failed to parse {source_name}: {message}")]
    Parse {
        source_name: String,
        message: String,
    },

    #[error("{0}")]
    Validation(ValidationReport),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(source_name: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            message: message.into(),
        }
    }
}
