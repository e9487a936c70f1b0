use std::fmt;

use hyperff_core::decompose::DecomposeError;
use hyperff_core::fit::FitError;
use hyperff_core::generator::GeneratorError;
use hyperff_core::hypergraph::HypergraphError;
use hyperff_core::ingest::IngestError;
use hyperff_core::patterns::PatternError;
use hyperff_core::spectral::SpectralError;
use hyperff_core::temporal::TemporalError;

/// Failure class; each maps to its own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Io,
    Usage,
    Parse,
    Numeric,
    Infeasible,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Io => 1,
            Category::Usage => 2,
            Category::Parse => 3,
            Category::Numeric => 4,
            Category::Infeasible => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Io => "io",
            Category::Usage => "usage",
            Category::Parse => "parse",
            Category::Numeric => "numeric",
            Category::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    pub fn new(category: Category, message: impl Into<String>) -> Self {
        Self { category, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(Category::Usage, message)
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(Category::Parse, message)
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Self::new(Category::Io, format!("{}: {err}", path.display()))
    }

    /// `error: category=<c> code=<n> message=<one line>`
    pub fn line(&self) -> String {
        let flat: String = self.message.chars().map(|c| if c == '\n' || c == '\r' { ' ' } else { c }).collect();
        format!("error: category={} code={} message={}", self.category.as_str(), self.category.exit_code(), flat.trim())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        let category = match e {
            IngestError::Io { .. } => Category::Io,
            IngestError::Parse { .. } | IngestError::Format { .. } | IngestError::Empty { .. } => Category::Parse,
        };
        Self::new(category, e.to_string())
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        let category = match e {
            GeneratorError::InvalidProbability(_) | GeneratorError::NoNodes => Category::Usage,
            GeneratorError::UnknownSource(_) | GeneratorError::Infeasible { .. } => Category::Infeasible,
        };
        Self::new(category, e.to_string())
    }
}

impl From<HypergraphError> for CliError {
    fn from(e: HypergraphError) -> Self {
        Self::new(Category::Infeasible, e.to_string())
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        let category = match e {
            PatternError::InvalidQuantile(_) => Category::Usage,
            PatternError::UndefinedDoi | PatternError::UndefinedDiameter => Category::Infeasible,
        };
        Self::new(category, e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        let category = match e {
            SpectralError::InvalidRequest { .. } => Category::Usage,
            SpectralError::NotConverged { .. } => Category::Numeric,
            SpectralError::OutOfRange { .. } | SpectralError::DuplicateEntry { .. } => Category::Infeasible,
        };
        Self::new(category, e.to_string())
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        let category = match e {
            FitError::NotConverged { .. } | FitError::Indeterminate => Category::Numeric,
            FitError::InvalidInput(_) | FitError::InvalidParameters { .. } => Category::Usage,
            FitError::DegenerateTail { .. } | FitError::InsufficientSupport { .. } => Category::Infeasible,
        };
        Self::new(category, e.to_string())
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::InvalidLevel { .. } => Self::usage(e.to_string()),
            DecomposeError::Empty => Self::new(Category::Infeasible, e.to_string()),
            DecomposeError::Spectral(s) => s.into(),
            DecomposeError::Pattern(p) => p.into(),
        }
    }
}

impl From<TemporalError> for CliError {
    fn from(e: TemporalError) -> Self {
        match e {
            TemporalError::Pattern(p) => p.into(),
            TemporalError::Hypergraph(h) => h.into(),
            TemporalError::TooFewCheckpoints(_) => Self::usage(e.to_string()),
            TemporalError::TooFewRecords(_) | TemporalError::InvalidSchedule { .. } => {
                Self::new(Category::Infeasible, e.to_string())
            }
            TemporalError::NonPositive(_) | TemporalError::DegenerateFit | TemporalError::LengthMismatch => {
                Self::new(Category::Numeric, e.to_string())
            }
        }
    }
}
