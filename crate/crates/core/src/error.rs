use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage that raised a retryable failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    InitialResolution,
    Lifting,
    Reconstruction,
    Specialization,
    Verification,
    Comparison,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::InitialResolution => "initial resolution",
            Stage::Lifting => "newton lifting",
            Stage::Reconstruction => "rational reconstruction",
            Stage::Specialization => "specialization at t=1",
            Stage::Verification => "post-hoc verification",
            Stage::Comparison => "minimum comparison",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular element: {0}")]
    Singular(String),

    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("linear form is not separating: {0}")]
    Separation(String),

    #[error("newton lifting failed: {0}")]
    Lifting(String),

    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// A probabilistic step failed for the drawn linear form; retrying with a
    /// fresh one is expected to succeed.
    #[error("genericity failure during {stage}: {reason}")]
    Genericity { stage: Stage, reason: String },

    #[error("genericity failure persisted after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: usize, last: String },

    #[error("no candidate set contains a feasible critical point (after {attempts} attempt(s))")]
    NoFeasibleCriticalPoint { attempts: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Whether drawing a new random linear form could cure this failure.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::Reconstruction(_)
                | Error::Separation(_)
                | Error::Lifting(_)
                | Error::DegenerateSpecialization(_)
                | Error::Genericity { .. }
        )
    }

    pub(crate) fn at_stage(self, stage: Stage) -> Error {
        if self.is_retryable() {
            Error::Genericity {
                stage,
                reason: self.to_string(),
            }
        } else {
            self
        }
    }
}
