use crate::kernel::KernelError;

/// Everything that can stop a simulation or reject an input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("points {0} and {1} coincide at t = {2}")]
    DuplicatePoint(u32, u32, String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),
    #[error("no such vertex: {0}")]
    NoSuchVertex(u32),
    #[error("cannot flip {vertices:?} at t = {time}")]
    UnflippableEvent { vertices: Vec<u32>, time: String },
    #[error("simultaneous events at t = {time}: {what}")]
    SimultaneousEvents { what: String, time: String },
    #[error("identically zero {kind} certificate on {vertices:?}")]
    ZeroCertificate { kind: &'static str, vertices: Vec<u32> },
    #[error("tangential {kind} event on {vertices:?} at t = {time}")]
    TangentialEvent { kind: &'static str, vertices: Vec<u32>, time: String },
    #[error("invalid trajectory data: {0}")]
    InvalidTrajectory(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for aborts caused by degenerate motion rather than bad input files.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::Kernel(_)
                | Error::DuplicatePoint(..)
                | Error::DegenerateInput(_)
                | Error::DegenerateSimplex(_)
                | Error::UnflippableEvent { .. }
                | Error::SimultaneousEvents { .. }
                | Error::ZeroCertificate { .. }
                | Error::TangentialEvent { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
