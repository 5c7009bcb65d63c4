use alloc::string::String;

/// Errors raised by the core computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument is not finite")]
    NonFinite,
    #[error("Bloch-Wigner function is singular at {0}")]
    Singular(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("triangulation has no terms")]
    EmptyTriangulation,
    #[error("term {term}: variable z{index} outside 1..={n}")]
    UnknownVariable { term: usize, index: usize, n: usize },
    #[error("term {term}: ratio is identically 1")]
    DegenerateTerm { term: usize },
    #[error("variable z{0} does not appear in any term")]
    UnusedVariable(usize),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is not essential: {0}")]
    NonEssential(String),
    #[error("root finding did not converge for {0}")]
    NoConvergence(String),
    #[error("no essential solution in the set")]
    NotFound,
    #[error("geometric solution is ambiguous: solutions {0} and {1} tie")]
    Ambiguous(usize, usize),
    #[error("complex solution {0} has no conjugate in the set")]
    Unpaired(usize),
}
