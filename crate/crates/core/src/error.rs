use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a Dynkin quiver: {0}")]
    NotDynkin(String),

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("orbit enumeration would exceed the cap of {cap} labels")]
    SearchSpaceTooLarge { cap: usize },

    #[error("expansion window unsound: {0}")]
    WindowUnsound(String),

    #[error("Schur-basis output requested while vertex {0} owns multiple alphabets")]
    MixedVertexSchurBasis(u32),

    #[error("could not construct a directed partition ({0}); supply one explicitly")]
    ConstructionFailed(String),

    #[error("Schur form not available for this result")]
    SchurFormMissing,

    #[error("intermediate term map exceeded the cap of {cap} terms")]
    TermCapExceeded { cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
