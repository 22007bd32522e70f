use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A set or morphism was used with a context (or lattice) it does not belong to.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("not a complete lattice: {0}")]
    NotALattice(String),

    #[error("not a sup-lattice morphism: {0}")]
    NotSupMap(String),

    #[error("images are not mutually distributive: {0}")]
    NotMutuallyDistributive(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no contraction-only reduction of {input} to {target}")]
    Irreducible { input: String, target: String },

    #[error("unbound basic type `{0}`")]
    UnboundType(String),

    #[error("lexicon: {0}")]
    Lexicon(String),

    /// Unknown suite, unknown case, or a bad generator configuration.
    #[error("lawcheck: {0}")]
    Lawcheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
