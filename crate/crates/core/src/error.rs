use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A table or tuple has the wrong dimensions for its ring or module.
    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a ring homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),

    #[error("input is not a 3-cocycle ({violations} violated equation instances)")]
    NotCocycle { violations: usize },

    #[error("input is not a structure ({violations} violated equation instances)")]
    NotStructure { violations: usize },

    #[error("input is not a 2-cocycle")]
    NotCocycle2,

    #[error("budget `{budget}` exceeded: {detail}")]
    Budget { budget: &'static str, detail: String },

    /// Operands live over different rings or bimodules.
    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("invalid homomorphism pair: {0}")]
    InvalidPair(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
