use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),

    #[error("unsupported vertex subset: {0}")]
    UnsupportedSubset(String),

    #[error("enumeration cap exceeded: board has {vertices} vertices, cap is {cap}")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid real-form spec: {0}")]
    InvalidSpec(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("no closed form available for {0}")]
    NotAvailable(String),

    #[error("subgroup has fundamental group of even order {0}; only odd kernels are supported")]
    EvenFundamentalGroup(u64),

    #[error("outer ambient form {0} is not supported here; use a reduction recipe or a custom embedding")]
    OuterAmbient(String),

    #[error("invalid Kac diagram: {0}")]
    InvalidKac(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 4,
            Error::UnsupportedSubset(_)
            | Error::EvenFundamentalGroup(_)
            | Error::OuterAmbient(_)
            | Error::NotAvailable(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
