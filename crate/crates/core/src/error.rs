use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u64,
    },

    #[error("isomorphism undecided: {0}")]
    Undecided(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NonAbelian,

    #[error("the identity has no finite weight")]
    IdentityWeight,

    #[error("invalid level: {0}")]
    Level(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("malformed table: {0}")]
    Table(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
