use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid group table: {0}")]
    TableInvalid(String),
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element set belongs to a group of order {found}, expected {expected}")]
    ForeignSet { expected: usize, found: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("closure of an empty seed")]
    EmptySeed,
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
    #[error("product set {0} is not a subgroup of the expected order")]
    ProductNotSubgroup(String),
    #[error("Sylow subgroups for primes {p} and {q} do not permute")]
    BasisNotPermutable { p: u64, q: u64 },
    #[error("factor {0} is not cyclic")]
    NotCyclic(usize),
    #[error("factors {0} and {1} do not permute")]
    NotPermutable(usize, usize),
    #[error("product of the factors has {found} elements, group has {order}")]
    ProductNotWhole { found: usize, order: usize },
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("group is not soluble")]
    NotSoluble,
    #[error("no Hall subgroup for primes {0:?}")]
    NoHallSubgroup(Vec<u64>),
    #[error("action is not by automorphisms: {0}")]
    ActionNotAutomorphism(String),
    #[error("module group is not abelian")]
    ModuleNotAbelian,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
