use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group descriptor {0:?}, expected <LETTER><rank>[~]")]
    MalformedDescriptor(String),
    #[error("unknown Cartan type letter {0:?}")]
    UnknownType(String),
    #[error("unsupported rank {rank} for type {letter}")]
    UnsupportedRank { letter: char, rank: usize },
    #[error("elements or roots belong to different root data")]
    DatumMismatch,
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("operation requires an affine root datum")]
    NotAffine,
    #[error("parabolic subset {0:?} generates an infinite subgroup")]
    InfiniteParabolic(Vec<usize>),
    #[error("parabolic subset {sub:?} is not contained in {sup:?}")]
    NotSubset { sub: Vec<usize>, sup: Vec<usize> },
    #[error("length {length} exceeds the interval cap {cap}")]
    CapExceeded { length: usize, cap: usize },
    #[error("element has a nontrivial length-zero component and no reduced word")]
    ExtendedElement,
    #[error("affine root enumeration exceeded its level bound")]
    EnumerationOverflow,
    #[error("inputs not Q-type")]
    NotQType,
    #[error("malformed word {0:?}")]
    MalformedWord(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
