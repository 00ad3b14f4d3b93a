use alloc::string::String;
use core::fmt;

/// Errors raised by the arithmetic and group-theoretic routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter that must be prime is not.
    NotPrime(u64),
    /// Parameters are out of range or inconsistent.
    InvalidParameter(String),
    /// Attempted to invert zero in `F_q` or a non-unit in `O_r`.
    NotInvertible,
    /// Matrix dimensions do not agree.
    DimensionMismatch { expected: usize, found: usize },
    /// The matrix is not an element of the requested group.
    NotMember,
    /// An operation requires a ring of a different length.
    WrongLength { expected: u32, found: u32 },
    /// A size cap was exceeded.
    CapExceeded { size: u128, cap: u128 },
    /// Reduction target length outside `1..=r`.
    LengthOutOfRange { requested: u32, r: u32 },
    /// A computed object disagrees with its closed form or with an independent route.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NotInvertible => f.write_str("element is not invertible"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotMember => f.write_str("matrix is not a member of the group"),
            Error::WrongLength { expected, found } => {
                write!(f, "ring length must be {expected}, found {found}")
            }
            Error::CapExceeded { size, cap } => write!(f, "size {size} exceeds cap {cap}"),
            Error::LengthOutOfRange { requested, r } => {
                write!(f, "reduction length {requested} outside 1..={r}")
            }
            Error::Inconsistent(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
