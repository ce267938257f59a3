use core::fmt;

/// Errors reported by the selection library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must share an objective dimension do not.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Points need at least two objectives.
    DimensionTooSmall(usize),
    /// A coordinate is NaN or infinite.
    NonFinite {
        point: usize,
        coord: usize,
    },
    EmptyInput,
    EmptyReferenceSet,
    /// The subset size must be at least one.
    InvalidK(usize),
    /// An index that is not part of the container it refers to.
    UnknownIndex(usize),
    /// The requested engine does not support the requested indicator.
    Infeasible {
        engine: &'static str,
        indicator: &'static str,
    },
    InvalidSpec(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DimensionTooSmall(m) => write!(f, "at least 2 objectives required, got {m}"),
            Error::NonFinite { point, coord } => {
                write!(f, "non-finite coordinate {coord} in point {point}")
            }
            Error::EmptyInput => write!(f, "empty point set"),
            Error::EmptyReferenceSet => write!(f, "empty reference set"),
            Error::InvalidK(k) => write!(f, "subset size must be >= 1, got {k}"),
            Error::UnknownIndex(i) => write!(f, "index {i} is not tracked"),
            Error::Infeasible { engine, indicator } => {
                write!(
                    f,
                    "engine `{engine}` does not support indicator `{indicator}`"
                )
            }
            Error::InvalidSpec(why) => write!(f, "invalid front spec: {why}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
