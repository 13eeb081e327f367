use core::fmt;

/// Errors reported by construction and analysis operations.
///
/// Variants split into argument errors (bad coordinate, bad table length,
/// malformed parameters) and capacity errors (a guard on arity or instance
/// size was exceeded). The CLI maps the two groups to distinct exit codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Truth-table length does not match `2^arity`.
    TableLength { expected: u64, actual: u64 },
    /// Arity outside the supported range `1..=MAX_ARITY`.
    ArityRange { arity: u32, max: u32 },
    /// Coordinate outside `1..=arity`.
    Coordinate { coord: u32, arity: u32 },
    /// Point index outside `0..2^arity`.
    PointRange { index: u64, size: u64 },
    /// An assignment fixes the same coordinate twice.
    DuplicateCoordinate { coord: u32 },
    /// A restriction must leave at least one coordinate free.
    NoFreeCoordinates,
    /// An operation-specific size guard was exceeded.
    Capacity {
        what: &'static str,
        limit: u64,
        requested: u64,
    },
    /// A ratio with a zero denominator (or an arity too small for the
    /// formula) was requested.
    UndefinedRatio { reason: &'static str },
    /// Tribe count must be a power of two, at least 2.
    NotPowerOfTwo { n: u64 },
    /// Function arity does not equal twice the requested split.
    SplitMismatch { arity: u32, split: u32 },
    /// The function is not monotone/anti-monotone in the required block.
    StructureViolation { coord: u32, expected: &'static str },
    /// Malformed construction parameters.
    InvalidParameter { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TableLength { expected, actual } => {
                write!(
                    f,
                    "truth table length mismatch: expected {expected} bits, got {actual}"
                )
            }
            Error::ArityRange { arity, max } => {
                write!(f, "arity {arity} outside supported range 1..={max}")
            }
            Error::Coordinate { coord, arity } => {
                write!(f, "coordinate {coord} outside 1..={arity}")
            }
            Error::PointRange { index, size } => {
                write!(f, "point index {index} outside 0..{size}")
            }
            Error::DuplicateCoordinate { coord } => {
                write!(f, "coordinate {coord} fixed more than once")
            }
            Error::NoFreeCoordinates => write!(f, "restriction leaves no free coordinate"),
            Error::Capacity {
                what,
                limit,
                requested,
            } => write!(
                f,
                "{what} guard exceeded: limit {limit}, requested {requested}"
            ),
            Error::UndefinedRatio { reason } => write!(f, "undefined ratio: {reason}"),
            Error::NotPowerOfTwo { n } => {
                write!(f, "tribe count {n} is not a power of two >= 2")
            }
            Error::SplitMismatch { arity, split } => {
                write!(f, "arity {arity} does not equal 2*{split}")
            }
            Error::StructureViolation { coord, expected } => {
                write!(f, "coordinate {coord} is not {expected}")
            }
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// True for guard-style errors (instance too large for the requested
    /// exact path), as opposed to malformed-argument errors.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::ArityRange { .. })
    }
}
