use core::fmt;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A query needs membership beyond the prefix that was materialized.
    OutOfBounds { requested: u64, bound: u64 },
    /// A range or prefix would exceed the configured element ceiling.
    ResourceCeiling { requested: u64, ceiling: u64 },
    /// The threshold `N` must be positive.
    ZeroThreshold,
    /// The initial segment must cover exactly `[0, 2N-1]`.
    InitialLength { expected: u64, found: u64 },
    /// The initial segment must contain exactly `N` members.
    InitialWeight { expected: u64, found: u64 },
    /// The requested extension ends before the initial segment does.
    ExtensionTooShort { x: u64, min: u64 },
    /// The operation only applies to one partition variant.
    VariantMismatch,
    /// `S(n)` is only defined when `n` has at least one `(1,0,1)` block.
    NoMarkedBlocks { n: u64 },
    /// A pair argument does not satisfy `y + z = n`, `y < z`.
    InvalidPair { y: u64, z: u64, n: u64 },
    /// `toggle` was applied to a pair outside `T(n)`.
    NotInT { y: u64, z: u64 },
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfBounds { requested, bound } => {
                write!(f, "index {requested} exceeds prefix bound {bound}")
            }
            Error::ResourceCeiling { requested, ceiling } => {
                write!(f, "{requested} elements requested, ceiling is {ceiling}")
            }
            Error::ZeroThreshold => f.write_str("threshold N must be positive"),
            Error::InitialLength { expected, found } => {
                write!(f, "initial segment has {found} bits, expected {expected}")
            }
            Error::InitialWeight { expected, found } => {
                write!(f, "initial segment has {found} members, expected {expected}")
            }
            Error::ExtensionTooShort { x, min } => {
                write!(f, "extension bound {x} is below 2N-1 = {min}")
            }
            Error::VariantMismatch => f.write_str("operation not defined for this variant"),
            Error::NoMarkedBlocks { n } => write!(f, "f({n}) = 0, S({n}) is undefined"),
            Error::InvalidPair { y, z, n } => {
                write!(f, "({y}, {z}) is not a pair y < z with y + z = {n}")
            }
            Error::NotInT { y, z } => write!(f, "({y}, {z}) is not in T(y + z)"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
