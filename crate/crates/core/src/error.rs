//! Error type shared by every module.

use thiserror::Error;

/// Library-wide error enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// SO(N) requires N ≥ 2.
    #[error("invalid group SO({0}): N must be at least 2")]
    InvalidGroup(i64),

    /// A weight vector violates the dominance chain for its parity.
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),

    /// An operation requiring a homogeneous polynomial received a mixed one.
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    /// An operation requiring a harmonic polynomial received one with ΔP ≠ 0.
    #[error("polynomial is not harmonic")]
    NonHarmonic,

    /// Theta coefficients need a nonconstant polynomial.
    #[error("polynomial is constant (degree 0); cusp weight undefined")]
    ConstantPoly,

    /// A parsed expression referenced x_i with i outside 1..=n.
    #[error("variable x{var} out of range for dimension {n}")]
    VariableOutOfRange { var: usize, n: usize },

    /// Expression syntax error with byte position.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A table or fit was requested over an empty range.
    #[error("empty range: {0}")]
    EmptyRange(&'static str),

    /// Shell average requested on a shell with no lattice points.
    #[error("shell k={0} contains no lattice points")]
    EmptyShell(i64),

    /// Dyadic envelope fitting needs at least four usable windows.
    #[error("only {got} usable dyadic windows (need at least 4)")]
    InsufficientWindows { got: usize },

    /// The configured decimal precision cannot resolve the requested value.
    #[error("precision shortfall: {digits} digits cannot resolve a value of magnitude 10^{magnitude}")]
    PrecisionShortfall { digits: u32, magnitude: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
