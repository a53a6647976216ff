use thiserror::Error;

/// Errors surfaced by the library.
///
/// Resource-cap errors (`WeylCap`, `OrbitCap`, `SubsetRankCap`) are not
/// failures of the mathematics: they report that an enumeration was refused
/// because it would exceed a configured bound.
#[derive(Debug, Error)]
pub enum Error {
    /// The input matrices do not describe a reductive root datum.
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    /// A simple-type constructor was asked for a rank outside its range.
    #[error("no simple type {family}{rank}")]
    InvalidSimpleType { family: char, rank: usize },

    /// Vector or matrix dimensions do not match the ambient lattice.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A node index lies outside the simple-root index set.
    #[error("simple-root index {index} out of range (rank {rank})")]
    NodeOutOfRange { index: usize, rank: usize },

    /// Refused to enumerate a Weyl group (or stabilizer subgroup) above the cap.
    #[error("group order {order} exceeds enumeration cap {cap}")]
    WeylCap { order: u128, cap: u128 },

    /// Refused to grow an orbit beyond the cap.
    #[error("orbit size exceeds cap {cap}")]
    OrbitCap { cap: usize },

    /// The exhaustive subset search is limited to small ranks.
    #[error("brute-force search over subsets is capped at {cap} simple roots, datum has {rank}")]
    SubsetRankCap { rank: usize, cap: usize },

    /// The group in question is not generated by reflections, or its
    /// reflection data fits no finite Coxeter type.
    #[error("Coxeter identification failed: {0}")]
    CoxeterIdentification(String),

    /// Machine-integer arithmetic would overflow (never happens for valid
    /// Weyl elements of the supported ranks; reported rather than wrapped).
    #[error("integer overflow in Weyl-element arithmetic")]
    Overflow,
}
