//! Exact combinatorics of reductive root data over an elliptic base.
//!
//! The library computes, for a root datum and a topological degree class:
//!
//! * the **slope** of a degree — the unique rational cocharacter obtained by
//!   correcting a lift with Levi coroots until it pairs to zero with every
//!   Levi simple root ([`slope`]);
//! * the **minimal parabolic** admitting the degree with unchanged slope,
//!   together with the canonical degree it carries ([`parabolic`]);
//! * the **relative Weyl group** of the corresponding Levi — the setwise
//!   stabilizer of the Levi simple roots inside the full Weyl group — and its
//!   Coxeter-type identification ([`weyl_rel`]);
//! * whether a **stable** bundle of that degree exists ([`stability`]).
//!
//! All arithmetic is exact: lattices use arbitrary-precision integers,
//! slopes use arbitrary-precision rationals, and Weyl elements use checked
//! machine integers.  There are no tolerances anywhere in the crate.

pub mod catalog;
pub mod lattice;
pub mod parabolic;
pub mod root_datum;
pub mod slope;
pub mod stability;
pub mod weyl;
pub mod weyl_rel;

mod error;

pub use error::Error;

/// Re-export of the arbitrary-precision arithmetic crate used throughout.
pub use num;

pub type Result<T> = std::result::Result<T, Error>;
