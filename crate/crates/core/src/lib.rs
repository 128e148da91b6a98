//! Exact divided-difference operator calculus on root data.
//!
//! The crate computes with the operators delta_alpha = (1 - s_alpha)/alpha
//! on the symmetric algebra of a character lattice, over exact coefficient
//! rings: Schubert polynomial families, the algebra generated by the
//! operators with its structure constants, torsion indices, graded Weyl
//! invariants of quotient modules, and Hilbert series of equal-rank
//! homogeneous spaces.

pub mod demazure;
pub mod error;
pub mod homogeneous;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod rootdata;
pub mod schubert;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use ring::{parse_ring, Ring, Scalar};
pub use rootdata::{preset_datum, RootDatum};
pub use weyl::{ReflectionSubgroup, WeylElement, WeylGroup};
