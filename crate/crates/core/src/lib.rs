//! Exact decisions about when permutation representations of the symmetric
//! group `S_n` make non-conjugate permutations similar as matrices.
//!
//! * [`perm`]: permutations, cycle types and their powers.
//! * [`field`]: exact linear algebra over GF(p) and ℚ, including invariant
//!   factors as the similarity test.
//! * [`recovery`]: rebuilding a cycle type from fixed-space dimensions of
//!   matrix powers.
//! * [`characters`]: fixed-point characters of tuple and subset actions.
//! * [`uniting`]: the character criterion, almost similar pairs and scans.
//! * [`alpha`]: the two-sided action of `S_n × S_n` on invertible matrices.

pub mod alpha;
pub mod arith;
pub mod characters;
pub mod error;
pub mod field;
pub mod perm;
pub mod recovery;
pub mod uniting;

pub use error::{Error, Result};
pub use field::{FieldMatrix, FieldSpec, InvariantFactorList, Poly, Scalar};
pub use perm::{CycleType, Permutation};
