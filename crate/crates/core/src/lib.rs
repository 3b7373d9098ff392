//! Finite semigroups with zero: Green's structure, the radical, minimal
//! idempotents, and the classification and enumeration of maximal nilpotent
//! subsemigroups, with a brute-force oracle for cross-checking.

pub mod bitset;
pub mod cayley;
pub mod classify;
pub mod error;
pub mod exec;
pub mod families;
pub mod green;
pub mod oracle;
pub mod rees;
pub mod semigroup;
pub mod structure;
pub mod verify;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use exec::Exec;
pub use semigroup::{NilpotentSubsemigroup, Quotient, Semigroup};
