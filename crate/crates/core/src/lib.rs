//! Partitions counted by perimeter: largest part plus number of parts minus one.
//!
//! The crate bundles an exhaustive oracle over the `2^(n-1)` partitions of
//! perimeter `n`, closed-form counters, rational generating functions with a
//! marking variable, perimeter-preserving maps, and scanners that report on
//! sign patterns of count differences.

pub mod cli;
pub mod counting;
pub mod error;
pub mod experiments;
pub mod genfunc;
pub mod maps;
pub mod oracle;
pub mod partition;
pub mod verify;

/// Exact nonnegative count.
pub type Count = num_bigint::BigUint;

pub use error::{Error, Result};
pub use partition::{AnyPartition, MultiplicityForm, Partition, Profile, Step};
