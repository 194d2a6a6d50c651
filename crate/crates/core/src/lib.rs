//! Finite posets, their ideal and downset completions, and exhaustive
//! desk-scale checks of the order-theoretic facts relating a poset to its
//! poset of ideals.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure:
//! values are immutable after construction and every enumeration is
//! deterministic (ties broken by ascending bitmask or index).
//!
//! Modules:
//! - [`poset`]: validated finite posets and elementary constructions.
//! - [`completions`]: `Down`, `Id`, `id`, `ch-Id`, `ch-id`, `fdown`, `X-Down`,
//!   iterated `id`, compact elements and the principal embedding.
//! - [`algebra`]: join/meet tables, subsemilattices and semilattice
//!   homomorphisms.
//! - [`morphisms`]: isotone / strictly isotone / embedding / isomorphism
//!   search, canonical forms and the transfinite-chain recursion trace.
//! - [`verification`]: corpus generation and the theorem checkers.
//! - [`ordinal`]: Cantor normal form arithmetic and chain cofinality
//!   descriptors.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod completions;
mod error;
pub mod morphisms;
pub mod ordinal;
pub mod poset;
mod set;
pub mod verification;

pub use error::{Error, Result};
pub use poset::Poset;
pub use set::ElemSet;

/// Largest number of elements a [`Poset`] may carry.
pub const MAX_ELEMENTS: usize = 64;

/// Resource limits shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of sets (or enumerated maps) a family computation may
    /// produce before failing with [`Error::CapacityExceeded`].
    pub family_cap: usize,
    /// Maximum number of backtracking nodes a search may visit before
    /// failing with [`Error::BudgetExceeded`].
    pub budget: u64,
    /// Largest poset on which subset-enumerating operations (compact
    /// elements) are attempted.
    pub subset_enum_max_n: usize,
}

impl Limits {
    pub const DEFAULT_FAMILY_CAP: usize = 1 << 20;
    pub const DEFAULT_BUDGET: u64 = 100_000_000;
    pub const DEFAULT_SUBSET_ENUM_MAX_N: usize = 20;

    pub fn with_budget(budget: u64) -> Self {
        Limits {
            budget,
            ..Limits::default()
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            family_cap: Self::DEFAULT_FAMILY_CAP,
            budget: Self::DEFAULT_BUDGET,
            subset_enum_max_n: Self::DEFAULT_SUBSET_ENUM_MAX_N,
        }
    }
}
