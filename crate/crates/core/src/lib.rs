//! Sorting with pop stacks that allow a bypass: the machines, their sortable
//! classes and preimages, the word and lattice path encodings, and the
//! enumerative data that goes with them.
//!
//! Permutations are 1-based ([`Permutation`]). Exhaustive sweeps over `S_n`
//! run on the rayon pool unless the `parallel` feature is disabled; see
//! [`sweep`].

pub mod classes;
pub mod enumeration;
pub mod error;
pub mod machines;
pub mod pattern;
pub mod perm;
pub mod preimage;
pub mod sweep;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use machines::{compose, dfs_sortable, psb, Machine, SortOutcome, Trace};
pub use pattern::{avoids, BarredPattern, Pattern, PatternBasis};
pub use perm::Permutation;
