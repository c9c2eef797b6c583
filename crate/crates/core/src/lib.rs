//! Generating graphs of alternating and symmetric groups.
//!
//! Two nontrivial elements of `G = Alt_n` or `Sym_n` are adjacent when they
//! generate `G`. This crate computes vertex degrees by exhaustive search and
//! by Möbius inversion over overgroup lattices, classifies odd-degree
//! vertices, decides whether the graph is Eulerian and certifies it.

pub mod chain;
pub mod config;
pub mod error;
pub mod graph;
pub mod group;
pub mod mobius;
pub mod numtheory;
pub mod perm;
pub mod verify;

pub use config::Caps;
pub use error::{Error, Result};
pub use group::{Family, GroupSpec};
pub use perm::{compose, CycleShape, Parity, Permutation};
