//! Derived embeddings of ordinary voltage graph embeddings, and exact
//! checks of the coset structure of their components, fibers, z-regions
//! and z-graphs.
//!
//! The crate is `no_std` and needs only `alloc`. Everything here is pure
//! combinatorics over explicit tables: groups are multiplication tables,
//! surfaces are signed rotation systems.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod error;
pub mod group;
pub mod medial;
pub mod surface;
mod unionfind;
pub mod voltage;
pub mod zregion;

pub use error::{Error, Result};
pub use group::{CosetPartition, Elem, FiniteGroup, GroupSpec, Subgroup};
pub use surface::{CircleSubgraph, Dart, DartGraph, EdgeChain, EmbeddedGraph, FaceChain, Sign};
pub use unionfind::UnionFind;
pub use voltage::{DerivedEmbedding, VoltageEmbedding, WalkSpec};
