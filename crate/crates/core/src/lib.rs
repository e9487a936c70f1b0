//! Hypergraph forest-fire generation and pattern measurement.
//!
//! The crate is organised around an immutable [`Hypergraph`] snapshot built
//! from a [`TimestampedHyperedgeSequence`]:
//!
//! * [`ingest`] reads and writes sequences (native and three-file layouts).
//! * [`generator`] grows sequences with the forest-fire model and builds the
//!   size-preserving null model.
//! * [`patterns`] measures degree, size and intersection distributions,
//!   density of interactions, components and effective diameter.
//! * [`spectral`] computes incidence/adjacency singular values.
//! * [`fit`] fits heavy-tailed candidates and compares them by normalized
//!   log-likelihood ratio.
//! * [`decompose`] builds n-level decomposed graphs and their statistics.
//! * [`temporal`] tracks statistics over growing prefixes and fits log-log slopes.

pub mod distribution;
pub mod generator;
pub mod hypergraph;
pub mod ingest;
pub mod patterns;
pub mod spectral;
pub mod union_find;
pub mod fit;
pub mod decompose;
pub mod temporal;

pub use distribution::EmpiricalDistribution;
pub use hypergraph::{Hyperedge, Hypergraph, NodeId, Timestamp, TimestampedHyperedgeSequence};
