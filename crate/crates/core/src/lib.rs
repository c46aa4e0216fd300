//! Signless Laplacian spectral extremal graph toolkit.
//!
//! Spectral radii with residual certificates, the Perron-vector vertex
//! deletion procedures, exact substructure search, randomized extremal
//! constructions, linear hypergraphs and exhaustive verification suites.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod hypergraph;
pub mod rational;
pub mod reduction;
pub mod rng;
pub mod spectral;
pub mod substructure;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Family, Graph, PartitionedGraph};
